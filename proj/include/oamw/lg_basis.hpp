#pragma once

#include <complex>
#include <compare>

namespace oamw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Laguerre-Gaussian mode labels: azimuthal index l (any sign) and radial index p >= 0.
struct LgIndex {
  int l = 0;
  int p = 0;

  auto operator<=>(const LgIndex&) const = default;
};

struct BeamGeometry {
  double waist = 1.0;
};

/// Generalized Laguerre polynomial L_p^a(x) from the upward three-term recurrence.
double laguerre_poly(int p, double a, double x);

/// Constant N_lp such that u_lp has unit L2 norm over the plane.
double lg_normalization(LgIndex idx, double waist);

/// u_lp(r, phi) = N_lp / sqrt(2 pi) * rb^|l| L_p^|l|(2 rb^2) exp(-rb^2) exp(i l phi), rb = r / w.
/// Throws std::invalid_argument for p < 0, waist <= 0 or r < 0.
cplx lg_amplitude(LgIndex idx, const BeamGeometry& geom, double r, double phi);

}  // namespace oamw
