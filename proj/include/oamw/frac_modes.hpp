#pragma once

#include <map>

#include "oamw/lg_basis.hpp"

namespace oamw {

/// Representative of an angle in [0, 2 pi).
double canonical_angle(double angle);

/// A fractional OAM state S(ell, alpha)|carrier>. alpha is stored canonicalized to [0, 2 pi).
struct FracModeSpec {
  double ell = 0.0;
  double alpha = 0.0;
  LgIndex carrier{};

  FracModeSpec() = default;
  FracModeSpec(double ell_, double alpha_, LgIndex carrier_ = {})
      : ell(ell_), alpha(canonical_angle(alpha_)), carrier(carrier_) {}

  /// ell = integer_part() + fractional_part(), fractional part in [0, 1).
  int integer_part() const;
  double fractional_part() const;
  bool is_integer() const { return fractional_part() == 0.0; }
};

/// f_{ell,alpha}(phi): e^{i ell (phi - alpha)}, times e^{i 2 pi ell} on [0, alpha).
/// phi is reduced to [0, 2 pi) first.
cplx step_phase(const FracModeSpec& spec, double phi);

/// Finite complex expansion over integer LG labels.
class CoeffState {
 public:
  using Terms = std::map<LgIndex, cplx>;

  /// Normalizes `terms` to unit norm; the squared norm before normalization is kept as
  /// captured_norm(). Throws std::invalid_argument for an empty or all-zero expansion.
  static CoeffState normalized(Terms terms);

  const Terms& terms() const { return terms_; }
  double captured_norm() const { return captured_norm_; }
  cplx amplitude(LgIndex idx) const;
  std::size_t size() const { return terms_.size(); }

 private:
  CoeffState(Terms terms, double captured) : terms_(std::move(terms)), captured_norm_(captured) {}

  Terms terms_;
  double captured_norm_ = 1.0;
};

/// <a|b> = sum over shared labels of conj(a) b.
cplx coeff_overlap(const CoeffState& a, const CoeffState& b);

/// Truncated LG expansion of S(ell, alpha)|l_c, 0>. Term (l_c + k, 0) carries the k-th azimuthal
/// harmonic of e^{i l_c phi} f_{ell,alpha}(phi), so |c| = |sin(ell pi)| / (pi |ell + l_c - (l_c + k)|).
/// Keeps the n_modes harmonics nearest to ell + l_c (ties resolved toward the lower index) and
/// renormalizes. Integer charges give a single term.
/// Throws std::invalid_argument for p != 0 carriers or n_modes < 1.
CoeffState expand_in_lg(const FracModeSpec& spec, int n_modes);

}  // namespace oamw
