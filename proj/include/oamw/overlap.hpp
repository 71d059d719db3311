#pragma once

#include "oamw/frac_modes.hpp"

namespace oamw {

/// sin(x) / x with sinc(0) = 1.
double sinc(double x);

/// Orientation difference alpha_a - alpha_b reduced to [0, 2 pi).
double canonical_beta(double alpha_a, double alpha_b);

struct OverlapValue {
  cplx value;                // <b|a>
  double squared_magnitude;  // |value|^2
  double beta;               // a.alpha - b.alpha in [0, 2 pi)
};

/// <b|a> = (1/2pi) int_0^{2pi} conj(f_b) f_a dphi in closed form. Both states must ride on the
/// same carrier; throws std::invalid_argument otherwise.
OverlapValue complex_overlap(const FracModeSpec& a, const FracModeSpec& b);

/// |<b|a>|^2 in cardinal-sine form:
///   sinc^2(d pi) - beta (2 pi - beta) / pi^2 sin(ell pi) sin(ell' pi) sinc(d beta / 2) sinc(d (pi - beta / 2)),
/// with d = ell - ell'. Same carrier requirement as complex_overlap.
double overlap_sq(const FracModeSpec& a, const FracModeSpec& b);

/// Common orientation: sinc^2((ell_i - ell_j) pi).
double overlap_sq_beta0(double ell_i, double ell_j);

/// Common charge: 1 - beta (2 pi - beta) / pi^2 sin^2(ell pi), beta in [0, 2 pi].
double overlap_sq_equal_ell(double ell, double beta);

}  // namespace oamw
