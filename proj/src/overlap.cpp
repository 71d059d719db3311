#include "oamw/overlap.hpp"

#include <cmath>
#include <stdexcept>

namespace oamw {
namespace {

void require_same_carrier(const FracModeSpec& a, const FracModeSpec& b) {
  if (a.carrier != b.carrier) {
    throw std::invalid_argument("overlap: states ride on different carriers");
  }
}

// int_s^e exp(i d phi) dphi, finite for every d.
cplx segment_integral(double d, double s, double e) {
  const double len = e - s;
  return len * sinc(0.5 * d * len) * std::polar(1.0, 0.5 * d * (s + e));
}

// <b|a> assuming a.alpha >= b.alpha.
cplx ordered_overlap(const FracModeSpec& a, const FracModeSpec& b) {
  const double d = a.ell - b.ell;
  const cplx sum = std::polar(1.0, kTwoPi * d) * segment_integral(d, 0.0, b.alpha) +
                   std::polar(1.0, kTwoPi * a.ell) * segment_integral(d, b.alpha, a.alpha) +
                   segment_integral(d, a.alpha, kTwoPi);
  return std::polar(1.0 / kTwoPi, -(a.ell * a.alpha - b.ell * b.alpha)) * sum;
}

}  // namespace

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double canonical_beta(double alpha_a, double alpha_b) { return canonical_angle(alpha_a - alpha_b); }

OverlapValue complex_overlap(const FracModeSpec& a, const FracModeSpec& b) {
  require_same_carrier(a, b);
  const cplx v = a.alpha >= b.alpha ? ordered_overlap(a, b) : std::conj(ordered_overlap(b, a));
  return {v, std::norm(v), canonical_beta(a.alpha, b.alpha)};
}

double overlap_sq(const FracModeSpec& a, const FracModeSpec& b) {
  require_same_carrier(a, b);
  const double beta = canonical_beta(a.alpha, b.alpha);
  const double d = a.ell - b.ell;
  const double base = sinc(d * kPi);
  return base * base - beta * (kTwoPi - beta) / (kPi * kPi) * std::sin(a.ell * kPi) * std::sin(b.ell * kPi) *
                           sinc(0.5 * d * beta) * sinc(d * (kPi - 0.5 * beta));
}

double overlap_sq_beta0(double ell_i, double ell_j) {
  const double s = sinc((ell_i - ell_j) * kPi);
  return s * s;
}

double overlap_sq_equal_ell(double ell, double beta) {
  if (beta < 0.0 || beta > kTwoPi) throw std::invalid_argument("overlap_sq_equal_ell: beta outside [0, 2 pi]");
  const double s = std::sin(ell * kPi);
  return 1.0 - beta * (kTwoPi - beta) / (kPi * kPi) * s * s;
}

}  // namespace oamw
