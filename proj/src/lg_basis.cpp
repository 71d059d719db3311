#include "oamw/lg_basis.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace oamw {

double laguerre_poly(int p, double a, double x) {
  if (p < 0) throw std::invalid_argument("laguerre_poly: p must be non-negative");
  if (p == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + a - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * curr - (k + a) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

double lg_normalization(LgIndex idx, double waist) {
  if (idx.p < 0) throw std::invalid_argument("lg_normalization: p must be non-negative");
  if (!(waist > 0.0)) throw std::invalid_argument("lg_normalization: waist must be positive");
  const int al = std::abs(idx.l);
  // N^2 = 2^{|l|+2} p! / ((p+|l|)! w^2)
  const double log_n2 = (al + 2) * std::log(2.0) + std::lgamma(idx.p + 1.0) - std::lgamma(idx.p + al + 1.0);
  return std::exp(0.5 * log_n2) / waist;
}

cplx lg_amplitude(LgIndex idx, const BeamGeometry& geom, double r, double phi) {
  if (r < 0.0) throw std::invalid_argument("lg_amplitude: r must be non-negative");
  const int al = std::abs(idx.l);
  const double rb = r / geom.waist;
  const double rb2 = rb * rb;
  const double radial = lg_normalization(idx, geom.waist) / std::sqrt(kTwoPi) * std::pow(rb, al) *
                        laguerre_poly(idx.p, al, 2.0 * rb2) * std::exp(-rb2);
  return std::polar(1.0, idx.l * phi) * radial;
}

}  // namespace oamw
