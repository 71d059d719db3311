#include "oamw/frac_modes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oamw/overlap.hpp"

namespace oamw {

double canonical_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

int FracModeSpec::integer_part() const { return static_cast<int>(std::floor(ell)); }

double FracModeSpec::fractional_part() const { return ell - std::floor(ell); }

cplx step_phase(const FracModeSpec& spec, double phi) {
  phi = canonical_angle(phi);
  double phase = spec.ell * (phi - spec.alpha);
  if (phi < spec.alpha) phase += kTwoPi * spec.ell;
  return std::polar(1.0, phase);
}

CoeffState CoeffState::normalized(Terms terms) {
  if (terms.empty()) throw std::invalid_argument("CoeffState: at least one term required");
  double norm2 = 0.0;
  for (const auto& [idx, amp] : terms) {
    if (idx.p < 0) throw std::invalid_argument("CoeffState: negative radial index");
    norm2 += std::norm(amp);
  }
  if (!(norm2 > 0.0)) throw std::invalid_argument("CoeffState: zero norm");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& [idx, amp] : terms) amp *= scale;
  return CoeffState(std::move(terms), norm2);
}

cplx CoeffState::amplitude(LgIndex idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? cplx{} : it->second;
}

cplx coeff_overlap(const CoeffState& a, const CoeffState& b) {
  cplx acc{};
  const auto& small = a.size() <= b.size() ? a : b;
  for (const auto& [idx, amp] : small.terms()) {
    acc += std::conj(a.amplitude(idx)) * b.amplitude(idx);
  }
  return acc;
}

CoeffState expand_in_lg(const FracModeSpec& spec, int n_modes) {
  if (spec.carrier.p != 0) throw std::invalid_argument("expand_in_lg: only p = 0 carriers are supported");
  if (n_modes < 1) throw std::invalid_argument("expand_in_lg: n_modes must be >= 1");

  const int lc = spec.carrier.l;
  // e^{i lc phi} f_{ell,alpha} = e^{i lc alpha} f_{ell + lc, alpha}
  const FracModeSpec shifted(spec.ell + lc, spec.alpha);
  const cplx carrier_phase = std::polar(1.0, lc * spec.alpha);

  if (shifted.is_integer()) {
    const int k = static_cast<int>(shifted.ell);
    const cplx c = carrier_phase * complex_overlap(shifted, FracModeSpec(k, 0.0)).value;
    return CoeffState::normalized({{LgIndex{k, 0}, c}});
  }

  const int center = static_cast<int>(std::lround(shifted.ell));
  std::vector<int> candidates;
  for (int k = center - n_modes; k <= center + n_modes; ++k) candidates.push_back(k);
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    const double da = std::abs(shifted.ell - a);
    const double db = std::abs(shifted.ell - b);
    if (da != db) return da < db;
    return a < b;
  });
  candidates.resize(static_cast<std::size_t>(n_modes));

  CoeffState::Terms terms;
  for (int k : candidates) {
    terms[LgIndex{k, 0}] = carrier_phase * complex_overlap(shifted, FracModeSpec(k, 0.0)).value;
  }
  return CoeffState::normalized(std::move(terms));
}

}  // namespace oamw
