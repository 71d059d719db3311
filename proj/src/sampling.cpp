#include "oamw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oamw {
namespace {

Eigen::Vector3d random_ball_point(Rng& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
  v.normalize();
  return v * std::cbrt(unit(rng));
}

Eigen::VectorXd random_distribution(Rng& rng, int outcomes) {
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd p(outcomes);
  for (int i = 0; i < outcomes; ++i) p[i] = expo(rng);
  return p / p.sum();
}

double clamp01(double r) { return std::clamp(r, 0.0, 1.0); }

}  // namespace

Eigen::VectorXcd random_pure_state(Rng& rng, int dim) {
  if (dim < 1) throw std::invalid_argument("random_pure_state: dim must be >= 1");
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  return v.normalized();
}

OverlapTriple random_pure_triple(Rng& rng, int dim) {
  const auto a = random_pure_state(rng, dim);
  const auto b = random_pure_state(rng, dim);
  const auto c = random_pure_state(rng, dim);
  return {clamp01(std::norm(a.dot(b))), clamp01(std::norm(b.dot(c))), clamp01(std::norm(a.dot(c)))};
}

OverlapTriple random_qubit_triple(Rng& rng) { return random_pure_triple(rng, 2); }

OverlapTriple random_diagonal_triple(Rng& rng, int outcomes) {
  if (outcomes < 1) throw std::invalid_argument("random_diagonal_triple: outcomes must be >= 1");
  const auto p = random_distribution(rng, outcomes);
  const auto q = random_distribution(rng, outcomes);
  const auto s = random_distribution(rng, outcomes);
  return {clamp01(p.dot(q)), clamp01(q.dot(s)), clamp01(p.dot(s))};
}

OverlapTriple random_mixed_qubit_triple(Rng& rng) {
  const auto a = random_ball_point(rng);
  const auto b = random_ball_point(rng);
  const auto c = random_ball_point(rng);
  // tr(rho sigma) = (1 + r.s) / 2 for rho = (I + r.sigma) / 2
  return {clamp01(0.5 * (1.0 + a.dot(b))), clamp01(0.5 * (1.0 + b.dot(c))), clamp01(0.5 * (1.0 + a.dot(c)))};
}

ContainmentCount mixed_qubit_exit_check(std::uint64_t seed, long samples) {
  Rng rng(seed);
  ContainmentCount count;
  for (long i = 0; i < samples; ++i) {
    ++count.samples;
    if (!in_qubit(random_mixed_qubit_triple(rng))) ++count.outside;
  }
  return count;
}

}  // namespace oamw
