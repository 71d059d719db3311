#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include "nelder_mead.hpp"
#include "oamw/overlap.hpp"
#include "oamw/search.hpp"

namespace oamw {
namespace {

constexpr double kResidualTol = 1e-6;

OverlapTriple triple_of(const std::vector<double>& p) {
  return triple_from_states(FracModeSpec(p[0], 0.0), FracModeSpec(p[1], p[3]), FracModeSpec(p[2], p[4]));
}

std::vector<double> full_params(BoundaryFamily family, const std::vector<double>& x) {
  if (family == BoundaryFamily::BetaSumPi) return {x[0], x[1], x[2], x[3], kPi - x[3]};
  return x;
}

std::optional<BoundarySample> make_sample(const std::vector<double>& params, double target) {
  const auto t = triple_of(params);
  if (std::max(std::abs(t.r_ab - target), std::abs(t.r_bc - target)) > kResidualTol) return std::nullopt;
  std::vector<double> p = params;
  p[3] = canonical_angle(p[3]);
  p[4] = canonical_angle(p[4]);
  return BoundarySample{t.r_ab, t.r_ac, p};
}

void keep_lower(std::optional<BoundarySample>& best, std::optional<BoundarySample> candidate) {
  if (candidate && (!best || candidate->r_ac < best->r_ac)) best = std::move(candidate);
}

// ell common, alpha_B = beta, alpha_C = 2 beta. For fixed ell the r_ab target fixes beta in
// [0, pi], leaving a 1-D minimization over ell.
std::optional<BoundarySample> symmetric_bin(double target) {
  auto params_for = [&](double ell) -> std::optional<std::vector<double>> {
    const double s2 = std::pow(std::sin(ell * kPi), 2);
    if (target >= 1.0) return std::vector<double>{ell, ell, ell, 0.0, 0.0};
    if (s2 <= 0.0) return std::nullopt;
    const double q = 1.0 - (1.0 - target) / s2;
    if (q < 0.0) return std::nullopt;
    const double beta = kPi * (1.0 - std::sqrt(q));
    return std::vector<double>{ell, ell, ell, beta, 2.0 * beta};
  };
  auto r_ac_at = [&](double ell) {
    const auto p = params_for(ell);
    return p ? triple_of(*p).r_ac : std::numeric_limits<double>::infinity();
  };

  const double ell_min = target >= 1.0 ? 0.0 : std::asin(std::sqrt(1.0 - target)) / kPi;
  const double lo = ell_min, hi = 1.0 - ell_min;
  const int grid = 2000;
  double best_ell = 0.5, best = r_ac_at(0.5);
  for (int i = 0; i <= grid; ++i) {
    const double ell = lo + (hi - lo) * i / grid;
    if (const double v = r_ac_at(ell); v < best) {
      best = v;
      best_ell = ell;
    }
  }
  // Golden-section refinement within one grid cell either side.
  const double cell = (hi - lo) / grid;
  double a = std::max(lo, best_ell - cell), b = std::min(hi, best_ell + cell);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (r_ac_at(c) < r_ac_at(d)) b = d; else a = c;
  }
  if (const double mid = 0.5 * (a + b); r_ac_at(mid) < best) best_ell = mid;
  const auto p = params_for(best_ell);
  return p ? make_sample(*p, target) : std::nullopt;
}

std::optional<BoundarySample> penalty_bin(BoundaryFamily family, double target, std::uint64_t seed,
                                          const std::vector<std::vector<double>>& extra_starts) {
  const int dim = family == BoundaryFamily::BetaSumPi ? 4 : 5;
  const int random_starts = family == BoundaryFamily::BetaSumPi ? 12 : 20;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit;
  std::vector<std::vector<double>> starts = extra_starts;
  for (int k = 0; k < random_starts; ++k) {
    std::vector<double> x(dim);
    for (int d = 0; d < dim; ++d) x[d] = d < 3 ? unit(rng) : kTwoPi * unit(rng);
    starts.push_back(std::move(x));
  }

  std::optional<BoundarySample> best;
  for (auto x : starts) {
    for (double mu : {1e2, 1e4, 1e6, 1e8}) {
      const detail::Objective f = [&](const std::vector<double>& raw) {
        std::vector<double> y = raw;
        double outside = 0.0;
        for (int d = 0; d < 3; ++d) {
          const double c = std::clamp(y[d], 0.0, 1.0);
          outside += (y[d] - c) * (y[d] - c);
          y[d] = c;
        }
        const auto t = triple_of(full_params(family, y));
        const double ea = t.r_ab - target, eb = t.r_bc - target;
        return t.r_ac + mu * (ea * ea + eb * eb) + 1e3 * outside;
      };
      const double scale = mu < 1e3 ? 0.1 : 0.01;
      std::vector<double> step(dim);
      for (int d = 0; d < dim; ++d) step[d] = d < 3 ? scale : scale * kPi;
      x = detail::nelder_mead(f, x, step, 1500, 1e-12).x;
      for (int d = 0; d < 3; ++d) x[d] = std::clamp(x[d], 0.0, 1.0);
    }
    keep_lower(best, make_sample(full_params(family, x), target));
  }
  return best;
}

std::vector<double> to_family_params(BoundaryFamily family, const std::vector<double>& full) {
  if (family == BoundaryFamily::BetaSumPi) return {full[0], full[1], full[2], full[3]};
  return full;
}

}  // namespace

std::string_view to_string(BoundaryFamily f) {
  switch (f) {
    case BoundaryFamily::AllFree: return "all-free";
    case BoundaryFamily::SymmetricEll: return "symmetric-ell";
    case BoundaryFamily::BetaSumPi: return "beta-sum-pi";
  }
  return "?";
}

BoundaryCurve trace_boundary(BoundaryFamily family, int resolution, BoundaryOptions options) {
  if (resolution < 64) throw std::invalid_argument("trace_boundary: resolution must be >= 64");

  std::vector<std::optional<BoundarySample>> seeds_sym, seeds_beta;
  if (family == BoundaryFamily::AllFree) {
    const BoundaryOptions sub{options.seed, options.jobs};
    for (auto [sub_family, out] : {std::pair{BoundaryFamily::SymmetricEll, &seeds_sym},
                                   std::pair{BoundaryFamily::BetaSumPi, &seeds_beta}}) {
      out->assign(resolution, std::nullopt);
      for (auto& s : trace_boundary(sub_family, resolution, sub).samples) {
        const int bin = static_cast<int>(std::lround(s.r_ab * (resolution - 1)));
        if (bin >= 0 && bin < resolution) (*out)[bin] = std::move(s);
      }
    }
  }

  std::vector<std::optional<BoundarySample>> bins(resolution);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < resolution; i = next++) {
      const double target = static_cast<double>(i) / (resolution - 1);
      const std::uint64_t bin_seed = options.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(i);
      if (family == BoundaryFamily::SymmetricEll) {
        bins[i] = symmetric_bin(target);
        continue;
      }
      std::vector<std::vector<double>> extra;
      if (family == BoundaryFamily::AllFree) {
        for (const auto* s : {&seeds_sym[i], &seeds_beta[i]}) {
          if (*s) extra.push_back(to_family_params(family, (*s)->params));
        }
      }
      auto best = penalty_bin(family, target, bin_seed, extra);
      if (family == BoundaryFamily::AllFree) {
        keep_lower(best, seeds_sym[i]);
        keep_lower(best, seeds_beta[i]);
      }
      bins[i] = std::move(best);
    }
  };
  const int jobs = std::clamp(options.jobs, 1, resolution);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BoundaryCurve curve{family, {}};
  for (auto& b : bins) {
    if (b) curve.samples.push_back(std::move(*b));
  }
  std::stable_sort(curve.samples.begin(), curve.samples.end(),
                   [](const BoundarySample& a, const BoundarySample& b) { return a.r_ab < b.r_ab; });
  return curve;
}

void to_json(nlohmann::json& j, const BoundaryCurve& c) {
  j = nlohmann::json{{"family", to_string(c.family)}, {"samples", nlohmann::json::array()}};
  for (const auto& s : c.samples) j["samples"].push_back({{"r_ab", s.r_ab}, {"r_ac", s.r_ac}, {"params", s.params}});
}

}  // namespace oamw
