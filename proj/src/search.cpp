#include "oamw/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "nelder_mead.hpp"
#include "oamw/overlap.hpp"

namespace oamw {
namespace {

double sinc2(double x) {
  const double s = sinc(x);
  return s * s;
}

bool better(double value, std::span<const double> params, double best_value, std::span<const double> best_params) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(params.begin(), params.end(), best_params.begin(), best_params.end());
}

// Maps an unconstrained point into the box; returns the squared distance moved along clamped axes.
double project(const std::vector<ParamRange>& box, std::vector<double>& x) {
  double moved = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& r = box[i];
    if (r.periodic) {
      const double width = r.upper - r.lower;
      x[i] = r.lower + std::fmod(std::fmod(x[i] - r.lower, width) + width, width);
      if (x[i] >= r.upper) x[i] = r.lower;
    } else {
      const double c = std::clamp(x[i], r.lower, r.upper);
      moved += (x[i] - c) * (x[i] - c);
      x[i] = c;
    }
  }
  return moved;
}

std::vector<std::vector<double>> latin_hypercube(const std::vector<ParamRange>& box, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit;
  std::vector<std::vector<double>> points(count, std::vector<double>(box.size()));
  std::vector<int> perm(count);
  for (std::size_t d = 0; d < box.size(); ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int k = 0; k < count; ++k) {
      const double u = (perm[k] + unit(rng)) / count;
      points[k][d] = box[d].lower + u * (box[d].upper - box[d].lower);
    }
  }
  return points;
}

ParamRange ell_range(int i) { return {"ell_" + std::to_string(i), 0.0, 1.0, false}; }
ParamRange alpha_range(int i) { return {"alpha_" + std::to_string(i), 0.0, kTwoPi, true}; }

std::vector<ParamRange> state_box(int n) {
  std::vector<ParamRange> box;
  for (int i = 0; i < n; ++i) box.push_back(ell_range(i));
  for (int i = 1; i < n; ++i) box.push_back(alpha_range(i));
  return box;
}

}  // namespace

Violations violation_functions(double x, double y) {
  const double sx = sinc2(x), sy = sinc2(y), sxy = sinc2(x + y);
  return {-sx + sxy + sy, sx - sxy + sy, sx + sxy - sy};
}

double transcendental_residual(double x) {
  const double s = std::sin(x), s2 = std::sin(2.0 * x);
  return 4.0 * x * s2 - 8.0 * s * s - x * std::sin(4.0 * x) + s2 * s2;
}

double solve_transcendental() {
  double lo = 0.1 * kPi, hi = 0.45 * kPi;
  double flo = transcendental_residual(lo);
  if (flo * transcendental_residual(hi) > 0.0) throw std::runtime_error("solve_transcendental: no sign change in bracket");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = transcendental_residual(mid);
    if (fmid == 0.0) return mid;
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::F1: return "F1";
    case ObjectiveKind::F2: return "F2";
    case ObjectiveKind::F3: return "F3";
    case ObjectiveKind::HN: return "h_n";
    case ObjectiveKind::WD: return "W_D";
    case ObjectiveKind::WC: return "W_c";
  }
  return "?";
}

std::vector<FracModeSpec> states_from_params(std::span<const double> params, int n_states) {
  if (n_states < 1 || params.size() != static_cast<std::size_t>(2 * n_states - 1)) {
    throw std::invalid_argument("states_from_params: expected 2n - 1 parameters");
  }
  std::vector<FracModeSpec> states;
  states.reserve(n_states);
  for (int i = 0; i < n_states; ++i) states.emplace_back(params[i], i == 0 ? 0.0 : params[n_states + i - 1]);
  return states;
}

SearchProblem SearchProblem::violation(ObjectiveKind which) {
  if (which != ObjectiveKind::F1 && which != ObjectiveKind::F2 && which != ObjectiveKind::F3) {
    throw std::invalid_argument("SearchProblem::violation: expects F1, F2 or F3");
  }
  return {which, {{"x", 0.0, kPi, false}, {"y", 0.0, kPi, false}}, 0};
}

SearchProblem SearchProblem::hn(int n) {
  if (n < 3) throw std::invalid_argument("SearchProblem::hn: n must be >= 3");
  return {ObjectiveKind::HN, state_box(n), n};
}

SearchProblem SearchProblem::witness_distance(ObjectiveKind which) {
  if (which != ObjectiveKind::WD && which != ObjectiveKind::WC) {
    throw std::invalid_argument("SearchProblem::witness_distance: expects W_D or W_c");
  }
  return {which, state_box(3), 3};
}

void SearchProblem::validate() const {
  if (box.empty()) throw std::invalid_argument("SearchProblem: empty box");
  for (const auto& r : box) {
    if (!(r.lower < r.upper)) throw std::invalid_argument("SearchProblem: empty range for " + r.name);
  }
  switch (objective) {
    case ObjectiveKind::F1:
    case ObjectiveKind::F2:
    case ObjectiveKind::F3:
      if (box.size() != 2) throw std::invalid_argument("SearchProblem: violation functions take two parameters");
      break;
    case ObjectiveKind::HN:
    case ObjectiveKind::WD:
    case ObjectiveKind::WC:
      if ((objective == ObjectiveKind::HN ? n_states < 3 : n_states != 3) ||
          box.size() != static_cast<std::size_t>(2 * n_states - 1)) {
        throw std::invalid_argument("SearchProblem: n_states does not match the objective arity");
      }
      break;
  }
}

double SearchProblem::evaluate(std::span<const double> params) const {
  if (params.size() != box.size()) throw std::invalid_argument("SearchProblem::evaluate: wrong parameter count");
  switch (objective) {
    case ObjectiveKind::F1: return violation_functions(params[0], params[1]).f1;
    case ObjectiveKind::F2: return violation_functions(params[0], params[1]).f2;
    case ObjectiveKind::F3: return violation_functions(params[0], params[1]).f3;
    case ObjectiveKind::HN: {
      const auto states = states_from_params(params, n_states);
      return h_n_best_hub(OverlapMatrix::from_states(states));
    }
    case ObjectiveKind::WD:
    case ObjectiveKind::WC: {
      const auto s = states_from_params(params, 3);
      const auto t = triple_from_states(s[0], s[1], s[2]);
      return objective == ObjectiveKind::WD ? witness_distance_qubit(t) : witness_distance_classical(t);
    }
  }
  return 0.0;
}

long SearchProblem::default_budget() const { return box.size() <= 2 ? 20000 : 200000; }

SearchResult maximize(const SearchProblem& problem, std::uint64_t seed, long budget, SearchOptions options) {
  problem.validate();
  if (budget < 1000) throw std::invalid_argument("maximize: budget must be >= 1000");
  if (options.starts < 32) throw std::invalid_argument("maximize: at least 32 starts");
  const auto& box = problem.box;
  const std::size_t dim = box.size();

  // Negated objective with a quadratic penalty outside the non-periodic ranges.
  const detail::Objective penalized = [&](const std::vector<double>& raw) {
    std::vector<double> x = raw;
    const double moved = project(box, x);
    return -problem.evaluate(x) + 1e3 * moved;
  };

  std::vector<double> step(dim);
  for (std::size_t d = 0; d < dim; ++d) step[d] = 0.1 * (box[d].upper - box[d].lower);

  const long polish_budget = budget / 5;
  const long per_start = std::max<long>(50, (budget - polish_budget) / options.starts);
  const auto starts = latin_hypercube(box, options.starts, seed);

  std::vector<detail::LocalMinimum> locals(options.starts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < options.starts; k = next++) {
      locals[k] = detail::nelder_mead(penalized, starts[k], step, per_start, 1e-12);
      project(box, locals[k].x);
    }
  };
  const int jobs = std::clamp(options.jobs, 1, options.starts);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  for (const auto& local : locals) {
    result.evaluations += local.evaluations;
    const double value = problem.evaluate(local.x);
    ++result.evaluations;
    if (options.keep_trace) result.trace.push_back({local.x, value});
    if (result.best_params.empty() || better(value, local.x, result.best_value, result.best_params)) {
      result.best_value = value;
      result.best_params = local.x;
    }
  }

  // Restarting the simplex around the incumbent escapes premature collapse.
  long remaining = polish_budget;
  double scale = 0.05;
  while (remaining > 10 * static_cast<long>(dim)) {
    std::vector<double> polish_step(dim);
    for (std::size_t d = 0; d < dim; ++d) polish_step[d] = scale * (box[d].upper - box[d].lower);
    auto local = detail::nelder_mead(penalized, result.best_params, polish_step, remaining, 1e-13);
    remaining -= local.evaluations;
    result.evaluations += local.evaluations;
    project(box, local.x);
    const double value = problem.evaluate(local.x);
    ++result.evaluations;
    if (better(value, local.x, result.best_value, result.best_params)) {
      result.best_value = value;
      result.best_params = local.x;
    }
    scale *= 0.3;
    if (scale < 1e-8) break;
  }
  return result;
}

void to_json(nlohmann::json& j, const SearchResult& r) {
  j = nlohmann::json{{"best_params", r.best_params}, {"best_value", r.best_value}, {"evaluations", r.evaluations}};
  if (!r.trace.empty()) {
    auto& trace = j["trace"] = nlohmann::json::array();
    for (const auto& p : r.trace) trace.push_back({{"params", p.params}, {"value", p.value}});
  }
}

std::array<CoeffState, 3> scenario_states(double theta_or_eps, ScenarioFamily family) {
  if (!std::isfinite(theta_or_eps)) throw std::invalid_argument("scenario_states: parameter must be finite");
  if (family == ScenarioFamily::Coherence) {
    const double theta = theta_or_eps;
    if (theta < 0.0 || theta > 0.5 * kPi + 1e-12) throw std::invalid_argument("scenario_states: theta outside [0, pi/2]");
    const double c = std::cos(theta), s = std::sin(theta);
    return {CoeffState::normalized({{{1, 0}, c}, {{-1, 0}, s}}), CoeffState::normalized({{{1, 0}, 1.0}}),
            CoeffState::normalized({{{1, 0}, c}, {{-1, 0}, -s}})};
  }
  const double eps = theta_or_eps;
  if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("scenario_states: epsilon outside [0, 1]");
  const double a = std::sqrt((1.0 - eps) / 2.0);
  return {CoeffState::normalized({{{2, 0}, 1.0}}),
          CoeffState::normalized({{{2, 0}, a}, {{-2, 0}, a}, {{0, 1}, std::sqrt(eps)}}),
          CoeffState::normalized({{{-2, 0}, 1.0}})};
}

OverlapTriple scenario_integer_families(double theta_or_eps, ScenarioFamily family) {
  const auto s = scenario_states(theta_or_eps, family);
  auto r = [](const CoeffState& x, const CoeffState& y) { return std::clamp(std::norm(coeff_overlap(x, y)), 0.0, 1.0); };
  return {r(s[0], s[1]), r(s[1], s[2]), r(s[0], s[2])};
}

}  // namespace oamw
