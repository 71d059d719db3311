#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oamw/frac_modes.hpp"
#include "oamw/witnesses.hpp"

namespace oamw {

struct Violations {
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

/// F1 = -s(x) + s(x+y) + s(y), F2 = s(x) - s(x+y) + s(y), F3 = s(x) + s(x+y) - s(y), s = sinc^2.
Violations violation_functions(double x, double y);

/// 4x sin 2x - 8 sin^2 x - x sin 4x + sin^2 2x.
double transcendental_residual(double x);

/// Root of transcendental_residual in [0.1 pi, 0.45 pi] by bisection to 1e-10.
/// Throws std::runtime_error if the bracket holds no sign change.
double solve_transcendental();

enum class ObjectiveKind { F1, F2, F3, HN, WD, WC };

std::string_view to_string(ObjectiveKind k);

struct ParamRange {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  bool periodic = false;  // wraps into [lower, upper)
};

/// State parameters are laid out as ell_0..ell_{n-1} followed by alpha_1..alpha_{n-1}; alpha_0 = 0.
std::vector<FracModeSpec> states_from_params(std::span<const double> params, int n_states);

struct SearchProblem {
  ObjectiveKind objective = ObjectiveKind::F2;
  std::vector<ParamRange> box;
  int n_states = 0;

  /// F1, F2 or F3 over (x, y) in [0, pi]^2.
  static SearchProblem violation(ObjectiveKind which);
  /// h_n (best hub) over n fractional states with ell in [0, 1].
  static SearchProblem hn(int n);
  /// W_D or W_c of three fractional states with ell in [0, 1].
  static SearchProblem witness_distance(ObjectiveKind which);

  /// Throws std::invalid_argument for an empty or inverted box or an arity mismatch.
  void validate() const;
  double evaluate(std::span<const double> params) const;
  /// 2e4 evaluations for two parameters, 2e5 otherwise.
  long default_budget() const;
};

struct TracePoint {
  std::vector<double> params;
  double value = 0.0;
};

struct SearchResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  long evaluations = 0;
  std::vector<TracePoint> trace;  // best point of every start, in start order
};

struct SearchOptions {
  int starts = 32;
  int jobs = 1;
  bool keep_trace = false;
};

/// Multi-start Nelder-Mead from Latin-hypercube starts drawn from `seed`, followed by a polish of the
/// incumbent. Deterministic in (seed, budget, starts) regardless of jobs.
/// Throws std::invalid_argument for budget < 1000 or starts < 32.
SearchResult maximize(const SearchProblem& problem, std::uint64_t seed, long budget, SearchOptions options = {});

void to_json(nlohmann::json& j, const SearchResult& r);

enum class BoundaryFamily { AllFree, SymmetricEll, BetaSumPi };

std::string_view to_string(BoundaryFamily f);

struct BoundarySample {
  double r_ab = 0.0;  // equals r_bc to the constraint tolerance
  double r_ac = 0.0;
  std::vector<double> params;  // ell_A, ell_B, ell_C, alpha_B, alpha_C
};

struct BoundaryCurve {
  BoundaryFamily family = BoundaryFamily::AllFree;
  std::vector<BoundarySample> samples;  // sorted by r_ab
};

struct BoundaryOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Lower envelope of r_ac over the family with r_ab = r_bc = t, for t = i / (resolution - 1).
/// Bins whose constraint residual stays above 1e-6 are dropped.
/// Throws std::invalid_argument for resolution < 64.
BoundaryCurve trace_boundary(BoundaryFamily family, int resolution, BoundaryOptions options = {});

void to_json(nlohmann::json& j, const BoundaryCurve& c);

enum class ScenarioFamily { Coherence, Dimension };

/// The three integer-LG states of each family: coherence uses theta in [0, pi/2], dimension uses
/// epsilon in [0, 1]. Throws std::invalid_argument out of range.
std::array<CoeffState, 3> scenario_states(double theta_or_eps, ScenarioFamily family);

OverlapTriple scenario_integer_families(double theta_or_eps, ScenarioFamily family);

}  // namespace oamw
