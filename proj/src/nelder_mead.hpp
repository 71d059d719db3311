#pragma once

#include <functional>
#include <vector>

namespace oamw::detail {

struct LocalMinimum {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Unconstrained Nelder-Mead (GSL nmsimplex2). Stops once max_evals evaluations have been spent
/// or the simplex characteristic size drops below size_tol.
LocalMinimum nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& step,
                         long max_evals, double size_tol);

}  // namespace oamw::detail
