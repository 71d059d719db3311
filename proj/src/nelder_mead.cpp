#include "nelder_mead.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace oamw::detail {
namespace {

struct Context {
  const Objective* f;
  long evaluations = 0;
  std::vector<double> scratch;
  std::vector<double> best_x;
  double best_value = std::numeric_limits<double>::infinity();
};

double trampoline(const gsl_vector* v, void* params) {
  auto* ctx = static_cast<Context*>(params);
  for (std::size_t i = 0; i < v->size; ++i) ctx->scratch[i] = gsl_vector_get(v, i);
  ++ctx->evaluations;
  const double value = (*ctx->f)(ctx->scratch);
  if (!std::isfinite(value)) return std::numeric_limits<double>::max();
  if (value < ctx->best_value) {
    ctx->best_value = value;
    ctx->best_x = ctx->scratch;
  }
  return value;
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

const bool kHandlerOff = [] {
  gsl_set_error_handler_off();
  return true;
}();

}  // namespace

LocalMinimum nelder_mead(const Objective& f, std::vector<double> x0, const std::vector<double>& step,
                         long max_evals, double size_tol) {
  (void)kHandlerOff;
  const std::size_t n = x0.size();
  if (n == 0 || step.size() != n) throw std::invalid_argument("nelder_mead: dimension mismatch");

  Context ctx{&f, 0, std::vector<double>(n), x0, std::numeric_limits<double>::infinity()};
  gsl_multimin_function fn{&trampoline, n, &ctx};

  std::unique_ptr<gsl_vector, VectorDeleter> start(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) {
    gsl_vector_set(start.get(), i, x0[i]);
    gsl_vector_set(steps.get(), i, step[i]);
  }
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  if (gsl_multimin_fminimizer_set(minimizer.get(), &fn, start.get(), steps.get()) == GSL_SUCCESS) {
    while (ctx.evaluations < max_evals) {
      if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_fminimizer_size(minimizer.get()) < size_tol) break;
    }
  }
  return {ctx.best_x, ctx.best_value, ctx.evaluations};
}

}  // namespace oamw::detail
