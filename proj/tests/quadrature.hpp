#pragma once

#include <cmath>
#include <functional>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace oamw::test {

// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_function fn{[](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); },
                  const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  gsl_integration_qag(&fn, a, b, tol, tol, 2000, GSL_INTEG_GAUSS61, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  return result;
}

// Semi-infinite [a, inf).
inline double integrate_to_inf(const std::function<double(double)>& f, double a, double tol = 1e-12) {
  gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
  gsl_function fn{[](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); },
                  const_cast<std::function<double(double)>*>(&f)};
  double result = 0.0, err = 0.0;
  gsl_integration_qagiu(&fn, a, tol, tol, 2000, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  return result;
}

}  // namespace oamw::test
