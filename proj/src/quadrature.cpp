#include "resist/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <string>

#include "resist/errors.hpp"

namespace resist {
namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

// One workspace per thread, grown on demand.
gsl_integration_workspace* workspace(std::size_t limit) {
  thread_local std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws;
  thread_local std::size_t capacity = 0;
  if (!ws || capacity < limit) {
    ws.reset(gsl_integration_workspace_alloc(limit));
    capacity = limit;
  }
  return ws.get();
}

// GSL aborts by default; status codes are checked instead.
void disable_gsl_abort() {
  static const bool done = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)done;
}

double trampoline(double x, void* params) {
  return (*static_cast<const std::function<double(double)>*>(params))(x);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  if (a == b) return {};
  disable_gsl_abort();
  gsl_function gf;
  gf.function = &trampoline;
  gf.params = const_cast<std::function<double(double)>*>(&f);

  double value = 0.0;
  double err = 0.0;
  const int status = gsl_integration_qag(&gf, a, b, opts.abs_tol, opts.rel_tol,
                                         opts.max_subdivisions, GSL_INTEG_GAUSS21,
                                         workspace(opts.max_subdivisions), &value, &err);
  if (!std::isfinite(value)) {
    throw NumericalError("quadrature produced a non-finite value on [" + std::to_string(a) +
                         ", " + std::to_string(b) + "]");
  }
  return {value, err, status == GSL_SUCCESS};
}

QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     std::span<const double> cuts,
                                     const QuadratureOptions& opts) {
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto piece = integrate(f, cuts[i], cuts[i + 1], opts);
    total.value += piece.value;
    total.abs_error += piece.abs_error;
    total.converged = total.converged && piece.converged;
  }
  return total;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace resist
