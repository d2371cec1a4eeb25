#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace resist {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = std::size_t{1} << 15;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
};

/// Adaptive Gauss-Kronrod (21-point) integration of `f` over [a, b].
/// Non-convergence is reported through `converged` and `abs_error`; the
/// best available estimate is still returned. Throws NumericalError if the
/// estimate is not finite.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integrates over [cuts.front(), cuts.back()] piecewise, never letting a
/// panel straddle an interior cut. Errors add up.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     std::span<const double> cuts,
                                     const QuadratureOptions& opts = {});

/// Sum in fixed pairwise order. Result depends only on the input order.
double pairwise_sum(std::span<const double> xs);

}  // namespace resist
