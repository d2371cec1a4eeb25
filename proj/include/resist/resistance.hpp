#pragma once

#include <string>
#include <string_view>

#include "resist/curve.hpp"
#include "resist/quadrature.hpp"

namespace resist {

enum class Method { parametric, graph, transformed, closed_form, monte_carlo };

std::string_view to_string(Method m);

/// Value of the resistance functional, without the factor 2 of the impact
/// density.
struct ResistanceReport {
  double value = 0.0;
  double abs_error = 0.0;
  Method method = Method::graph;
  bool converged = true;
};

/// R = int v'^3 f^2 / (u'^2 + v'^2 f^2) dt. Throws NumericalError when the
/// curve is singular (zero speed) at a quadrature node.
ResistanceReport resistance_parametric(const ParametricCurve& c, const QuadratureOptions& opts = {});

/// R = int f^2 / (u'^2 + f^2) dv, split exactly at the breakpoints.
ResistanceReport resistance_graph(const Profile& p, const QuadratureOptions& opts = {});

/// R = int 1 / (1 + y'^2) dv with y = phi(u(v)).
ResistanceReport resistance_transformed(const Profile& p, const QuadratureOptions& opts = {});

/// Impact density 2 <v_i, N>^2 = 2 v'^2 f^2 / (u'^2 + v'^2 f^2). Keeps the
/// factor 2, so the integrand of the functional is density * v' / 2.
double resistance_density(const Metric& m, GeodesicPoint at, double du, double dv);

/// Closed form cot v0 + v0 (1 - cot^2 v0) for either tangent circle.
double tangent_circle_resistance(double v0);

/// Tangent circle over the centred arc of the same sector (resistance 2 v0).
double arc_ratio(double v0);

/// {"value": ..., "abs_error": ..., "method": ...} with 12 significant digits.
std::string to_json(const ResistanceReport& r);

/// Rounds to `digits` significant decimal digits.
double round_significant(double x, int digits = 12);

}  // namespace resist
