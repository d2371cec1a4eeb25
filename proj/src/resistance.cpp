#include "resist/resistance.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"

#include "resist/errors.hpp"

namespace resist {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::parametric: return "parametric";
    case Method::graph: return "graph";
    case Method::transformed: return "transformed";
    case Method::closed_form: return "closed_form";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

namespace {

ResistanceReport report(const QuadratureResult& q, Method m) {
  return {q.value, q.abs_error, m, q.converged};
}

}  // namespace

ResistanceReport resistance_parametric(const ParametricCurve& c, const QuadratureOptions& opts) {
  if (!(c.t_begin < c.t_end)) throw InvalidArgument("parametric curve has an empty range");
  auto integrand = [&c](double t) {
    const double up = c.du(t);
    const double vp = c.dv(t);
    if (vp == 0.0) return 0.0;
    const double f = c.metric.warp(c.u(t));
    const double speed2 = up * up + vp * vp * f * f;
    if (!(speed2 > 0.0)) {
      throw NumericalError("curve is not regular at t = " + std::to_string(t));
    }
    return vp * vp * vp * f * f / speed2;
  };
  std::vector<double> cuts{c.t_begin};
  for (double b : c.breakpoints) cuts.push_back(b);
  cuts.push_back(c.t_end);
  return report(integrate_piecewise(integrand, cuts, opts), Method::parametric);
}

ResistanceReport resistance_graph(const Profile& p, const QuadratureOptions& opts) {
  const auto& m = p.metric();
  ResistanceReport total{0.0, 0.0, Method::graph, true};
  for (const auto& s : p.pieces()) {
    auto integrand = [&](double v) {
      const double up = s.du(v);
      if (up == 0.0) return 1.0;
      const double f = m.warp(s.u(v));
      if (std::isinf(up)) return 0.0;
      return f * f / (up * up + f * f);
    };
    const auto q = integrate(integrand, s.v_begin, s.v_end, opts);
    total.value += q.value;
    total.abs_error += q.abs_error;
    total.converged = total.converged && q.converged;
  }
  return total;
}

ResistanceReport resistance_transformed(const Profile& p, const QuadratureOptions& opts) {
  const auto& m = p.metric();
  ResistanceReport total{0.0, 0.0, Method::transformed, true};
  for (const auto& s : p.pieces()) {
    auto integrand = [&](double v) {
      double yp = 0.0;
      if (s.phi_slope) {
        yp = s.phi_slope(v);
      } else {
        yp = s.du(v) / m.warp(s.u(v));
      }
      if (std::isinf(yp)) return 0.0;
      return 1.0 / (1.0 + yp * yp);
    };
    const auto q = integrate(integrand, s.v_begin, s.v_end, opts);
    total.value += q.value;
    total.abs_error += q.abs_error;
    total.converged = total.converged && q.converged;
  }
  return total;
}

double resistance_density(const Metric& m, GeodesicPoint at, double du, double dv) {
  if (du == 0.0 && dv == 0.0) throw InvalidArgument("resistance density needs a nonzero tangent");
  const double f = m.warp(at.u);
  return 2.0 * dv * dv * f * f / (du * du + dv * dv * f * f);
}

double tangent_circle_resistance(double v0) {
  if (!(v0 > 0.0 && v0 < 0.5 * std::numbers::pi)) {
    throw InvalidArgument("tangent circle half-amplitude must lie in (0, pi/2)");
  }
  const double cot = 1.0 / std::tan(v0);
  return cot + v0 * (1.0 - cot * cot);
}

double arc_ratio(double v0) { return tangent_circle_resistance(v0) / (2.0 * v0); }

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string to_json(const ResistanceReport& r) {
  nlohmann::json j;
  j["value"] = round_significant(r.value);
  j["abs_error"] = round_significant(r.abs_error);
  j["method"] = std::string(to_string(r.method));
  return j.dump();
}

}  // namespace resist
