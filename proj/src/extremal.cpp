#include "resist/extremal.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "resist/errors.hpp"

namespace resist {

double el_residual_graph(const Profile& p, double v) {
  for (double b : p.breakpoints()) {
    if (std::abs(v - b) <= 1e-12) {
      throw DomainError("Euler-Lagrange residual is undefined at the breakpoint v = " +
                        std::to_string(b));
    }
  }
  const auto& s = p.piece_at(v);
  const double u = s.u(v);
  const double up = s.du(v);
  const double upp = s.d2u(v);
  const double f = p.metric().warp(u);
  const double fp = p.metric().warp_prime(u);
  return (f * f - 3.0 * up * up) * (f * upp - fp * up * up);
}

std::pair<double, double> el_residual_parametric(const ParametricCurve& c, double t) {
  if (!c.d2u || !c.d2v) throw InvalidArgument("curve has no second derivatives");
  const double u = c.u(t);
  const double up = c.du(t);
  const double vp = c.dv(t);
  const double upp = c.d2u(t);
  const double vpp = c.d2v(t);
  const double f = c.metric.warp(u);
  const double fp = c.metric.warp_prime(u);
  const double speed = std::sqrt(up * up + vp * vp * f * f);
  if (!(speed > 0.0)) throw NumericalError("curve is not regular at t = " + std::to_string(t));
  // The bracket multiplied through by v' to avoid dividing by it.
  const double bracket = f * upp * vp - f * up * vpp - fp * up * up * vp;
  const double first = 3.0 * up * up - f * f * vp * vp;
  const double scale = std::pow(speed, 7);
  return {vp * vp * first * bracket / scale, up * vp * first * bracket / scale};
}

double conserved_quantity(const ParametricCurve& c, double t) {
  const double up = c.du(t);
  const double vp = c.dv(t);
  const double f = c.metric.warp(c.u(t));
  const double a = vp * vp * f * f;
  const double speed2 = up * up + a;
  if (!(speed2 > 0.0)) throw NumericalError("curve is not regular at t = " + std::to_string(t));
  return a * (3.0 * up * up + a) / (speed2 * speed2);
}

LegendreMargin legendre_margin(const Metric& m, double u, double slope) {
  const double f = m.warp(u);
  const double f2 = f * f;
  const double s2 = slope * slope;
  const double margin = 3.0 * s2 - f2;
  const double d = f2 + s2;
  return {margin, 2.0 * f2 * margin / (d * d * d)};
}

double lagrangian(double f, double s) { return f * f / (f * f + s * s); }

double lagrangian_flux(double f, double s) {
  const double d = f * f + s * s;
  return -2.0 * f * f * s / (d * d);
}

double lagrangian_hamiltonian(double f, double s) {
  const double d = f * f + s * s;
  return f * f * (f * f + 3.0 * s * s) / (d * d);
}

CornerCheck corner_check(const Metric& m, const CornerData& c) {
  if (c.p == 0.0 || c.q == 0.0) {
    throw InvalidArgument("corner slopes must be nonzero; u' = 0 junctions are not corners here");
  }
  const double f = m.warp(c.u_at_corner);
  CornerCheck out{};
  out.is_corner = std::abs(c.p * c.q - f * f / 3.0) < kCornerTol;
  out.degenerate = c.p == c.q;
  out.flux = {lagrangian_flux(f, c.p), lagrangian_flux(f, c.q)};
  out.hamiltonian = {lagrangian_hamiltonian(f, c.p), lagrangian_hamiltonian(f, c.q)};
  return out;
}

double weierstrass_excess(const Metric& m, double u, double p, double q) {
  const double f2 = m.warp(u) * m.warp(u);
  const double dp = f2 + p * p;
  const double dq = f2 + q * q;
  return f2 * (p - q) * (p - q) / (dq * dp * dp) * (p * p + 2.0 * p * q - f2);
}

CentralField central_field(const Metric& m, GeodesicPoint a, GeodesicPoint b) {
  if (!(b.u > a.u && b.v > a.v)) {
    throw InvalidArgument("central field: B must satisfy u1 > u0 and v1 > v0");
  }
  const double g = amplitude_L(m, a.u, b.u);
  const double k = g / (b.v - a.v);
  return {k, -g / (k * k), !(g > 1e-12 && k > 1e-12)};
}

double field_curve_v(const Metric& m, GeodesicPoint a, double k, double u) {
  if (!(k > 0.0)) throw InvalidArgument("field slope must be positive");
  return a.v + amplitude_L(m, a.u, u) / k;
}

double field_jacobian_det(const Metric& m, GeodesicPoint a, double k, double u) {
  if (!(k > 0.0)) throw InvalidArgument("field slope must be positive");
  return -amplitude_L(m, a.u, u) / (k * k);
}

std::vector<DiagnosticRow> diagnose(const Profile& p, std::size_t n_per_piece) {
  if (n_per_piece == 0) throw InvalidArgument("diagnose needs at least one sample per piece");
  const auto curve = as_parametric(p);
  std::vector<DiagnosticRow> rows;
  for (const auto& s : p.pieces()) {
    for (std::size_t i = 0; i < n_per_piece; ++i) {
      const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n_per_piece);
      const double v = s.v_begin + t * (s.v_end - s.v_begin);
      const double slope = s.du(v);
      rows.push_back({v, el_residual_graph(p, v), conserved_quantity(curve, v),
                      legendre_margin(p.metric(), s.u(v), slope).margin});
    }
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const DiagnosticRow> rows) {
  os << "v,el_residual,C,legendre_margin\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", r.v, r.el_residual, r.conserved,
                  r.legendre_margin);
    os << buf;
  }
}

}  // namespace resist
