#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "resist/curve.hpp"

namespace resist {

/// (f^2 - 3u'^2)(f u'' - f' u'^2) for the graph form. Vanishes on extremals.
/// Throws DomainError within 1e-12 of a breakpoint.
double el_residual_graph(const Profile& p, double v);

/// Both components of the parametric Euler-Lagrange system, divided by
/// |gamma'|^7 so that they do not change under t -> lambda t. Needs d2u and
/// d2v on the curve.
std::pair<double, double> el_residual_parametric(const ParametricCurve& c, double t);

/// v'^2 f^2 (3u'^2 + v'^2 f^2) / (u'^2 + v'^2 f^2)^2, constant along extremals.
double conserved_quantity(const ParametricCurve& c, double t);

struct LegendreMargin {
  double margin;  // 3 u'^2 - f^2
  double d2L;     // second derivative of the graph Lagrangian in u'
};

LegendreMargin legendre_margin(const Metric& m, double u, double slope);

/// The graph Lagrangian f^2 / (f^2 + s^2) and its Weierstrass-Erdmann
/// quantities at slope s.
double lagrangian(double f, double s);
double lagrangian_flux(double f, double s);  // dL/du'
double lagrangian_hamiltonian(double f, double s);  // L - u' dL/du'

struct CornerData {
  double u_at_corner;
  double p;  // u'(v-)
  double q;  // u'(v+)
};

struct CornerCheck {
  bool is_corner;   // |p q - f^2/3| < 1e-10
  bool degenerate;  // p == q: the product condition holds with no kink
  std::pair<double, double> flux;         // dL/du' at p and at q
  std::pair<double, double> hamiltonian;  // H at p and at q
};

inline constexpr double kCornerTol = 1e-10;

/// Throws InvalidArgument when p or q is zero.
CornerCheck corner_check(const Metric& m, const CornerData& corner);

/// Weierstrass excess L(q) - L(p) - (q - p) dL/du'(p) in factored form.
double weierstrass_excess(const Metric& m, double u, double p, double q);

struct CentralField {
  double k;
  double jacobian_det;  // det d(u, v)/d(u, k) at B, = -G(u1)/k^2
  bool degenerate;      // k or G(u1) at round-off level
};

/// Member of the loxodrome field from A through B, B in the open quadrant
/// u > A.u, v > A.v.
CentralField central_field(const Metric& m, GeodesicPoint a, GeodesicPoint b);

/// v = v0 + G(u)/k on the field curve of slope k, G(u) = phi(u) - phi(u0).
double field_curve_v(const Metric& m, GeodesicPoint a, double k, double u);
double field_jacobian_det(const Metric& m, GeodesicPoint a, double k, double u);

struct DiagnosticRow {
  double v;
  double el_residual;
  double conserved;
  double legendre_margin;
};

/// n samples per piece taken strictly inside each piece.
std::vector<DiagnosticRow> diagnose(const Profile& p, std::size_t n_per_piece);
void write_csv(std::ostream& os, std::span<const DiagnosticRow> rows);

}  // namespace resist
