#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "resist/metric.hpp"

namespace resist {

using RealFn = std::function<double(double)>;

/// One smooth piece of a graph profile u(v) on [v_begin, v_end].
struct Segment {
  double v_begin = 0.0;
  double v_end = 0.0;
  RealFn u;
  RealFn du;
  RealFn d2u;
  /// d/dv phi(u(v)), when the piece is built in phi-space. May be empty.
  RealFn phi_slope;
};

/// A piecewise-C1 curve written as a graph u(v), directed with increasing v.
///
/// Pieces tile [v_begin, v_end] without gaps; the construction checks this
/// and checks continuity of u at every breakpoint (relative 1e-9). At an
/// interior breakpoint the evaluators use the right-hand piece.
class Profile {
 public:
  Profile(Metric metric, std::vector<Segment> pieces);

  const Metric& metric() const { return metric_; }
  double v_begin() const { return pieces_.front().v_begin; }
  double v_end() const { return pieces_.back().v_end; }
  double delta_v() const { return v_end() - v_begin(); }
  std::span<const Segment> pieces() const { return pieces_; }

  /// Interior v-values where smoothness may fail.
  std::vector<double> breakpoints() const;
  /// v_begin, breakpoints..., v_end.
  std::vector<double> cuts() const;

  const Segment& piece_at(double v) const;
  double u(double v) const { return piece_at(v).u(v); }
  double du(double v) const { return piece_at(v).du(v); }
  double d2u(double v) const { return piece_at(v).d2u(v); }
  /// Slope of y = phi(u(v)); falls back to u'/f(u).
  double phi_slope(double v) const;

 private:
  Metric metric_;
  std::vector<Segment> pieces_;
};

/// A regular curve (u(t), v(t)), t in [t_begin, t_end].
struct ParametricCurve {
  Metric metric;
  double t_begin = 0.0;
  double t_end = 0.0;
  RealFn u;
  RealFn v;
  RealFn du;
  RealFn dv;
  RealFn d2u;  // optional
  RealFn d2v;  // optional
  std::vector<double> breakpoints;
};

/// The graph viewed as the curve t -> (u(t), t).
ParametricCurve as_parametric(const Profile& p);

/// Loxodrome with phi(u(v)) affine in v through A and B. If B.v < A.v the
/// points are swapped so the profile runs with increasing v.
Profile loxodrome_through(const Metric& m, GeodesicPoint a, GeodesicPoint b);

/// Loxodrome of phi-slope k from A to v_end > A.v.
Profile loxodrome_with_slope(const Metric& m, GeodesicPoint a, double k, double v_end);

/// Loxodrome through A and B in arc-length parametrization; needs A.u != B.u
/// and A.v < B.v.
ParametricCurve loxodrome_arclength(const Metric& m, GeodesicPoint a, GeodesicPoint b);

/// Loxodrome from A reaching u = B.u at v_c, then the parallel u = B.u up to
/// B.v. Requires A.u < B.u and A.v < v_c < B.v.
Profile truncated_loxodrome(const Metric& m, GeodesicPoint a, GeodesicPoint b, double v_c);

Profile parallel(const Metric& m, double u0, double v0, double v1);
ParametricCurve meridian(const Metric& m, double v0, double u0, double u1);

/// phi(w(v)) = phi(u0) + (L/2)(1 - cos(2 m s)), s = (v - v0) pi / (2 (v1 - v0)).
/// With odd m the profile ends at u1; `require_odd` rejects even m.
Profile oscillation_profile(const Metric& m, double u0, double u1, int m_index, double v0,
                            double v1, bool require_odd = true);

/// Straight segment of the Euclidean plane in polar form u = p / cos(v - phi).
Profile plane_segment(GeodesicPoint a, GeodesicPoint b);

enum class Branch { plus, minus };

/// Circle tangent to the rays v = +-v0 with centre (1, 0), as the graph
/// u(v) = cos v +- sqrt(cos^2 v - cos^2 v0) on [-v0, v0]. Plane metric.
Profile tangent_circle(double v0, Branch branch);

/// Profile whose phi(u(v)) is the piecewise-linear interpolant of `knots`
/// (v strictly increasing). Each linear stretch is one piece.
Profile phi_polyline(const Metric& m, std::span<const std::pair<double, double>> knots);

struct ProfileSample {
  double v;
  double u;
  double uprime;
};

/// n uniform samples per piece, endpoints included, so each breakpoint
/// appears twice (left- and right-hand piece).
std::vector<ProfileSample> sample(const Profile& p, std::size_t n_per_piece);
void write_csv(std::ostream& os, std::span<const ProfileSample> samples);

/// Number of sign changes of u' over n uniform samples per piece, ignoring
/// |u'| <= tol.
int u_prime_sign_changes(const Profile& p, std::size_t n_per_piece, double tol = 1e-12);
bool is_monotone_nondecreasing(const Profile& p, std::size_t n_per_piece, double tol = 1e-12);

}  // namespace resist
