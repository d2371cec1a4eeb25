#include "resist/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "resist/errors.hpp"

namespace resist {

using std::numbers::pi;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// A phi-space linear piece: phi(u(v)) = y0 + k (v - v0) on [v0, v1], with
// the exact endpoint radii returned at the ends.
Segment phi_linear_segment(const Metric& m, double v0, double v1, double u0, double u1, double k) {
  const double y0 = m.phi(u0);
  Segment s;
  s.v_begin = v0;
  s.v_end = v1;
  s.u = [m, v0, v1, u0, u1, y0, k](double v) {
    if (v == v0) return u0;
    if (v == v1) return u1;
    if (k == 0.0) return u0;
    return m.phi_inverse(y0 + k * (v - v0));
  };
  s.du = [m, u = s.u, k](double v) { return k == 0.0 ? 0.0 : k * m.warp(u(v)); };
  s.d2u = [m, u = s.u, k](double v) {
    if (k == 0.0) return 0.0;
    const double uu = u(v);
    return k * k * m.warp(uu) * m.warp_prime(uu);
  };
  s.phi_slope = [k](double) { return k; };
  return s;
}

void require_ordered(double a, double b, const char* what) {
  if (!(a < b)) throw InvalidArgument(std::string(what) + ": need " + num(a) + " < " + num(b));
}

}  // namespace

Profile::Profile(Metric metric, std::vector<Segment> pieces)
    : metric_(std::move(metric)), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InvalidArgument("profile needs at least one piece");
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& s = pieces_[i];
    if (!s.u || !s.du || !s.d2u) throw InvalidArgument("profile piece is missing an evaluator");
    require_ordered(s.v_begin, s.v_end, "profile piece range");
    if (i > 0) {
      const auto& prev = pieces_[i - 1];
      if (prev.v_end != s.v_begin) {
        throw InvalidArgument("profile pieces must tile the range without gaps or overlaps");
      }
      const double left = prev.u(s.v_begin);
      const double right = s.u(s.v_begin);
      if (std::abs(left - right) > 1e-9 * std::max(1.0, std::abs(left))) {
        throw InvalidArgument("profile is discontinuous at v = " + num(s.v_begin));
      }
    }
  }
  for (const auto& s : pieces_) {
    for (double v : {s.v_begin, 0.5 * (s.v_begin + s.v_end), s.v_end}) {
      const double u = s.u(v);
      if (!metric_.contains(u)) {
        throw DomainError("profile leaves the metric domain at v = " + num(v) + " (u = " +
                          num(u) + ")");
      }
    }
  }
}

std::vector<double> Profile::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < pieces_.size(); ++i) out.push_back(pieces_[i].v_begin);
  return out;
}

std::vector<double> Profile::cuts() const {
  std::vector<double> out{v_begin()};
  for (const auto& s : pieces_) out.push_back(s.v_end);
  return out;
}

const Segment& Profile::piece_at(double v) const {
  if (!(v >= v_begin() && v <= v_end())) {
    throw DomainError("v = " + num(v) + " is outside the profile range [" + num(v_begin()) +
                      ", " + num(v_end()) + "]");
  }
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), v,
                             [](double x, const Segment& s) { return x < s.v_end; });
  if (it == pieces_.end()) --it;
  return *it;
}

double Profile::phi_slope(double v) const {
  const auto& s = piece_at(v);
  if (s.phi_slope) return s.phi_slope(v);
  return s.du(v) / metric_.warp(s.u(v));
}

ParametricCurve as_parametric(const Profile& p) {
  ParametricCurve c{p.metric(), p.v_begin(), p.v_end()};
  c.u = [p](double t) { return p.u(t); };
  c.v = [](double t) { return t; };
  c.du = [p](double t) { return p.du(t); };
  c.dv = [](double) { return 1.0; };
  c.d2u = [p](double t) { return p.d2u(t); };
  c.d2v = [](double) { return 0.0; };
  c.breakpoints = p.breakpoints();
  return c;
}

Profile loxodrome_through(const Metric& m, GeodesicPoint a, GeodesicPoint b) {
  if (a.v == b.v) {
    throw InvalidArgument("no loxodrome joins points with equal v (" + num(a.v) + ")");
  }
  if (b.v < a.v) std::swap(a, b);
  const double k = amplitude_L(m, a.u, b.u) / (b.v - a.v);
  return Profile(m, {phi_linear_segment(m, a.v, b.v, a.u, b.u, k)});
}

Profile loxodrome_with_slope(const Metric& m, GeodesicPoint a, double k, double v_end) {
  require_ordered(a.v, v_end, "loxodrome_with_slope");
  const double u_end = m.phi_inverse(m.phi(a.u) + k * (v_end - a.v));
  return Profile(m, {phi_linear_segment(m, a.v, v_end, a.u, u_end, k)});
}

ParametricCurve loxodrome_arclength(const Metric& m, GeodesicPoint a, GeodesicPoint b) {
  require_ordered(a.v, b.v, "loxodrome_arclength");
  const double k = amplitude_L(m, a.u, b.u) / (b.v - a.v);
  if (k == 0.0) throw InvalidArgument("loxodrome_arclength: endpoints lie on a parallel");
  // Along u' = k f(u) v', arc length is s = sqrt(1+k^2) (u - u0) / k.
  const double w = std::sqrt(1.0 + k * k);
  const double rate = k / w;  // du/ds
  const double y0 = m.phi(a.u);
  ParametricCurve c{m, 0.0, (b.u - a.u) / rate};
  c.u = [u0 = a.u, rate](double s) { return u0 + rate * s; };
  c.v = [m, u = c.u, v0 = a.v, y0, k](double s) { return v0 + (m.phi(u(s)) - y0) / k; };
  c.du = [rate](double) { return rate; };
  c.dv = [m, u = c.u, w](double s) { return 1.0 / (w * m.warp(u(s))); };
  c.d2u = [](double) { return 0.0; };
  c.d2v = [m, u = c.u, w, rate](double s) {
    const double uu = u(s);
    const double f = m.warp(uu);
    return -m.warp_prime(uu) * rate / (w * f * f);
  };
  return c;
}

Profile truncated_loxodrome(const Metric& m, GeodesicPoint a, GeodesicPoint b, double v_c) {
  if (!(a.u < b.u)) {
    throw InvalidArgument("truncated loxodrome needs u0 < u1, got " + num(a.u) + " >= " +
                          num(b.u));
  }
  if (!(a.v < v_c && v_c < b.v)) {
    throw InvalidArgument("junction v_c = " + num(v_c) + " must lie in (" + num(a.v) + ", " +
                          num(b.v) + ")");
  }
  const double k = amplitude_L(m, a.u, b.u) / (v_c - a.v);
  return Profile(m, {phi_linear_segment(m, a.v, v_c, a.u, b.u, k),
                     phi_linear_segment(m, v_c, b.v, b.u, b.u, 0.0)});
}

Profile parallel(const Metric& m, double u0, double v0, double v1) {
  require_ordered(v0, v1, "parallel");
  m.warp(u0);
  return Profile(m, {phi_linear_segment(m, v0, v1, u0, u0, 0.0)});
}

ParametricCurve meridian(const Metric& m, double v0, double u0, double u1) {
  require_ordered(u0, u1, "meridian");
  m.warp(u0);
  m.warp(u1);
  ParametricCurve c{m, u0, u1};
  c.u = [](double t) { return t; };
  c.v = [v0](double) { return v0; };
  c.du = [](double) { return 1.0; };
  c.dv = [](double) { return 0.0; };
  c.d2u = [](double) { return 0.0; };
  c.d2v = [](double) { return 0.0; };
  return c;
}

Profile oscillation_profile(const Metric& m, double u0, double u1, int m_index, double v0,
                            double v1, bool require_odd) {
  if (!(u0 < u1)) throw InvalidArgument("oscillation profile needs u0 < u1");
  require_ordered(v0, v1, "oscillation profile");
  if (m_index < 1) throw InvalidArgument("oscillation index must be a positive integer");
  if (require_odd && m_index % 2 == 0) {
    throw InvalidArgument("oscillation index " + std::to_string(m_index) +
                          " is even; the profile would not end at u1");
  }
  const double y0 = m.phi(u0);
  const double L = m.phi(u1) - y0;
  const double scale = 0.5 * pi / (v1 - v0);  // ds/dv
  const double freq = 2.0 * m_index;
  const bool ends_at_u1 = m_index % 2 == 1;

  auto y_slope = [=](double v) { return 0.5 * L * freq * std::sin(freq * scale * (v - v0)) * scale; };
  Segment s;
  s.v_begin = v0;
  s.v_end = v1;
  s.u = [=](double v) {
    if (v == v0) return u0;
    if (v == v1 && ends_at_u1) return u1;
    const double y = y0 + 0.5 * L * (1.0 - std::cos(freq * scale * (v - v0)));
    return std::clamp(m.phi_inverse(y), u0, u1);
  };
  s.du = [m, u = s.u, y_slope](double v) { return m.warp(u(v)) * y_slope(v); };
  s.d2u = [=, u = s.u](double v) {
    const double uu = u(v);
    const double f = m.warp(uu);
    const double yp = y_slope(v);
    const double ypp = 0.5 * L * freq * freq * scale * scale * std::cos(freq * scale * (v - v0));
    return m.warp_prime(uu) * f * yp * yp + f * ypp;
  };
  s.phi_slope = y_slope;
  return Profile(m, {std::move(s)});
}

Profile plane_segment(GeodesicPoint a, GeodesicPoint b) {
  if (a.v == b.v) throw InvalidArgument("segment endpoints share a ray; it is not a graph u(v)");
  if (b.v < a.v) std::swap(a, b);
  if (b.v - a.v >= pi) throw InvalidArgument("segment must subtend an angle below pi");
  const auto metric = Metric::space_form(0);
  metric.warp(a.u);
  metric.warp(b.u);
  const double ax = a.u * std::cos(a.v), ay = a.u * std::sin(a.v);
  const double bx = b.u * std::cos(b.v), by = b.u * std::sin(b.v);
  const double dx = bx - ax, dy = by - ay;
  const double len = std::hypot(dx, dy);
  double nx = dy / len, ny = -dx / len;
  double p = nx * ax + ny * ay;  // distance of the supporting line from the origin
  if (std::abs(p) < 1e-12) throw InvalidArgument("segment passes through the origin");
  if (p < 0) {
    nx = -nx;
    ny = -ny;
    p = -p;
  }
  const double phi = std::atan2(ny, nx);
  Segment s;
  s.v_begin = a.v;
  s.v_end = b.v;
  s.u = [=](double v) {
    if (v == a.v) return a.u;
    if (v == b.v) return b.u;
    return p / std::cos(v - phi);
  };
  s.du = [=](double v) {
    const double c = std::cos(v - phi);
    return p * std::sin(v - phi) / (c * c);
  };
  s.d2u = [=](double v) {
    const double c = std::cos(v - phi);
    const double sn = std::sin(v - phi);
    return p * (1.0 + sn * sn) / (c * c * c);
  };
  return Profile(metric, {std::move(s)});
}

Profile tangent_circle(double v0, Branch branch) {
  if (!(v0 > 0.0 && v0 < 0.5 * pi)) {
    throw InvalidArgument("tangent circle half-amplitude must lie in (0, pi/2), got " + num(v0));
  }
  const double sign = branch == Branch::plus ? 1.0 : -1.0;
  // cos^2 v - cos^2 v0 = sin(v0 - v) sin(v0 + v), better conditioned near the rays.
  auto root = [v0](double v) {
    if (std::abs(v) > v0) throw DomainError("tangent circle evaluated at |v| > v0");
    return std::sqrt(std::max(0.0, std::sin(v0 - v) * std::sin(v0 + v)));
  };
  Segment s;
  s.v_begin = -v0;
  s.v_end = v0;
  s.u = [=](double v) { return std::cos(v) + sign * root(v); };
  s.du = [=](double v) {
    const double r = root(v);
    return -std::sin(v) - sign * std::cos(v) * std::sin(v) / r;
  };
  s.d2u = [=](double v) {
    const double r = root(v);
    const double c = std::cos(v), sn = std::sin(v);
    const double rp = -c * sn / r;
    const double rpp = -((c * c - sn * sn) * r - c * sn * rp) / (r * r);
    return -c + sign * rpp;
  };
  return Profile(Metric::space_form(0), {std::move(s)});
}

Profile phi_polyline(const Metric& m, std::span<const std::pair<double, double>> knots) {
  if (knots.size() < 2) throw InvalidArgument("phi polyline needs at least two knots");
  std::vector<Segment> pieces;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const auto [va, ya] = knots[i];
    const auto [vb, yb] = knots[i + 1];
    require_ordered(va, vb, "phi polyline knots");
    pieces.push_back(phi_linear_segment(m, va, vb, m.phi_inverse(ya), m.phi_inverse(yb),
                                        (yb - ya) / (vb - va)));
  }
  return Profile(m, std::move(pieces));
}

std::vector<ProfileSample> sample(const Profile& p, std::size_t n_per_piece) {
  if (n_per_piece < 2) throw InvalidArgument("need at least 2 samples per piece");
  std::vector<ProfileSample> out;
  out.reserve(n_per_piece * p.pieces().size());
  for (const auto& s : p.pieces()) {
    for (std::size_t i = 0; i < n_per_piece; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n_per_piece - 1);
      const double v = i + 1 == n_per_piece ? s.v_end : s.v_begin + t * (s.v_end - s.v_begin);
      out.push_back({v, s.u(v), s.du(v)});
    }
  }
  return out;
}

void write_csv(std::ostream& os, std::span<const ProfileSample> samples) {
  os << "v,u,uprime\n";
  for (const auto& s : samples) os << num(s.v) << ',' << num(s.u) << ',' << num(s.uprime) << '\n';
}

int u_prime_sign_changes(const Profile& p, std::size_t n_per_piece, double tol) {
  int changes = 0;
  int last = 0;
  for (const auto& s : sample(p, n_per_piece)) {
    const int sign = s.uprime > tol ? 1 : (s.uprime < -tol ? -1 : 0);
    if (sign != 0) {
      if (last != 0 && sign != last) ++changes;
      last = sign;
    }
  }
  return changes;
}

bool is_monotone_nondecreasing(const Profile& p, std::size_t n_per_piece, double tol) {
  for (const auto& s : sample(p, n_per_piece)) {
    if (s.uprime < -tol) return false;
  }
  return true;
}

}  // namespace resist
