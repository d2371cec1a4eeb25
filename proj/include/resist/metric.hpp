#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace resist {

/// Distance from an open domain endpoint inside which evaluation is refused.
inline constexpr double kDomainMargin = 1e-9;

/// Absolute tolerance (on u) of the bisection used to invert phi.
inline constexpr double kPhiInverseTol = 1e-12;

enum class MetricKind { sphere, plane, hyperbolic, custom };

std::string_view to_string(MetricKind kind);

/// Open interval (lower, upper); either end may be infinite.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

/// A point in geodesic coordinates: u along the meridians, v the angle.
struct GeodesicPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Geodesic-coordinate metric ds^2 = du^2 + f(u)^2 dv^2.
///
/// Immutable; copies share state. phi is an antiderivative of 1/f, so only
/// differences of phi carry meaning across metric kinds. Every evaluation
/// checks that u lies at least kDomainMargin inside the open domain and
/// throws DomainError otherwise.
class Metric {
 public:
  using Fn = std::function<double(double)>;

  /// Closed-form space form of curvature +1 (sphere, f = cos u), 0 (plane,
  /// f = u) or -1 (hyperbolic plane, f = sinh u).
  static Metric space_form(int curvature);

  /// User warp. phi is computed by quadrature from `anchor` (default: the
  /// domain midpoint, or lower + 1 when the domain is unbounded above) and
  /// inverted by bisection. When `warp_prime` is empty a central difference
  /// with h = 1e-6 is used.
  static Metric custom(Fn warp, Interval domain, Fn warp_prime = {},
                       std::optional<double> anchor = std::nullopt);

  /// Warp given as a table of (u, f(u)) samples, interpolated by PCHIP.
  /// The domain is the open interval between the first and last u.
  static Metric from_samples(std::vector<double> u, std::vector<double> f);

  /// Reads a "u,f" CSV table (header required, u strictly increasing).
  static Metric from_csv(const std::filesystem::path& path);

  MetricKind kind() const;
  std::string_view id() const { return to_string(kind()); }
  Interval domain() const;
  bool contains(double u) const;

  double warp(double u) const;
  double warp_prime(double u) const;
  double phi(double u) const;
  double phi_inverse(double y) const;

  /// Range of phi over the domain shrunk by kDomainMargin.
  std::pair<double, double> phi_range() const;

 private:
  struct Impl;
  explicit Metric(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void require_domain(double u) const;

  std::shared_ptr<const Impl> impl_;
};

/// Phi amplitude L = phi(u1) - phi(u0).
double amplitude_L(const Metric& m, double u0, double u1);

}  // namespace resist
