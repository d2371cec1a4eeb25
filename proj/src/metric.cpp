#include "resist/metric.hpp"

#include <cmath>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "resist/errors.hpp"
#include "resist/quadrature.hpp"

namespace resist {

using std::numbers::pi;

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::sphere: return "sphere";
    case MetricKind::plane: return "plane";
    case MetricKind::hyperbolic: return "hyperbolic";
    case MetricKind::custom: return "custom";
  }
  return "unknown";
}

struct Metric::Impl {
  MetricKind kind;
  Interval domain;
  Fn warp;
  Fn warp_prime;
  Fn phi;
  Fn phi_inverse;  // may throw DomainError for values outside the range of phi
};

namespace {

std::string fmt_u(double u) {
  std::ostringstream os;
  os.precision(17);
  os << u;
  return os.str();
}

double lower_limit(const Interval& d) { return d.lower + kDomainMargin; }
double upper_limit(const Interval& d) { return d.upper - kDomainMargin; }

// Bisection for phi(u) = y on a monotone increasing phi. Expands the bracket
// when the domain is unbounded.
double invert_monotone(const Metric::Fn& phi, const Interval& domain, double anchor, double y) {
  double lo = std::isfinite(domain.lower) ? lower_limit(domain) : anchor - 1.0;
  double hi = std::isfinite(domain.upper) ? upper_limit(domain) : anchor + 1.0;
  for (int i = 0; phi(lo) > y; ++i) {
    if (std::isfinite(domain.lower) || i > 200) {
      throw DomainError("phi_inverse: value " + fmt_u(y) + " is below the range of phi");
    }
    lo = anchor - 2.0 * (anchor - lo);
  }
  for (int i = 0; phi(hi) < y; ++i) {
    if (std::isfinite(domain.upper) || i > 200) {
      throw DomainError("phi_inverse: value " + fmt_u(y) + " is above the range of phi");
    }
    hi = anchor + 2.0 * (hi - anchor);
  }
  for (int i = 0; i < 400 && hi - lo > kPhiInverseTol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Metric Metric::space_form(int curvature) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  Impl impl;
  switch (curvature) {
    case 1:
      impl.kind = MetricKind::sphere;
      impl.domain = {-pi / 2, pi / 2};
      impl.warp = [](double u) { return std::cos(u); };
      impl.warp_prime = [](double u) { return -std::sin(u); };
      // Inverse Gudermannian: d/du log tan(u/2 + pi/4) = 1/cos u.
      impl.phi = [](double u) { return std::log(std::tan(0.5 * u + 0.25 * pi)); };
      impl.phi_inverse = [](double y) { return 2.0 * std::atan(std::exp(y)) - 0.5 * pi; };
      break;
    case 0:
      impl.kind = MetricKind::plane;
      impl.domain = {0.0, inf};
      impl.warp = [](double u) { return u; };
      impl.warp_prime = [](double) { return 1.0; };
      impl.phi = [](double u) { return std::log(u); };
      impl.phi_inverse = [](double y) { return std::exp(y); };
      break;
    case -1:
      impl.kind = MetricKind::hyperbolic;
      impl.domain = {0.0, inf};
      impl.warp = [](double u) { return std::sinh(u); };
      impl.warp_prime = [](double u) { return std::cosh(u); };
      impl.phi = [](double u) { return std::log(std::tanh(0.5 * u)); };
      impl.phi_inverse = [](double y) {
        if (!(y < 0.0)) {
          throw DomainError("phi_inverse: hyperbolic phi is negative, got " + fmt_u(y));
        }
        return 2.0 * std::atanh(std::exp(y));
      };
      break;
    default:
      throw InvalidArgument("curvature must be one of 1, 0, -1; got " + std::to_string(curvature));
  }
  return Metric(std::make_shared<const Impl>(std::move(impl)));
}

Metric Metric::custom(Fn warp, Interval domain, Fn warp_prime, std::optional<double> anchor) {
  if (!warp) throw InvalidArgument("custom metric needs a warp function");
  if (!(domain.lower < domain.upper) || std::isnan(domain.lower) || std::isnan(domain.upper)) {
    throw InvalidArgument("custom metric domain must be a non-empty interval");
  }
  if (std::isfinite(domain.lower) && std::isfinite(domain.upper) &&
      domain.upper - domain.lower <= 2 * kDomainMargin) {
    throw InvalidArgument("custom metric domain is too narrow");
  }
  double a = 0.0;
  if (anchor) {
    a = *anchor;
  } else if (std::isfinite(domain.lower) && std::isfinite(domain.upper)) {
    a = 0.5 * (domain.lower + domain.upper);
  } else if (std::isfinite(domain.lower)) {
    a = domain.lower + 1.0;
  } else if (std::isfinite(domain.upper)) {
    a = domain.upper - 1.0;
  }
  if (!(a > lower_limit(domain) && a < upper_limit(domain))) {
    throw InvalidArgument("phi anchor " + fmt_u(a) + " is outside the metric domain");
  }

  Impl impl;
  impl.kind = MetricKind::custom;
  impl.domain = domain;
  impl.warp = [w = std::move(warp)](double u) {
    const double f = w(u);
    if (!(f > 0.0)) throw DomainError("warp is not positive at u = " + fmt_u(u));
    return f;
  };
  if (warp_prime) {
    impl.warp_prime = std::move(warp_prime);
  } else {
    impl.warp_prime = [w = impl.warp](double u) {
      constexpr double h = 1e-6;
      return (w(u + h) - w(u - h)) / (2 * h);
    };
  }
  impl.phi = [w = impl.warp, a](double u) {
    return integrate([&w](double t) { return 1.0 / w(t); }, a, u).value;
  };
  impl.phi_inverse = [phi = impl.phi, domain, a](double y) {
    return invert_monotone(phi, domain, a, y);
  };
  return Metric(std::make_shared<const Impl>(std::move(impl)));
}

Metric Metric::from_samples(std::vector<double> u, std::vector<double> f) {
  if (u.size() != f.size()) throw InvalidArgument("warp table columns differ in length");
  if (u.size() < 4) throw InvalidArgument("warp table needs at least 4 rows");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || !std::isfinite(f[i])) {
      throw InvalidArgument("warp table contains a non-finite entry at row " + std::to_string(i));
    }
    if (!(f[i] > 0.0)) {
      throw InvalidArgument("warp sample f(" + fmt_u(u[i]) + ") = " + fmt_u(f[i]) +
                            " is not positive");
    }
    if (i > 0 && !(u[i] > u[i - 1])) {
      throw InvalidArgument("warp table u column must be strictly increasing");
    }
  }
  const Interval domain{u.front(), u.back()};
  using Spline = boost::math::interpolators::pchip<std::vector<double>>;
  auto spline = std::make_shared<const Spline>(std::move(u), std::move(f));
  return custom([spline](double x) { return (*spline)(x); }, domain,
                [spline](double x) { return spline->prime(x); });
}

Metric Metric::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open warp table " + path.string());
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("warp table " + path.string() + " is empty");
  std::string header;
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') header += c;
  }
  if (header != "u,f") {
    throw InvalidArgument("warp table header must be \"u,f\", got \"" + trim(line) + "\"");
  }
  std::vector<double> us;
  std::vector<double> fs;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument("warp table line " + std::to_string(lineno) + ": expected \"u,f\"");
    }
    try {
      std::size_t used = 0;
      const std::string a = trim(line.substr(0, comma));
      const std::string b = trim(line.substr(comma + 1));
      us.push_back(std::stod(a, &used));
      if (used != a.size()) throw std::invalid_argument(a);
      fs.push_back(std::stod(b, &used));
      if (used != b.size()) throw std::invalid_argument(b);
    } catch (const std::logic_error&) {
      throw InvalidArgument("warp table line " + std::to_string(lineno) + ": not a number");
    }
  }
  return from_samples(std::move(us), std::move(fs));
}

MetricKind Metric::kind() const { return impl_->kind; }
Interval Metric::domain() const { return impl_->domain; }

bool Metric::contains(double u) const {
  return u > lower_limit(impl_->domain) && u < upper_limit(impl_->domain);
}

void Metric::require_domain(double u) const {
  if (!contains(u)) {
    throw DomainError("u = " + fmt_u(u) + " is outside the " + std::string(id()) +
                      " domain (" + fmt_u(impl_->domain.lower) + ", " +
                      fmt_u(impl_->domain.upper) + ")");
  }
}

double Metric::warp(double u) const {
  require_domain(u);
  return impl_->warp(u);
}

double Metric::warp_prime(double u) const {
  require_domain(u);
  return impl_->warp_prime(u);
}

double Metric::phi(double u) const {
  require_domain(u);
  return impl_->phi(u);
}

double Metric::phi_inverse(double y) const {
  if (!std::isfinite(y)) throw DomainError("phi_inverse of a non-finite value");
  const double u = impl_->phi_inverse(y);
  require_domain(u);
  return u;
}

std::pair<double, double> Metric::phi_range() const {
  constexpr double big = 1e300;
  const auto& d = impl_->domain;
  const double lo = std::isfinite(d.lower) ? impl_->phi(lower_limit(d)) : -big;
  double hi = big;
  if (std::isfinite(d.upper)) {
    hi = impl_->phi(upper_limit(d));
  } else if (impl_->kind == MetricKind::hyperbolic) {
    hi = 0.0;
  }
  return {lo, hi};
}

double amplitude_L(const Metric& m, double u0, double u1) { return m.phi(u1) - m.phi(u0); }

}  // namespace resist
