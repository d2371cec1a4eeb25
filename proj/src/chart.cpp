#include "resist/chart.hpp"

#include <cmath>

namespace resist {

std::pair<double, double> chart_point(MetricKind kind, double u, double v) {
  switch (kind) {
    case MetricKind::sphere: {
      const double x = std::cos(u) * std::cos(v);
      const double y = std::cos(u) * std::sin(v);
      const double z = std::sin(u);
      return {x, y * std::sin(kSphereViewElevation) + z * std::cos(kSphereViewElevation)};
    }
    case MetricKind::hyperbolic: {
      const double r = std::tanh(0.5 * u);
      return {r * std::cos(v), r * std::sin(v)};
    }
    case MetricKind::plane:
    case MetricKind::custom:
      break;
  }
  return {u * std::cos(v), u * std::sin(v)};
}

}  // namespace resist
