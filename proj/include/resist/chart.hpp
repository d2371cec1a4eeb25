#pragma once

#include <utility>

#include "resist/metric.hpp"

namespace resist {

/// Elevation (radians) of the orthographic view used for the sphere.
inline constexpr double kSphereViewElevation = 0.4;

/// Planar image of the surface point (u, v) for figures: polar -> Cartesian
/// for the plane and custom warps, orthographic projection of
/// (cos u cos v, cos u sin v, sin u) for the sphere, and the Poincare disk
/// tanh(u/2) (cos v, sin v) for the hyperbolic plane.
std::pair<double, double> chart_point(MetricKind kind, double u, double v);

}  // namespace resist
