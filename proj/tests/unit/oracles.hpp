#pragma once

// Reference computations that share no code with the library.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>

namespace oracle {

inline double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(f, a, b, 1e-13);
}

inline double gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 25, 1e-13);
}

/// Five-point central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// Graph resistance f^2 / (u'^2 + f^2) integrated from u(v), u'(v) directly.
inline double graph_resistance(const std::function<double(double)>& f,
                               const std::function<double(double)>& u,
                               const std::function<double(double)>& du, double v0, double v1) {
  return gauss_kronrod(
      [&](double v) {
        const double w = f(u(v));
        const double s = du(v);
        return w * w / (s * s + w * w);
      },
      v0, v1);
}

}  // namespace oracle
