#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "resist/errors.hpp"
#include "resist/quadrature.hpp"

using namespace resist;
using doctest::Approx;

TEST_CASE("adaptive quadrature") {
  const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(r.value == Approx(2.0).epsilon(1e-13));
  CHECK(r.converged);
  CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
  CHECK_THROWS_AS(integrate([](double) { return NAN; }, 0.0, 1.0), NumericalError);
}

TEST_CASE("piecewise quadrature with a kink") {
  const std::vector<double> cuts{0.0, 0.3, 1.0};
  const auto r = integrate_piecewise([](double x) { return std::abs(x - 0.3); }, cuts);
  CHECK(r.value == Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
}

TEST_CASE("pairwise summation") {
  std::vector<double> xs(1 << 20, 0.1);
  CHECK(pairwise_sum(xs) == Approx(0.1 * (1 << 20)).epsilon(1e-15));
  CHECK(pairwise_sum({}) == 0.0);
}
