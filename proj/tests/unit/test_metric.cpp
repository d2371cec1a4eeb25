#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "resist/errors.hpp"
#include "resist/metric.hpp"

using namespace resist;
using doctest::Approx;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("resist_test_" + name);
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("space forms: warps at reference points") {
  CHECK(Metric::space_form(0).warp(1.0) == 1.0);
  CHECK(Metric::space_form(1).warp(0.0) == 1.0);
  CHECK(Metric::space_form(-1).warp(1.0) == Approx(std::sinh(1.0)).epsilon(1e-15));
  CHECK(Metric::space_form(1).kind() == MetricKind::sphere);
  CHECK(Metric::space_form(0).id() == "plane");
  CHECK(Metric::space_form(-1).id() == "hyperbolic");
  CHECK_THROWS_AS(Metric::space_form(2), InvalidArgument);
}

TEST_CASE("space forms: phi differences match quadrature of 1/f") {
  struct Case {
    int c;
    double a, b;
  };
  for (const auto& [c, a, b] : {Case{1, -1.2, 1.4}, Case{0, 0.3, 5.0}, Case{-1, 0.2, 3.0}}) {
    const Metric m = Metric::space_form(c);
    const double want = oracle::tanh_sinh([&](double u) { return 1.0 / m.warp(u); }, a, b);
    CHECK(m.phi(b) - m.phi(a) == Approx(want).epsilon(1e-12));
  }
  CHECK(Metric::space_form(0).phi(2.0) - Metric::space_form(0).phi(1.0) ==
        Approx(std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("space forms: phi' = 1/f and f' by finite differences") {
  for (int c : {1, 0, -1}) {
    const Metric m = Metric::space_form(c);
    for (double u : {0.3, 0.7, 1.1}) {
      CHECK(oracle::derivative([&](double x) { return m.phi(x); }, u, 1e-4) ==
            Approx(1.0 / m.warp(u)).epsilon(1e-9));
      CHECK(oracle::derivative([&](double x) { return m.warp(x); }, u, 1e-4) ==
            Approx(m.warp_prime(u)).epsilon(1e-9));
    }
  }
}

TEST_CASE("space forms: phi_inverse round trip") {
  for (int c : {1, 0, -1}) {
    const Metric m = Metric::space_form(c);
    for (double u : {0.05, 0.3, 1.0, 1.5}) {
      CHECK(m.phi_inverse(m.phi(u)) == Approx(u).epsilon(1e-12));
    }
  }
}

TEST_CASE("space forms: domains are enforced") {
  CHECK_THROWS_AS(Metric::space_form(1).warp(2.0), DomainError);
  CHECK_THROWS_AS(Metric::space_form(0).warp(0.0), DomainError);
  CHECK_THROWS_AS(Metric::space_form(-1).phi(-0.5), DomainError);
  CHECK_THROWS_AS(Metric::space_form(-1).phi_inverse(0.5), DomainError);
  CHECK(Metric::space_form(1).contains(1.5));
  CHECK_FALSE(Metric::space_form(1).contains(std::numbers::pi / 2));
}

TEST_CASE("amplitude_L") {
  const Metric plane = Metric::space_form(0);
  CHECK(amplitude_L(plane, 1.0, 2.0) == Approx(std::numbers::ln2).epsilon(1e-15));
  for (int c : {1, 0, -1}) CHECK(amplitude_L(Metric::space_form(c), 0.4, 0.4) == 0.0);
}

TEST_CASE("custom warp: constant warp gives phi differences equal to du") {
  const Metric m = Metric::custom([](double) { return 1.0; }, {0.0, 10.0});
  CHECK(m.kind() == MetricKind::custom);
  CHECK(m.phi(3.0) - m.phi(1.0) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("custom warp: f = u agrees with the plane") {
  const Metric custom = Metric::custom([](double u) { return u; },
                                       {0.0, std::numeric_limits<double>::infinity()});
  const Metric plane = Metric::space_form(0);
  for (double u : {0.2, 0.9, 3.0, 7.5}) {
    CHECK(std::abs((custom.phi(u) - custom.phi(1.0)) - (plane.phi(u) - plane.phi(1.0))) < 1e-10);
  }
}

TEST_CASE("custom warp: cos round trip and derivative fallback") {
  const double h = std::numbers::pi / 2;
  const Metric m = Metric::custom([](double u) { return std::cos(u); }, {-h, h});
  CHECK(m.phi_inverse(m.phi(0.3)) == Approx(0.3).epsilon(1e-10));
  CHECK(m.warp_prime(0.4) == Approx(-std::sin(0.4)).epsilon(1e-7));
}

TEST_CASE("custom warp: non-positive values are rejected") {
  const Metric m = Metric::custom([](double u) { return u - 1.0; }, {0.0, 3.0});
  CHECK_THROWS_AS(m.warp(0.5), DomainError);
}

TEST_CASE("warp table: interpolation of sinh") {
  std::vector<double> u, f;
  for (int i = 0; i <= 200; ++i) {
    u.push_back(0.1 + 0.015 * i);
    f.push_back(std::sinh(u.back()));
  }
  const Metric m = Metric::from_samples(u, f);
  CHECK(m.warp(1.2345) == Approx(std::sinh(1.2345)).epsilon(1e-6));
  const Metric h = Metric::space_form(-1);
  CHECK(m.phi(2.5) - m.phi(0.5) == Approx(h.phi(2.5) - h.phi(0.5)).epsilon(1e-6));
}

TEST_CASE("warp table: CSV loading and validation") {
  const auto good = temp_file("good.csv", "u,f\n1,1\n2,2\n3,3\n4,4\n5,5\n");
  const Metric m = Metric::from_csv(good);
  CHECK(m.warp(2.5) == Approx(2.5).epsilon(1e-12));
  CHECK(m.phi(4.0) - m.phi(2.0) == Approx(std::log(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(Metric::from_csv("/nonexistent/warp.csv"), IoError);
  CHECK_THROWS_AS(Metric::from_csv(temp_file("hdr.csv", "x,y\n1,1\n2,2\n3,3\n4,4\n")),
                  InvalidArgument);
  CHECK_THROWS_AS(Metric::from_csv(temp_file("order.csv", "u,f\n1,1\n3,2\n2,3\n4,4\n")),
                  InvalidArgument);
  CHECK_THROWS_AS(Metric::from_csv(temp_file("neg.csv", "u,f\n1,1\n2,-2\n3,3\n4,4\n")),
                  InvalidArgument);
  CHECK_THROWS_AS(Metric::from_csv(temp_file("short.csv", "u,f\n1,1\n2,2\n")), InvalidArgument);
}
