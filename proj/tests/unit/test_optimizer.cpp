#include <cmath>
#include <numbers>

#include "doctest.h"
#include "json.hpp"
#include "resist/errors.hpp"
#include "resist/optimizer.hpp"
#include "resist/resistance.hpp"

using namespace resist;
using doctest::Approx;

TEST_CASE("convex envelope") {
  CHECK(convex_envelope(0.0) == 1.0);
  CHECK(convex_envelope(1.0) == 0.5);
  CHECK(convex_envelope(0.5) == 0.75);
  CHECK(convex_envelope(2.0) == Approx(0.2).epsilon(1e-15));
  // below g everywhere, convex on a grid
  for (int i = 0; i <= 400; ++i) {
    const double p = 0.01 * i;
    CHECK(convex_envelope(p) <= 1.0 / (1.0 + p * p) + 1e-15);
    if (i > 0 && i < 400) {
      const double second = convex_envelope(p - 0.01) - 2 * convex_envelope(p) +
                            convex_envelope(p + 0.01);
      CHECK(second >= -1e-14);
    }
  }
}

TEST_CASE("Jensen lower bound") {
  CHECK(jensen_lower_bound(0.5, 1.0) == Approx(0.1).epsilon(1e-15));
  CHECK(jensen_lower_bound(1.0, 0.5) == Approx(0.75).epsilon(1e-15));
  CHECK(jensen_lower_bound(1.3, 0.0) == 1.3);
  CHECK_THROWS_AS(jensen_lower_bound(0.0, 1.0), InvalidArgument);
}

TEST_CASE("classify: truncated regime") {
  const Metric m = Metric::space_form(0);
  const GeodesicPoint a{1.0, 0.0}, b{2.0, 2.0 * std::numbers::pi / 3.0};
  const auto s = classify(m, a, b);
  CHECK(s.kind == MinimizerKind::truncated);
  CHECK(s.junction_V == Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(s.k == Approx(1.0).epsilon(1e-15));
  CHECK(s.optimal_value == Approx(b.v - std::numbers::ln2 / 2).epsilon(1e-15));
  CHECK(std::abs(s.optimal_value - s.lower_bound) < 1e-12);
  const Profile p = optimal_profile(m, a, b, s);
  CHECK(std::abs(resistance_graph(p).value - s.optimal_value) < 1e-8);
}

TEST_CASE("classify: loxodrome regime") {
  const Metric m = Metric::space_form(0);
  const auto s = classify(m, {1.0, 0.0}, {2.0, 0.5});
  CHECK(s.kind == MinimizerKind::loxodrome);
  CHECK(s.k == Approx(1.38629436111989).epsilon(1e-13));
  CHECK(s.optimal_value == Approx(0.171126681139272).epsilon(1e-12));
  const auto j = nlohmann::json::parse(to_json(s));
  CHECK(j["kind"] == "loxodrome");
  CHECK(j["V"].is_null());
}

TEST_CASE("classify: boundary and degenerate inputs") {
  const Metric m = Metric::space_form(0);
  const double L = std::numbers::ln2;
  const auto edge = classify(m, {1.0, 0.0}, {2.0, L});
  CHECK(edge.optimal_value == Approx(L / 2).epsilon(1e-14));
  const auto flat = classify(m, {1.5, 0.0}, {1.5, 1.0});
  CHECK(flat.optimal_value == 1.0);
  CHECK(resistance_graph(optimal_profile(m, {1.5, 0.0}, {1.5, 1.0}, flat)).value ==
        Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(classify(m, {2.0, 0.0}, {1.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(classify(m, {1.0, 1.0}, {2.0, 1.0}), InvalidArgument);
}

TEST_CASE("classify on curved space forms matches the quadrature of its profile") {
  for (int c : {1, -1}) {
    const Metric m = Metric::space_form(c);
    for (double v1 : {0.3, 2.5}) {
      const GeodesicPoint a{0.2, 0.0}, b{0.9, v1};
      const auto s = classify(m, a, b);
      CHECK(std::abs(resistance_graph(optimal_profile(m, a, b, s)).value - s.optimal_value) <
            1e-8);
    }
  }
}

TEST_CASE("golden-section search") {
  const auto r = golden_section_minimize([](double x) { return (x - 0.3) * (x - 0.3) + 1.0; },
                                         -1.0, 2.0);
  CHECK(std::abs(r.x - 0.3) < 1e-7);
  CHECK(r.value == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("optimal truncation") {
  const Metric m = Metric::space_form(0);
  const auto t = optimal_truncation(m, {1.0, 0.0}, {2.0, 2.0 * std::numbers::pi / 3.0});
  CHECK(t.V == Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(std::abs(t.search_V - std::numbers::ln2) < 1e-7);
  CHECK(std::abs(t.search_value - t.value) < 1e-10);
  CHECK(t.second_derivative == Approx(0.721347520444482).epsilon(1e-14));
  CHECK(std::abs(t.fd_second_derivative - t.second_derivative) < 1e-4);
  CHECK_THROWS_AS(optimal_truncation(m, {1.0, 0.0}, {2.0, 0.5}), InvalidArgument);
}

TEST_CASE("truncation resistance closed form") {
  const Metric m = Metric::space_form(-1);
  const GeodesicPoint a{0.5, 0.0}, b{1.0, 3.0};
  const double L = amplitude_L(m, a.u, b.u);
  for (double vc : {0.3, 1.0, 2.0}) {
    const double k = L / vc;
    CHECK(truncation_resistance(m, a, b, vc) ==
          Approx(vc / (1 + k * k) + (b.v - vc)).epsilon(1e-10));
  }
}

TEST_CASE("brute force oracle") {
  auto r = brute_force_min(1.0, 0.5, 64, 128, 2.0);
  CHECK(r.value >= 0.75 - r.budget_slack);
  CHECK(r.value <= 0.77);
  r = brute_force_min(0.5, 1.0, 64, 128, 4.0);
  CHECK(std::abs(r.value - 0.1) < 0.02);
  CHECK(brute_force_min(1.3, 0.0, 16, 16, 2.0).value == Approx(1.3).epsilon(1e-15));
  CHECK_THROWS_AS(brute_force_min(1.0, 0.5, 2, 16, 2.0), InvalidArgument);
  CHECK_THROWS_AS(brute_force_min(1.0, 0.5, 16, 4, 2.0), InvalidArgument);
  CHECK_THROWS_AS(brute_force_min(1.0, 3.0, 16, 16, 2.0), InvalidArgument);
}

TEST_CASE("oscillation demo decreases towards zero") {
  const Metric m = Metric::space_form(0);
  std::vector<int> ms;
  for (int k = 1; k <= 101; k += 10) ms.push_back(k);
  const auto pts = oscillation_infimum_demo(m, 1.0, 2.0, ms);
  CHECK(pts.front().resistance == Approx(1.290989062323).epsilon(1e-11));
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].resistance < pts[i - 1].resistance);
  CHECK(pts.back().resistance < 0.023);
  for (const auto& p : pts) CHECK(std::abs(p.resistance - p.closed_form) < 1e-8);
}
