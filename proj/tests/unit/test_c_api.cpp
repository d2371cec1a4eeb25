// Exercises the shared library through its C interface only.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "resist/resist.h"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

struct Metric {
  rs_metric* h = nullptr;
  explicit Metric(const char* id) { REQUIRE(rs_metric_by_id(id, &h) == RS_OK); }
  ~Metric() { rs_metric_free(h); }
};

struct Profile {
  rs_profile* h = nullptr;
  ~Profile() { rs_profile_free(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(rs_version()) > 0);
  CHECK(std::string(rs_status_name(RS_ERR_DOMAIN)) == "domain_error");
  CHECK(std::string(rs_rng_algorithm()) == "mt19937_64/seed_seq-batch");
}

TEST_CASE("metric queries") {
  Metric plane("plane");
  double f = 0.0, L = 0.0;
  CHECK(rs_metric_warp(plane.h, 1.5, &f) == RS_OK);
  CHECK(f == 1.5);
  CHECK(rs_amplitude_L(plane.h, 1.0, 2.0, &L) == RS_OK);
  CHECK(L == doctest::Approx(kLn2).epsilon(1e-15));
  rs_metric_kind kind{};
  CHECK(rs_metric_kind_of(plane.h, &kind) == RS_OK);
  CHECK(kind == RS_METRIC_PLANE);
  CHECK(rs_metric_warp(plane.h, -1.0, &f) == RS_ERR_DOMAIN);
  CHECK(std::string(rs_last_error()).find("domain") != std::string::npos);

  rs_metric* bad = nullptr;
  CHECK(rs_metric_by_id("torus", &bad) == RS_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(rs_metric_space_form(1, nullptr) == RS_ERR_INVALID_ARGUMENT);
  CHECK(rs_metric_warp(nullptr, 1.0, &f) == RS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("custom callback metric") {
  rs_metric* m = nullptr;
  auto warp = [](double u, void*) { return u; };
  REQUIRE(rs_metric_custom(warp, nullptr, nullptr, 0.0, 100.0, &m) == RS_OK);
  double a = 0.0, b = 0.0;
  CHECK(rs_metric_phi(m, 1.0, &a) == RS_OK);
  CHECK(rs_metric_phi(m, 2.0, &b) == RS_OK);
  CHECK(b - a == doctest::Approx(kLn2).epsilon(1e-10));
  rs_metric_free(m);
}

TEST_CASE("warp table metric and IO errors") {
  const auto path = std::filesystem::temp_directory_path() / "resist_capi_warp.csv";
  std::ofstream(path) << "u,f\n1,1\n2,2\n3,3\n4,4\n";
  rs_metric* m = nullptr;
  REQUIRE(rs_metric_from_csv(path.c_str(), &m) == RS_OK);
  rs_metric_free(m);
  CHECK(rs_metric_from_csv("/nonexistent/x.csv", &m) == RS_ERR_IO);
}

TEST_CASE("loxodrome resistance and JSON") {
  Metric plane("plane");
  Profile p;
  REQUIRE(rs_profile_loxodrome(plane.h, {1.0, 0.0}, {2.0, 0.5}, &p.h) == RS_OK);
  rs_report g{}, t{}, q{};
  CHECK(rs_resistance_graph(p.h, &g) == RS_OK);
  CHECK(rs_resistance_transformed(p.h, &t) == RS_OK);
  CHECK(rs_resistance_parametric(p.h, &q) == RS_OK);
  CHECK(g.value == doctest::Approx(0.171126681139272).epsilon(1e-12));
  CHECK(std::abs(g.value - t.value) < 1e-12);
  CHECK(std::abs(g.value - q.value) < 1e-12);
  CHECK(g.method == RS_METHOD_GRAPH);

  std::size_t needed = 0;
  CHECK(rs_report_to_json(&g, nullptr, 0, &needed) == RS_OK);
  char tiny[4];
  CHECK(rs_report_to_json(&g, tiny, sizeof tiny, &needed) == RS_ERR_BUFFER_TOO_SMALL);
  std::string buf(needed, '\0');
  CHECK(rs_report_to_json(&g, buf.data(), buf.size(), &needed) == RS_OK);
  CHECK(buf.find("\"value\":0.171126681139") != std::string::npos);
}

TEST_CASE("profile sampling with the size-query convention") {
  Metric plane("plane");
  Profile p;
  REQUIRE(rs_profile_truncated(plane.h, {1.0, 0.0}, {2.0, 2.0}, kLn2, &p.h) == RS_OK);
  std::size_t needed = 0;
  CHECK(rs_profile_breakpoints(p.h, nullptr, 0, &needed) == RS_OK);
  CHECK(needed == 1);
  double bp = 0.0;
  CHECK(rs_profile_breakpoints(p.h, &bp, 1, &needed) == RS_OK);
  CHECK(bp == doctest::Approx(kLn2));
  rs_profile_sample(p.h, 10, nullptr, 0, &needed);
  CHECK(needed == 20);
  std::vector<rs_sample> s(needed);
  CHECK(rs_profile_sample(p.h, 10, s.data(), s.size(), &needed) == RS_OK);
  CHECK(s.front().u == doctest::Approx(1.0));
  CHECK(s.back().u == doctest::Approx(2.0));
  double u = 0.0, du = 0.0;
  CHECK(rs_profile_eval(p.h, 0.2, &u, &du) == RS_OK);
  CHECK(du == doctest::Approx(u));
}

TEST_CASE("classification, truncation and oracle") {
  Metric plane("plane");
  rs_solution s{};
  REQUIRE(rs_classify(plane.h, {1.0, 0.0}, {2.0, 2.0 * kPi / 3.0}, &s) == RS_OK);
  CHECK(s.kind == RS_KIND_TRUNCATED);
  CHECK(s.junction_v == doctest::Approx(kLn2).epsilon(1e-15));
  Profile opt;
  REQUIRE(rs_optimal_profile(plane.h, {1.0, 0.0}, {2.0, 2.0 * kPi / 3.0}, &s, &opt.h) == RS_OK);
  rs_report r{};
  CHECK(rs_resistance_graph(opt.h, &r) == RS_OK);
  CHECK(std::abs(r.value - s.optimal_value) < 1e-8);

  rs_truncation t{};
  CHECK(rs_optimal_truncation(plane.h, {1.0, 0.0}, {2.0, 2.0 * kPi / 3.0}, &t) == RS_OK);
  CHECK(std::abs(t.search_v - kLn2) < 1e-7);

  double value = 0.0, slack = 0.0, bound = 0.0;
  CHECK(rs_brute_force_min(1.0, 0.5, 64, 64, 2.0, &value, &slack) == RS_OK);
  CHECK(rs_jensen_lower_bound(1.0, 0.5, &bound) == RS_OK);
  CHECK(value - bound < 0.02);
  CHECK(rs_classify(plane.h, {2.0, 0.0}, {1.0, 1.0}, &s) == RS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("extremal diagnostics") {
  Metric sphere("sphere");
  rs_corner c{};
  CHECK(rs_corner_check(sphere.h, 0.0, 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), &c) == RS_OK);
  CHECK(c.is_corner == 1);
  CHECK(c.degenerate == 1);
  double e = 0.0;
  CHECK(rs_weierstrass_excess(sphere.h, 0.0, 0.5, 0.01, &e) == RS_OK);
  CHECK(e < 0.0);
  double margin = 0.0, d2L = 0.0;
  CHECK(rs_legendre_margin(sphere.h, 0.0, 1.0 / std::sqrt(3.0), &margin, &d2L) == RS_OK);
  CHECK(std::abs(margin) < 1e-15);
  double k = 0.0, det = 0.0;
  int degenerate = -1;
  Metric plane("plane");
  CHECK(rs_central_field(plane.h, {1.0, 0.0}, {2.0, 1.0}, &k, &det, &degenerate) == RS_OK);
  CHECK(det == doctest::Approx(-1.0 / kLn2));
  CHECK(degenerate == 0);

  Profile p;
  REQUIRE(rs_profile_loxodrome(sphere.h, {-0.3, 0.0}, {0.8, 1.0}, &p.h) == RS_OK);
  std::size_t needed = 0;
  rs_diagnose(p.h, 20, nullptr, 0, &needed);
  std::vector<rs_diag_row> rows(needed);
  CHECK(rs_diagnose(p.h, 20, rows.data(), rows.size(), &needed) == RS_OK);
  for (const auto& row : rows) CHECK(std::abs(row.el_residual) < 1e-7);
  double res = 0.0;
  CHECK(rs_el_residual(p.h, 0.5, &res) == RS_OK);
}

TEST_CASE("Monte Carlo through the C API") {
  Metric plane("plane");
  Profile p;
  REQUIRE(rs_profile_parallel(plane.h, 2.0, 0.0, 1.0, &p.h) == RS_OK);
  rs_sim_result r{};
  CHECK(rs_simulate(p.h, 5000, 3, 2, nullptr, &r) == RS_OK);
  CHECK(r.estimate == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.n == 5000);
  std::size_t needed = 0;
  rs_sim_result_to_json(&r, nullptr, 0, &needed);
  std::string buf(needed, '\0');
  CHECK(rs_sim_result_to_json(&r, buf.data(), buf.size(), &needed) == RS_OK);
  CHECK(buf.find("\"sic_violations\":0") != std::string::npos);

  Profile seg;
  REQUIRE(rs_profile_plane_segment({1.0, 0.0}, {1.0, kPi / 2}, &seg.h) == RS_OK);
  CHECK(rs_simulate(seg.h, 100, 1, 1, nullptr, &r) == RS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("closed forms and oscillation demo") {
  double r = 0.0, ratio = 0.0;
  CHECK(rs_tangent_circle_resistance(kPi / 4, &r, &ratio) == RS_OK);
  CHECK(r == doctest::Approx(1.0));
  CHECK(ratio == doctest::Approx(2.0 / kPi));
  double g = 0.0;
  CHECK(rs_convex_envelope(0.5, &g) == RS_OK);
  CHECK(g == 0.75);
  Metric plane("plane");
  const int ms[] = {1, 3};
  rs_oscillation_point pts[2];
  CHECK(rs_oscillation_demo(plane.h, 1.0, 2.0, ms, 2, pts) == RS_OK);
  CHECK(pts[0].resistance == doctest::Approx(1.290989062323));
  const int even[] = {2};
  CHECK(rs_oscillation_demo(plane.h, 1.0, 2.0, even, 1, pts) == RS_ERR_INVALID_ARGUMENT);
}
