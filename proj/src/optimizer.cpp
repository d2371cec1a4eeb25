#include "resist/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "json.hpp"
#include "resist/errors.hpp"
#include "resist/resistance.hpp"

namespace resist {

namespace {

double g(double p) { return 1.0 / (1.0 + p * p); }

}  // namespace

double convex_envelope(double p) {
  if (!(p >= 0.0)) throw InvalidArgument("convex envelope is defined for p >= 0");
  return p <= 1.0 ? 1.0 - 0.5 * p : g(p);
}

double jensen_lower_bound(double delta_v, double L) {
  if (!(delta_v > 0.0)) throw InvalidArgument("jensen bound needs delta_v > 0");
  if (!(L >= 0.0)) throw InvalidArgument("jensen bound needs L >= 0");
  return delta_v * convex_envelope(L / delta_v);
}

std::string_view to_string(MinimizerKind k) {
  return k == MinimizerKind::loxodrome ? "loxodrome" : "truncated";
}

MinimizerSolution classify(const Metric& m, GeodesicPoint a, GeodesicPoint b) {
  if (!(a.v < b.v)) throw InvalidArgument("classify needs v0 < v1");
  if (a.u > b.u) {
    throw InvalidArgument("classify needs u0 <= u1; decreasing fronts are not admissible");
  }
  MinimizerSolution s;
  s.delta_v = b.v - a.v;
  if (a.u == b.u) {
    m.warp(a.u);
    s.kind = MinimizerKind::truncated;
    s.k = 0.0;
    s.junction_V = a.v;
    s.optimal_value = s.delta_v;
    s.lower_bound = jensen_lower_bound(s.delta_v, 0.0);
    return s;
  }
  s.L = amplitude_L(m, a.u, b.u);
  s.lower_bound = jensen_lower_bound(s.delta_v, s.L);
  if (s.delta_v <= s.L) {
    s.kind = MinimizerKind::loxodrome;
    s.k = s.L / s.delta_v;
    s.optimal_value = s.delta_v / (1.0 + s.k * s.k);
  } else {
    s.kind = MinimizerKind::truncated;
    s.k = 1.0;
    s.junction_V = a.v + s.L;
    s.optimal_value = s.delta_v - 0.5 * s.L;
  }
  return s;
}

Profile optimal_profile(const Metric& m, GeodesicPoint a, GeodesicPoint b,
                        const MinimizerSolution& sol) {
  if (sol.kind == MinimizerKind::loxodrome) return loxodrome_through(m, a, b);
  if (sol.L == 0.0) return parallel(m, a.u, a.v, b.v);
  return truncated_loxodrome(m, a, b, sol.junction_V);
}

std::string to_json(const MinimizerSolution& s) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(s.kind));
  j["k"] = round_significant(s.k);
  if (s.kind == MinimizerKind::truncated) {
    j["V"] = round_significant(s.junction_V);
  } else {
    j["V"] = nullptr;
  }
  j["optimal_value"] = round_significant(s.optimal_value);
  j["lower_bound"] = round_significant(s.lower_bound);
  return j.dump();
}

GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double a,
                                            double b, double tol) {
  if (!(a < b)) throw InvalidArgument("golden-section search needs a < b");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > tol && it < 500) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

double truncation_resistance(const Metric& m, GeodesicPoint a, GeodesicPoint b, double v_c) {
  return resistance_graph(truncated_loxodrome(m, a, b, v_c)).value;
}

TruncationResult optimal_truncation(const Metric& m, GeodesicPoint a, GeodesicPoint b) {
  if (!(a.v < b.v)) throw InvalidArgument("optimal truncation needs v0 < v1");
  const double L = amplitude_L(m, a.u, b.u);
  const double dv = b.v - a.v;
  if (!(L > 0.0)) throw InvalidArgument("optimal truncation needs u0 < u1");
  if (!(dv > L)) {
    throw InvalidArgument("optimal truncation needs delta_v > L; the loxodrome is optimal here");
  }
  TruncationResult r{};
  r.V = a.v + L;
  r.value = dv - 0.5 * L;
  r.second_derivative = 1.0 / (2.0 * L);

  auto R = [&](double v_c) { return truncation_resistance(m, a, b, v_c); };
  const double margin = 1e-9 * dv;
  const auto gs = golden_section_minimize(R, a.v + margin, b.v - margin, 1e-10);
  r.search_V = gs.x;
  r.search_value = gs.value;

  const double h = std::min({1e-4, 0.25 * (r.V - a.v), 0.25 * (b.v - r.V)});
  r.fd_second_derivative = (R(r.V + h) - 2.0 * R(r.V) + R(r.V - h)) / (h * h);
  return r;
}

BruteForceResult brute_force_min(double delta_v, double L, int n_cells, int slope_grid,
                                 double p_max) {
  if (!(delta_v > 0.0)) throw InvalidArgument("brute force needs delta_v > 0");
  if (!(L >= 0.0)) throw InvalidArgument("brute force needs L >= 0");
  if (n_cells < 4) throw InvalidArgument("brute force needs n_cells >= 4");
  if (slope_grid < 8) throw InvalidArgument("brute force needs slope_grid >= 8");
  if (!(p_max >= std::max(2.0, 2.0 * L / delta_v) * (1.0 - 1e-12))) {
    throw InvalidArgument("brute force needs p_max >= max(2, 2 L / delta_v)");
  }
  const double step = p_max / slope_grid;
  const double cell = delta_v / n_cells;
  const double quantum = step * cell;
  const long target = static_cast<long>(std::ceil(L / quantum - 1e-9));
  const long max_units = static_cast<long>(n_cells) * slope_grid;
  if (target > max_units) throw InvalidArgument("brute force budget L exceeds p_max * delta_v");

  std::vector<double> cost(static_cast<std::size_t>(slope_grid) + 1);
  for (int j = 0; j <= slope_grid; ++j) cost[j] = g(j * step) * cell;

  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(static_cast<std::size_t>(target) + 1, inf);
  std::vector<double> next(dp.size());
  dp[0] = 0.0;
  for (int i = 0; i < n_cells; ++i) {
    const long reach = std::min<long>(target, static_cast<long>(i + 1) * slope_grid);
    std::fill(next.begin(), next.end(), inf);
    for (long b = 0; b <= reach; ++b) {
      const long jmax = std::min<long>(slope_grid, b);
      double best = inf;
      for (long j = 0; j <= jmax; ++j) {
        const double c = dp[b - j] + cost[j];
        best = c < best ? c : best;
      }
      next[b] = best;
    }
    dp.swap(next);
  }
  return {dp[target], 0.5 * quantum, target};
}

std::vector<OscillationPoint> oscillation_infimum_demo(const Metric& m, double u0, double u1,
                                                       std::span<const int> m_list) {
  const double L = amplitude_L(m, u0, u1);
  std::vector<OscillationPoint> out;
  for (int idx : m_list) {
    const auto profile = oscillation_profile(m, u0, u1, idx, 0.0, 0.5 * std::numbers::pi);
    const double closed = 0.5 * std::numbers::pi / std::sqrt(1.0 + idx * idx * L * L);
    out.push_back({idx, resistance_graph(profile).value, closed});
  }
  return out;
}

}  // namespace resist
