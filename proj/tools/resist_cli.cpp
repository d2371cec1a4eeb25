// Command-line front-end over the resist C API.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "resist/resist.h"
#include "run_config.hpp"

namespace {

using nlohmann::json;
using resist::cli::ConfigError;
using resist::cli::Point;
using resist::cli::RunConfig;

constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CliError {
  int exit_code;
  std::string kind;
  std::string message;
};

[[noreturn]] void config_error(const std::string& msg) {
  throw CliError{kExitConfig, "config", msg};
}

void check(rs_status s) {
  if (s == RS_OK) return;
  const std::string msg = rs_last_error();
  switch (s) {
    case RS_ERR_INVALID_ARGUMENT:
      throw CliError{kExitConfig, "invalid_argument", msg};
    case RS_ERR_DOMAIN:
      throw CliError{kExitConfig, "domain", msg};
    case RS_ERR_NUMERICAL:
      throw CliError{kExitNumerical, "numerical", msg};
    case RS_ERR_IO:
      throw CliError{kExitIo, "io", msg};
    default:
      throw CliError{kExitInternal, rs_status_name(s), msg};
  }
}

// 12 significant digits; non-finite values become null.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json rounded(const json& j) {
  if (j.is_number_float()) return num(j.get<double>());
  if (j.is_object() || j.is_array()) {
    json out = j;
    for (auto& el : out) el = rounded(el);
    return out;
  }
  return j;
}

template <typename T, typename Fn>
json c_json(const T& obj, Fn fn) {
  std::size_t needed = 0;
  fn(&obj, nullptr, 0, &needed);
  std::string buf(needed, '\0');
  check(fn(&obj, buf.data(), buf.size(), &needed));
  buf.resize(needed ? needed - 1 : 0);
  return json::parse(buf);
}

struct MetricDeleter {
  void operator()(rs_metric* m) const { rs_metric_free(m); }
};
struct ProfileDeleter {
  void operator()(rs_profile* p) const { rs_profile_free(p); }
};
using MetricPtr = std::unique_ptr<rs_metric, MetricDeleter>;
using ProfilePtr = std::unique_ptr<rs_profile, ProfileDeleter>;

rs_point to_c(Point p) { return {p.u, p.v}; }

MetricPtr make_metric_by_id(const std::string& id) {
  rs_metric* m = nullptr;
  check(rs_metric_by_id(id.c_str(), &m));
  return MetricPtr(m);
}

MetricPtr make_metric(const RunConfig& c) {
  const std::string id = c.metric.value_or(c.warp_table ? "custom" : "plane");
  rs_metric* m = nullptr;
  if (id == "custom") {
    if (!c.warp_table) config_error("metric 'custom' needs --warp-table");
    check(rs_metric_from_csv(c.warp_table->c_str(), &m));
    return MetricPtr(m);
  }
  if (c.warp_table) config_error("--warp-table is only valid with metric 'custom'");
  if (id != "sphere" && id != "plane" && id != "hyperbolic")
    config_error("unknown metric '" + id + "'");
  return make_metric_by_id(id);
}

bool is_plane(const RunConfig& c) { return c.metric.value_or("plane") == "plane" && !c.warp_table; }

template <typename T>
const T& need(const std::optional<T>& v, const char* flag, const std::string& what) {
  if (!v) config_error(what + " needs " + flag);
  return *v;
}

struct BuiltProfile {
  ProfilePtr handle;
  std::string kind;
  std::optional<double> closed_form;
  json extra = json::object();
};

BuiltProfile build_profile(const RunConfig& c, const rs_metric* m) {
  const std::string kind = need(c.profile, "--profile", c.command);
  BuiltProfile out;
  out.kind = kind;
  rs_profile* p = nullptr;
  auto amplitude = [m](double u0, double u1) {
    double L = 0.0;
    check(rs_amplitude_L(m, u0, u1, &L));
    return L;
  };

  if (kind == "loxodrome") {
    const Point a = need(c.from, "--from", "loxodrome");
    if (c.to) {
      const Point b = *c.to;
      check(rs_profile_loxodrome(m, to_c(a), to_c(b), &p));
      out.handle.reset(p);
      const double dv = std::abs(b.v - a.v);
      const double k = amplitude(a.u, b.u) / (b.v - a.v);
      out.closed_form = dv / (1.0 + k * k);
      out.extra["k"] = k;
    } else {
      const double k = need(c.k, "--k", "loxodrome without --to");
      const double v_end = need(c.v_end, "--v-end", "loxodrome without --to");
      check(rs_profile_loxodrome_slope(m, to_c(a), k, v_end, &p));
      out.handle.reset(p);
      out.closed_form = (v_end - a.v) / (1.0 + k * k);
      out.extra["k"] = k;
    }
  } else if (kind == "parallel") {
    const double u = need(c.u, "--u", "parallel");
    const auto vr = need(c.v_range, "--v-range", "parallel");
    check(rs_profile_parallel(m, u, vr[0], vr[1], &p));
    out.handle.reset(p);
    out.closed_form = vr[1] - vr[0];
  } else if (kind == "truncated") {
    const Point a = need(c.from, "--from", "truncated");
    const Point b = need(c.to, "--to", "truncated");
    const double vc = need(c.v_c, "--v-c", "truncated");
    check(rs_profile_truncated(m, to_c(a), to_c(b), vc, &p));
    out.handle.reset(p);
    const double k = amplitude(a.u, b.u) / (vc - a.v);
    out.closed_form = (vc - a.v) / (1.0 + k * k) + (b.v - vc);
  } else if (kind == "optimal") {
    const Point a = need(c.from, "--from", "optimal");
    const Point b = need(c.to, "--to", "optimal");
    rs_solution sol{};
    check(rs_classify(m, to_c(a), to_c(b), &sol));
    check(rs_optimal_profile(m, to_c(a), to_c(b), &sol, &p));
    out.handle.reset(p);
    out.closed_form = sol.optimal_value;
    out.extra["solution"] = c_json(sol, rs_solution_to_json);
  } else if (kind == "oscillation") {
    const auto ur = need(c.u_range, "--u-range", "oscillation");
    const int mi = need(c.m_index, "--m-index", "oscillation");
    const auto vr = c.v_range.value_or(resist::cli::Range{0.0, std::numbers::pi / 2});
    check(rs_profile_oscillation(m, ur[0], ur[1], mi, vr[0], vr[1], &p));
    out.handle.reset(p);
    const double dv = vr[1] - vr[0];
    const double slope = std::numbers::pi * mi * amplitude(ur[0], ur[1]) / (2.0 * dv);
    out.closed_form = dv / std::sqrt(1.0 + slope * slope);
  } else if (kind == "segment") {
    if (!is_plane(c)) config_error("profile 'segment' is defined on the plane metric only");
    const Point a = need(c.from, "--from", "segment");
    const Point b = need(c.to, "--to", "segment");
    check(rs_profile_plane_segment(to_c(a), to_c(b), &p));
    out.handle.reset(p);
  } else if (kind == "tangent-circle") {
    if (!is_plane(c)) config_error("profile 'tangent-circle' is defined on the plane metric only");
    const double v0 = need(c.v0, "--v0", "tangent-circle");
    const int branch = c.branch.value_or(1);
    check(rs_profile_tangent_circle(v0, branch, &p));
    out.handle.reset(p);
    double r = 0.0, ratio = 0.0;
    check(rs_tangent_circle_resistance(v0, &r, &ratio));
    out.closed_form = r;
    out.extra["arc_ratio"] = ratio;
  } else {
    config_error("unknown profile '" + kind +
                 "' (loxodrome, parallel, meridian, truncated, optimal, oscillation, segment, "
                 "tangent-circle)");
  }
  return out;
}

json report_json(const rs_report& r) { return c_json(r, rs_report_to_json); }

void emit(const json& j) { std::cout << rounded(j).dump(2) << '\n'; }

// ---------------------------------------------------------------- commands

void cmd_resistance(const RunConfig& c) {
  auto m = make_metric(c);
  if (c.profile.value_or("") == "meridian") {
    const auto ur = need(c.u_range, "--u-range", "meridian");
    rs_report r{};
    check(rs_resistance_meridian(m.get(), c.v0.value_or(0.0), ur[0], ur[1], &r));
    emit({{"profile", "meridian"},
          {"value", r.value},
          {"methods", {{"parametric", report_json(r)}, {"closed_form", 0.0}}}});
    return;
  }
  const BuiltProfile bp = build_profile(c, m.get());
  rs_report graph{};
  check(rs_resistance_graph(bp.handle.get(), &graph));

  json methods = json::object();
  methods["graph"] = report_json(graph);
  auto optional_method = [&](const char* name, rs_status (*fn)(const rs_profile*, rs_report*)) {
    rs_report r{};
    if (fn(bp.handle.get(), &r) == RS_OK)
      methods[name] = report_json(r);
    else
      methods[name] = {{"error", rs_last_error()}};
  };
  optional_method("transformed", rs_resistance_transformed);
  optional_method("parametric", rs_resistance_parametric);
  if (bp.closed_form) methods["closed_form"] = *bp.closed_form;

  json out = {{"profile", bp.kind}, {"value", graph.value}, {"methods", methods}};
  for (const auto& [k, v] : bp.extra.items()) out[k] = v;
  emit(out);
}

void cmd_classify(const RunConfig& c) {
  auto m = make_metric(c);
  const Point a = need(c.from, "--from", "classify");
  const Point b = need(c.to, "--to", "classify");
  rs_solution sol{};
  check(rs_classify(m.get(), to_c(a), to_c(b), &sol));
  json out = c_json(sol, rs_solution_to_json);
  out["L"] = sol.amplitude_l;
  out["delta_v"] = sol.delta_v;
  if (c.csv) {
    rs_profile* p = nullptr;
    check(rs_optimal_profile(m.get(), to_c(a), to_c(b), &sol, &p));
    ProfilePtr guard(p);
    check(rs_profile_write_csv(p, static_cast<std::size_t>(c.samples.value_or(200)),
                               c.csv->c_str()));
    out["csv"] = *c.csv;
  }
  emit(out);
}

void cmd_truncate(const RunConfig& c) {
  auto m = make_metric(c);
  const Point a = need(c.from, "--from", "truncate");
  const Point b = need(c.to, "--to", "truncate");
  if (c.v_c) {
    rs_profile* p = nullptr;
    check(rs_profile_truncated(m.get(), to_c(a), to_c(b), *c.v_c, &p));
    ProfilePtr guard(p);
    rs_report r{};
    check(rs_resistance_graph(p, &r));
    emit({{"v_c", *c.v_c}, {"value", r.value}, {"abs_error", r.abs_error}});
    return;
  }
  rs_truncation t{};
  check(rs_optimal_truncation(m.get(), to_c(a), to_c(b), &t));
  emit({{"V", t.v},
        {"value", t.value},
        {"second_derivative", t.second_derivative},
        {"search_V", t.search_v},
        {"search_value", t.search_value},
        {"fd_second_derivative", t.fd_second_derivative}});
}

void cmd_oracle(const RunConfig& c) {
  double dv = 0.0, L = 0.0;
  if (c.from || c.to) {
    auto m = make_metric(c);
    const Point a = need(c.from, "--from", "oracle");
    const Point b = need(c.to, "--to", "oracle");
    dv = b.v - a.v;
    check(rs_amplitude_L(m.get(), a.u, b.u, &L));
  } else {
    dv = need(c.delta_v, "--delta-v", "oracle without endpoints");
    L = need(c.amplitude, "--L", "oracle without endpoints");
  }
  const int n = c.n_cells.value_or(128);
  const int grid = c.grid.value_or(128);
  const double p_max =
      c.p_max.value_or(2.0 * std::max(1.0, std::ceil(dv > 0.0 ? L / dv : 1.0)));
  double value = 0.0, slack = 0.0, bound = 0.0;
  check(rs_brute_force_min(dv, L, n, grid, p_max, &value, &slack));
  check(rs_jensen_lower_bound(dv, L, &bound));
  emit({{"delta_v", dv},
        {"L", L},
        {"n_cells", n},
        {"grid", grid},
        {"p_max", p_max},
        {"brute_force", value},
        {"lower_bound", bound},
        {"gap", value - bound},
        {"budget_slack", slack}});
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RESIST_SEED"); env && *env) {
    try {
      const json j = std::string(env);
      RunConfig tmp = resist::cli::from_json({{"seed", j}});
      return *tmp.seed;
    } catch (const ConfigError&) {
      config_error(std::string("RESIST_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return 20240601;
}

void cmd_simulate(const RunConfig& c) {
  auto m = make_metric(c);
  const BuiltProfile bp = build_profile(c, m.get());
  const std::uint64_t n = c.n_particles.value_or(100000);
  const std::uint64_t seed = c.seed ? *c.seed : default_seed();
  const unsigned threads = c.threads.value_or(1);
  rs_sim_result r{};
  check(rs_simulate(bp.handle.get(), n, seed, threads,
                    c.impacts_csv ? c.impacts_csv->c_str() : nullptr, &r));
  json out = c_json(r, rs_sim_result_to_json);
  rs_report q{};
  check(rs_resistance_graph(bp.handle.get(), &q));
  out["quadrature"] = q.value;
  out["profile"] = bp.kind;
  emit(out);
}

void cmd_diagnose(const RunConfig& c) {
  auto m = make_metric(c);
  const BuiltProfile bp = build_profile(c, m.get());
  const auto n = static_cast<std::size_t>(c.samples.value_or(100));
  std::size_t needed = 0;
  rs_diagnose(bp.handle.get(), n, nullptr, 0, &needed);
  std::vector<rs_diag_row> rows(needed);
  check(rs_diagnose(bp.handle.get(), n, rows.data(), rows.size(), &needed));
  if (c.csv) check(rs_diagnose_write_csv(bp.handle.get(), n, c.csv->c_str()));

  double max_res = 0.0, min_margin = INFINITY, max_margin = -INFINITY;
  double mean = 0.0;
  for (const auto& r : rows) {
    max_res = std::max(max_res, std::abs(r.el_residual));
    min_margin = std::min(min_margin, r.legendre_margin);
    max_margin = std::max(max_margin, r.legendre_margin);
    mean += r.conserved;
  }
  mean /= static_cast<double>(rows.size());
  double var = 0.0;
  for (const auto& r : rows) var += (r.conserved - mean) * (r.conserved - mean);
  const double stdev = rows.size() > 1 ? std::sqrt(var / double(rows.size() - 1)) : 0.0;

  json out = {{"profile", bp.kind},
              {"rows", rows.size()},
              {"max_abs_el_residual", max_res},
              {"conserved_mean", mean},
              {"conserved_stdev", stdev},
              {"min_legendre_margin", min_margin},
              {"max_legendre_margin", max_margin}};
  if (c.csv) out["csv"] = *c.csv;
  emit(out);
}

void cmd_oscillate(const RunConfig& c) {
  auto m = make_metric(c);
  const auto ur = c.u_range.value_or(resist::cli::Range{1.0, 2.0});
  std::vector<int> ms = c.m_list.value_or(std::vector<int>{});
  if (ms.empty())
    for (int k = 1; k <= 41; k += 2) ms.push_back(k);
  std::vector<rs_oscillation_point> pts(ms.size());
  check(rs_oscillation_demo(m.get(), ur[0], ur[1], ms.data(), ms.size(), pts.data()));
  double L = 0.0;
  check(rs_amplitude_L(m.get(), ur[0], ur[1], &L));
  json rows = json::array();
  for (const auto& p : pts)
    rows.push_back({{"m", p.m}, {"resistance", p.resistance}, {"closed_form", p.closed_form}});
  emit({{"L", L}, {"points", rows}});
}

// ------------------------------------------------------------------ export

struct Polyline {
  std::string label;
  std::vector<rs_sample> samples;
  std::vector<std::array<double, 2>> xy;
};

Polyline trace(const rs_metric* m, const rs_profile* p, std::string label, std::size_t n) {
  Polyline out{std::move(label), {}, {}};
  std::size_t needed = 0;
  rs_profile_sample(p, n, nullptr, 0, &needed);
  out.samples.resize(needed);
  check(rs_profile_sample(p, n, out.samples.data(), needed, &needed));
  out.xy.reserve(needed);
  for (const auto& s : out.samples) {
    double x = 0.0, y = 0.0;
    check(rs_metric_chart_point(m, s.u, s.v, &x, &y));
    out.xy.push_back({x, y});
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw CliError{kExitIo, "io", "cannot open '" + path.string() + "' for writing"};
  os << text;
  if (!os) throw CliError{kExitIo, "io", "write failed for '" + path.string() + "'"};
}

void write_curves_csv(const std::filesystem::path& path, const std::vector<Polyline>& curves) {
  std::ostringstream os;
  os << "curve,v,u,uprime,x,y\n";
  char buf[160];
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
      const auto& s = c.samples[i];
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g", s.v, s.u, s.uprime,
                    c.xy[i][0], c.xy[i][1]);
      os << c.label << ',' << buf << '\n';
    }
  write_text(path, os.str());
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void write_svg(const std::filesystem::path& path, const std::string& title,
               const std::vector<Polyline>& curves, bool unit_disk) {
  double x0 = unit_disk ? -1.0 : INFINITY, x1 = unit_disk ? 1.0 : -INFINITY;
  double y0 = x0, y1 = x1;
  for (const auto& c : curves)
    for (const auto& [x, y] : c.xy) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= pad, x1 += pad, y0 -= pad, y1 += pad;
  const double stroke = 0.004 * std::max(x1 - x0, y1 - y0);
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  std::ostringstream os;
  char buf[256];
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
                "viewBox=\"%.9g %.9g %.9g %.9g\">\n",
                x0, -y1, x1 - x0, y1 - y0);
  os << buf << "<title>" << xml_escape(title) << "</title>\n";
  if (unit_disk) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" "
                  "stroke-width=\"%.6g\"/>\n",
                  stroke);
    os << buf;
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    std::snprintf(buf, sizeof buf,
                  "<polyline data-curve=\"%s\" fill=\"none\" stroke=\"%s\" "
                  "stroke-width=\"%.6g\" points=\"",
                  xml_escape(c.label).c_str(), colours[i % 5], stroke);
    os << buf;
    for (std::size_t j = 0; j < c.xy.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%s%.7g,%.7g", j ? " " : "", c.xy[j][0], -c.xy[j][1]);
      os << buf;
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  write_text(path, os.str());
}

json export_loxodromes(const RunConfig& c, const std::filesystem::path& dir) {
  struct Form {
    const char* id;
    double u_start, u_stop;
  };
  const Form forms[] = {{"sphere", -1.2, 1.2}, {"plane", 0.1, 1.0}, {"hyperbolic", 0.1, 3.0}};
  const double ks[] = {0.2, 0.5, 1.0};
  const auto n = static_cast<std::size_t>(c.samples.value_or(400));
  json files = json::array();
  for (const auto& f : forms) {
    auto m = make_metric_by_id(f.id);
    double y0 = 0.0, y1 = 0.0;
    check(rs_metric_phi(m.get(), f.u_start, &y0));
    check(rs_metric_phi(m.get(), f.u_stop, &y1));
    std::vector<Polyline> curves;
    for (double k : ks) {
      const double v_end = (y1 - y0) / k;
      rs_profile* p = nullptr;
      check(rs_profile_loxodrome_slope(m.get(), {f.u_start, 0.0}, k, v_end, &p));
      ProfilePtr guard(p);
      const auto per_piece = std::max(n, static_cast<std::size_t>(60.0 * v_end));
      char label[32];
      std::snprintf(label, sizeof label, "k=%g", k);
      curves.push_back(trace(m.get(), p, label, per_piece));
    }
    const std::string stem = std::string("loxodromes_") + f.id;
    write_svg(dir / (stem + ".svg"), std::string("Loxodromes, ") + f.id, curves,
              std::string(f.id) != "plane");
    write_curves_csv(dir / (stem + ".csv"), curves);
    files.push_back((dir / (stem + ".svg")).string());
    files.push_back((dir / (stem + ".csv")).string());
  }
  return files;
}

json export_truncated(const RunConfig& c, const std::filesystem::path& dir) {
  auto m = make_metric(c);
  const Point a = c.from.value_or(Point{1.0, 0.0});
  const Point b = c.to.value_or(Point{2.0, 2.0 * std::numbers::pi / 3.0});
  const auto n = static_cast<std::size_t>(c.samples.value_or(400));
  rs_solution sol{};
  check(rs_classify(m.get(), to_c(a), to_c(b), &sol));
  std::vector<Polyline> curves;
  {
    rs_profile* p = nullptr;
    check(rs_optimal_profile(m.get(), to_c(a), to_c(b), &sol, &p));
    ProfilePtr guard(p);
    curves.push_back(trace(m.get(), p, "optimal", n));
  }
  {
    rs_profile* p = nullptr;
    check(rs_profile_loxodrome(m.get(), to_c(a), to_c(b), &p));
    ProfilePtr guard(p);
    curves.push_back(trace(m.get(), p, "loxodrome", n));
  }
  const std::filesystem::path svg = c.svg ? std::filesystem::path(*c.svg) : dir / "truncated.svg";
  const std::filesystem::path csv = c.csv ? std::filesystem::path(*c.csv) : dir / "truncated.csv";
  rs_metric_kind kind{};
  check(rs_metric_kind_of(m.get(), &kind));
  write_svg(svg, "Truncated minimiser and loxodrome", curves,
            kind == RS_METRIC_SPHERE || kind == RS_METRIC_HYPERBOLIC);
  write_curves_csv(csv, curves);
  return json::array({svg.string(), csv.string()});
}

json export_profile(const RunConfig& c, const std::filesystem::path& dir) {
  auto m = make_metric(c);
  const BuiltProfile bp = build_profile(c, m.get());
  const auto n = static_cast<std::size_t>(c.samples.value_or(400));
  std::vector<Polyline> curves{trace(m.get(), bp.handle.get(), bp.kind, n)};
  const std::filesystem::path svg = c.svg ? std::filesystem::path(*c.svg) : dir / "profile.svg";
  const std::filesystem::path csv = c.csv ? std::filesystem::path(*c.csv) : dir / "profile.csv";
  rs_metric_kind kind{};
  check(rs_metric_kind_of(m.get(), &kind));
  write_svg(svg, "Profile: " + bp.kind, curves,
            kind == RS_METRIC_SPHERE || kind == RS_METRIC_HYPERBOLIC);
  check(rs_profile_write_csv(bp.handle.get(), n, csv.string().c_str()));
  return json::array({svg.string(), csv.string()});
}

void cmd_export(const RunConfig& c) {
  const std::string figure = c.figure.value_or("loxodromes");
  const std::filesystem::path dir = c.out_dir.value_or(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw CliError{kExitIo, "io", "cannot create '" + dir.string() + "': " + ec.message()};
  json files;
  if (figure == "loxodromes")
    files = export_loxodromes(c, dir);
  else if (figure == "truncated")
    files = export_truncated(c, dir);
  else if (figure == "profile")
    files = export_profile(c, dir);
  else
    config_error("unknown figure '" + figure + "' (loxodromes, truncated, profile)");
  emit({{"figure", figure}, {"files", files}});
}

// ------------------------------------------------------------------ flags

struct Flag {
  const char* name;  // long flag without dashes
  const char* key;   // config key
  const char* help;
};

const std::map<std::string, Flag>& flag_table() {
  static const std::map<std::string, Flag> table = [] {
    const Flag flags[] = {
        {"metric", "metric", "sphere | plane | hyperbolic | custom"},
        {"warp-table", "warp_table", "CSV with header u,f (custom metric)"},
        {"profile", "profile",
         "loxodrome | parallel | meridian | truncated | optimal | oscillation | segment | "
         "tangent-circle"},
        {"from", "from", "start point u,v"},
        {"to", "to", "end point u,v"},
        {"k", "k", "loxodrome slope k (with --v-end)"},
        {"v-end", "v_end", "end of the v-range for a slope loxodrome"},
        {"u", "u", "radius of a parallel"},
        {"v0", "v0", "tangent-circle half-angle, or meridian angle"},
        {"v-c", "v_c", "junction of a truncated loxodrome"},
        {"v-range", "v_range", "v0,v1"},
        {"u-range", "u_range", "u0,u1"},
        {"branch", "branch", "tangent-circle branch, 1 or -1"},
        {"m-index", "m_index", "odd oscillation index"},
        {"m-list", "m_list", "comma-separated odd indices"},
        {"delta-v", "delta_v", "angular span"},
        {"L", "L", "amplitude phi(u1) - phi(u0)"},
        {"n-cells", "n_cells", "cells of the discrete oracle"},
        {"grid", "grid", "slope levels of the discrete oracle"},
        {"p-max", "p_max", "largest slope of the discrete oracle"},
        {"samples", "samples", "samples per piece"},
        {"n-particles", "n_particles", "particle count"},
        {"seed", "seed", "RNG seed (default: RESIST_SEED or built-in)"},
        {"threads", "threads", "worker threads"},
        {"figure", "figure", "loxodromes | truncated | profile"},
        {"csv", "csv", "CSV output path"},
        {"svg", "svg", "SVG output path"},
        {"impacts-csv", "impacts_csv", "per-impact CSV output path"},
        {"out-dir", "out_dir", "output directory"},
    };
    std::map<std::string, Flag> t;
    for (const auto& f : flags) t.emplace(f.name, f);
    return t;
  }();
  return table;
}

struct Command {
  const char* name;
  const char* help;
  std::vector<std::string> flags;
  void (*run)(const RunConfig&);
};

const std::vector<std::string> kProfileFlags = {"profile", "from",    "to",      "k",
                                                "v-end",   "u",       "v0",      "v-c",
                                                "v-range", "u-range", "branch",  "m-index"};

std::vector<std::string> with_profile(std::vector<std::string> extra) {
  extra.insert(extra.begin(), kProfileFlags.begin(), kProfileFlags.end());
  return extra;
}

std::vector<Command> commands() {
  return {
      {"resistance", "Resistance of a profile by every applicable method", with_profile({}),
       cmd_resistance},
      {"classify", "Global minimiser between two points",
       {"from", "to", "csv", "samples"}, cmd_classify},
      {"truncate", "Truncated loxodromes: fixed junction or optimal junction",
       {"from", "to", "v-c"}, cmd_truncate},
      {"oracle", "Discrete brute-force minimum against the convex lower bound",
       {"from", "to", "delta-v", "L", "n-cells", "grid", "p-max"}, cmd_oracle},
      {"simulate", "Monte-Carlo particle estimate of the resistance",
       with_profile({"n-particles", "seed", "threads", "impacts-csv"}), cmd_simulate},
      {"diagnose", "Euler-Lagrange, first-integral and Legendre diagnostics",
       with_profile({"samples", "csv"}), cmd_diagnose},
      {"oscillate", "Resistances of oscillating profiles with growing index",
       {"u-range", "m-list"}, cmd_oscillate},
      {"export", "CSV and SVG figures",
       with_profile({"figure", "samples", "out-dir", "csv", "svg"}), cmd_export},
  };
}

void print_error(const CliError& e) {
  std::cerr << json{{"error", {{"code", e.exit_code}, {"kind", e.kind}, {"message", e.message}}}}
                   .dump()
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton-type resistance of curves on surfaces with metric du^2 + f(u)^2 dv^2",
               "resist"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rs_version()));

  const auto cmds = commands();
  struct Bound {
    CLI::App* sub;
    const Command* cmd;
    std::map<std::string, std::string> values;
    std::string config_path;
  };
  std::vector<Bound> bound(cmds.size());
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    auto& b = bound[i];
    b.cmd = &cmds[i];
    b.sub = app.add_subcommand(cmds[i].name, cmds[i].help);
    b.sub->add_option("--config", b.config_path, "JSON config; flags override its fields");
    b.sub->add_option("--metric", b.values["metric"], flag_table().at("metric").help);
    b.sub->add_option("--warp-table", b.values["warp-table"], flag_table().at("warp-table").help);
    for (const auto& name : cmds[i].flags) {
      const Flag& f = flag_table().at(name);
      b.sub->add_option("--" + name, b.values[name], f.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error({kExitConfig, "usage", e.what()});
    return kExitConfig;
  }

  for (auto& b : bound) {
    if (!b.sub->parsed()) continue;
    try {
      RunConfig cfg;
      if (!b.config_path.empty()) cfg = resist::cli::load_config(b.config_path);
      json flags = json::object();
      for (const auto& [name, value] : b.values)
        if (b.sub->count("--" + name) > 0) flags[flag_table().at(name).key] = value;
      RunConfig over = resist::cli::from_json(flags);
      over.command = b.cmd->name;
      cfg = resist::cli::merge(cfg, over);
      b.cmd->run(cfg);
      return 0;
    } catch (const ConfigError& e) {
      print_error({kExitConfig, "config", e.what()});
      return kExitConfig;
    } catch (const CliError& e) {
      print_error(e);
      return e.exit_code;
    } catch (const std::exception& e) {
      print_error({kExitInternal, "internal", e.what()});
      return kExitInternal;
    }
  }
  return kExitInternal;
}
