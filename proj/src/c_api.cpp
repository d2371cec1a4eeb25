#include "resist/resist.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "resist/resist.hpp"

struct rs_metric {
  resist::Metric metric;
};

struct rs_profile {
  resist::Profile profile;
};

namespace {

thread_local std::string g_last_error;

rs_status fail(rs_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

template <class F>
rs_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const resist::InvalidArgument& e) {
    return fail(RS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const resist::DomainError& e) {
    return fail(RS_ERR_DOMAIN, e.what());
  } catch (const resist::NumericalError& e) {
    return fail(RS_ERR_NUMERICAL, e.what());
  } catch (const resist::IoError& e) {
    return fail(RS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RS_ERR_INTERNAL, "unknown error");
  }
}

#define RS_REQUIRE(ptr)                                                   \
  do {                                                                    \
    if ((ptr) == nullptr) return fail(RS_ERR_INVALID_ARGUMENT, #ptr " is NULL"); \
  } while (0)

resist::GeodesicPoint pt(rs_point p) { return {p.u, p.v}; }

rs_status copy_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr && cap == 0) return RS_OK;
  if (buf == nullptr || cap < s.size() + 1) {
    return fail(RS_ERR_BUFFER_TOO_SMALL, "buffer holds " + std::to_string(cap) + " bytes, need " +
                                             std::to_string(s.size() + 1));
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return RS_OK;
}

template <class T, class U>
rs_status copy_array(const std::vector<U>& src, T* buf, size_t cap, size_t* needed,
                     T (*convert)(const U&)) {
  if (needed != nullptr) *needed = src.size();
  if (buf == nullptr && cap == 0) return RS_OK;
  if (buf == nullptr || cap < src.size()) {
    return fail(RS_ERR_BUFFER_TOO_SMALL, "array holds " + std::to_string(cap) +
                                             " entries, need " + std::to_string(src.size()));
  }
  for (size_t i = 0; i < src.size(); ++i) buf[i] = convert(src[i]);
  return RS_OK;
}

rs_status make_profile(resist::Profile p, rs_profile** out) {
  *out = new rs_profile{std::move(p)};
  return RS_OK;
}

rs_report to_c(const resist::ResistanceReport& r) {
  return {r.value, r.abs_error, static_cast<rs_method>(r.method), r.converged ? 1 : 0};
}

resist::ResistanceReport from_c(const rs_report& r) {
  return {r.value, r.abs_error, static_cast<resist::Method>(r.method), r.converged != 0};
}

rs_solution to_c(const resist::MinimizerSolution& s) {
  return {s.kind == resist::MinimizerKind::loxodrome ? RS_KIND_LOXODROME : RS_KIND_TRUNCATED,
          s.k, s.junction_V, s.optimal_value, s.lower_bound, s.L, s.delta_v};
}

resist::MinimizerSolution from_c(const rs_solution& s) {
  resist::MinimizerSolution out;
  out.kind = s.kind == RS_KIND_LOXODROME ? resist::MinimizerKind::loxodrome
                                         : resist::MinimizerKind::truncated;
  out.k = s.k;
  out.junction_V = s.junction_v;
  out.optimal_value = s.optimal_value;
  out.lower_bound = s.lower_bound;
  out.L = s.amplitude_l;
  out.delta_v = s.delta_v;
  return out;
}

void write_file(const char* path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path);
  if (!os) throw resist::IoError(std::string("cannot open ") + path + " for writing");
  body(os);
  if (!os) throw resist::IoError(std::string("failed writing ") + path);
}

}  // namespace

extern "C" {

const char* rs_last_error(void) { return g_last_error.c_str(); }

const char* rs_status_name(rs_status status) {
  switch (status) {
    case RS_OK: return "ok";
    case RS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case RS_ERR_DOMAIN: return "domain_error";
    case RS_ERR_NUMERICAL: return "numerical_error";
    case RS_ERR_IO: return "io_error";
    case RS_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case RS_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* rs_version(void) { return "1.0.0"; }

/* metric */

rs_status rs_metric_space_form(int curvature, rs_metric** out) {
  RS_REQUIRE(out);
  return guarded([&] {
    *out = new rs_metric{resist::Metric::space_form(curvature)};
    return RS_OK;
  });
}

rs_status rs_metric_by_id(const char* id, rs_metric** out) {
  RS_REQUIRE(id);
  const std::string s(id);
  if (s == "sphere") return rs_metric_space_form(1, out);
  if (s == "plane") return rs_metric_space_form(0, out);
  if (s == "hyperbolic") return rs_metric_space_form(-1, out);
  return fail(RS_ERR_INVALID_ARGUMENT,
              "unknown metric id \"" + s + "\" (expected sphere, plane or hyperbolic)");
}

rs_status rs_metric_from_csv(const char* path, rs_metric** out) {
  RS_REQUIRE(path);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = new rs_metric{resist::Metric::from_csv(path)};
    return RS_OK;
  });
}

rs_status rs_metric_custom(rs_warp_fn warp, rs_warp_fn warp_prime, void* user, double u_min,
                           double u_max, rs_metric** out) {
  RS_REQUIRE(warp);
  RS_REQUIRE(out);
  return guarded([&] {
    resist::Metric::Fn prime;
    if (warp_prime != nullptr) prime = [warp_prime, user](double u) { return warp_prime(u, user); };
    *out = new rs_metric{resist::Metric::custom([warp, user](double u) { return warp(u, user); },
                                                {u_min, u_max}, prime)};
    return RS_OK;
  });
}

void rs_metric_free(rs_metric* m) { delete m; }

rs_status rs_metric_kind_of(const rs_metric* m, rs_metric_kind* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  switch (m->metric.kind()) {
    case resist::MetricKind::sphere: *out = RS_METRIC_SPHERE; break;
    case resist::MetricKind::plane: *out = RS_METRIC_PLANE; break;
    case resist::MetricKind::hyperbolic: *out = RS_METRIC_HYPERBOLIC; break;
    case resist::MetricKind::custom: *out = RS_METRIC_CUSTOM; break;
  }
  return RS_OK;
}

rs_status rs_metric_domain(const rs_metric* m, double* u_min, double* u_max) {
  RS_REQUIRE(m);
  RS_REQUIRE(u_min);
  RS_REQUIRE(u_max);
  const auto d = m->metric.domain();
  *u_min = d.lower;
  *u_max = d.upper;
  return RS_OK;
}

rs_status rs_metric_phi_range(const rs_metric* m, double* lo, double* hi) {
  RS_REQUIRE(m);
  RS_REQUIRE(lo);
  RS_REQUIRE(hi);
  return guarded([&] {
    std::tie(*lo, *hi) = m->metric.phi_range();
    return RS_OK;
  });
}

#define RS_SCALAR_METRIC_FN(name, expr)                  \
  rs_status name(const rs_metric* m, double x, double* out) { \
    RS_REQUIRE(m);                                       \
    RS_REQUIRE(out);                                     \
    return guarded([&] {                                 \
      *out = (expr);                                     \
      return RS_OK;                                      \
    });                                                  \
  }

RS_SCALAR_METRIC_FN(rs_metric_warp, m->metric.warp(x))
RS_SCALAR_METRIC_FN(rs_metric_warp_prime, m->metric.warp_prime(x))
RS_SCALAR_METRIC_FN(rs_metric_phi, m->metric.phi(x))
RS_SCALAR_METRIC_FN(rs_metric_phi_inverse, m->metric.phi_inverse(x))

#undef RS_SCALAR_METRIC_FN

rs_status rs_amplitude_L(const rs_metric* m, double u0, double u1, double* L) {
  RS_REQUIRE(m);
  RS_REQUIRE(L);
  return guarded([&] {
    *L = resist::amplitude_L(m->metric, u0, u1);
    return RS_OK;
  });
}

rs_status rs_metric_chart_point(const rs_metric* m, double u, double v, double* x, double* y) {
  RS_REQUIRE(m);
  RS_REQUIRE(x);
  RS_REQUIRE(y);
  return guarded([&] {
    m->metric.warp(u);
    std::tie(*x, *y) = resist::chart_point(m->metric.kind(), u, v);
    return RS_OK;
  });
}

/* profiles */

rs_status rs_profile_loxodrome(const rs_metric* m, rs_point a, rs_point b, rs_profile** out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] { return make_profile(resist::loxodrome_through(m->metric, pt(a), pt(b)), out); });
}

rs_status rs_profile_loxodrome_slope(const rs_metric* m, rs_point a, double k, double v_end,
                                     rs_profile** out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded(
      [&] { return make_profile(resist::loxodrome_with_slope(m->metric, pt(a), k, v_end), out); });
}

rs_status rs_profile_truncated(const rs_metric* m, rs_point a, rs_point b, double v_c,
                               rs_profile** out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded(
      [&] { return make_profile(resist::truncated_loxodrome(m->metric, pt(a), pt(b), v_c), out); });
}

rs_status rs_profile_parallel(const rs_metric* m, double u, double v0, double v1,
                              rs_profile** out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] { return make_profile(resist::parallel(m->metric, u, v0, v1), out); });
}

rs_status rs_profile_oscillation(const rs_metric* m, double u0, double u1, int m_index,
                                 double v0, double v1, rs_profile** out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    return make_profile(resist::oscillation_profile(m->metric, u0, u1, m_index, v0, v1), out);
  });
}

rs_status rs_profile_plane_segment(rs_point a, rs_point b, rs_profile** out) {
  RS_REQUIRE(out);
  return guarded([&] { return make_profile(resist::plane_segment(pt(a), pt(b)), out); });
}

rs_status rs_profile_tangent_circle(double v0, int branch, rs_profile** out) {
  RS_REQUIRE(out);
  if (branch != 1 && branch != -1) return fail(RS_ERR_INVALID_ARGUMENT, "branch must be +1 or -1");
  return guarded([&] {
    return make_profile(
        resist::tangent_circle(v0, branch > 0 ? resist::Branch::plus : resist::Branch::minus), out);
  });
}

void rs_profile_free(rs_profile* p) { delete p; }

rs_status rs_profile_range(const rs_profile* p, double* v0, double* v1) {
  RS_REQUIRE(p);
  RS_REQUIRE(v0);
  RS_REQUIRE(v1);
  *v0 = p->profile.v_begin();
  *v1 = p->profile.v_end();
  return RS_OK;
}

rs_status rs_profile_eval(const rs_profile* p, double v, double* u, double* du) {
  RS_REQUIRE(p);
  return guarded([&] {
    const auto& s = p->profile.piece_at(v);
    if (u != nullptr) *u = s.u(v);
    if (du != nullptr) *du = s.du(v);
    return RS_OK;
  });
}

rs_status rs_profile_breakpoints(const rs_profile* p, double* buf, size_t cap, size_t* needed) {
  RS_REQUIRE(p);
  return guarded([&] {
    return copy_array<double, double>(p->profile.breakpoints(), buf, cap, needed,
                                      [](const double& x) { return x; });
  });
}

rs_status rs_profile_sample(const rs_profile* p, size_t n_per_piece, rs_sample* buf, size_t cap,
                            size_t* needed) {
  RS_REQUIRE(p);
  return guarded([&] {
    return copy_array<rs_sample, resist::ProfileSample>(
        resist::sample(p->profile, n_per_piece), buf, cap, needed,
        [](const resist::ProfileSample& s) { return rs_sample{s.v, s.u, s.uprime}; });
  });
}

rs_status rs_profile_write_csv(const rs_profile* p, size_t n_per_piece, const char* path) {
  RS_REQUIRE(p);
  RS_REQUIRE(path);
  return guarded([&] {
    const auto samples = resist::sample(p->profile, n_per_piece);
    write_file(path, [&](std::ostream& os) { resist::write_csv(os, samples); });
    return RS_OK;
  });
}

/* resistance */

rs_status rs_resistance_graph(const rs_profile* p, rs_report* out) {
  RS_REQUIRE(p);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = to_c(resist::resistance_graph(p->profile));
    return RS_OK;
  });
}

rs_status rs_resistance_transformed(const rs_profile* p, rs_report* out) {
  RS_REQUIRE(p);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = to_c(resist::resistance_transformed(p->profile));
    return RS_OK;
  });
}

rs_status rs_resistance_parametric(const rs_profile* p, rs_report* out) {
  RS_REQUIRE(p);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = to_c(resist::resistance_parametric(resist::as_parametric(p->profile)));
    return RS_OK;
  });
}

rs_status rs_resistance_meridian(const rs_metric* m, double v0, double u0, double u1,
                                 rs_report* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = to_c(resist::resistance_parametric(resist::meridian(m->metric, v0, u0, u1)));
    return RS_OK;
  });
}

rs_status rs_resistance_density(const rs_metric* m, rs_point at, double du, double dv,
                                double* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = resist::resistance_density(m->metric, pt(at), du, dv);
    return RS_OK;
  });
}

rs_status rs_tangent_circle_resistance(double v0, double* resistance, double* ratio) {
  return guarded([&] {
    const double r = resist::tangent_circle_resistance(v0);
    if (resistance != nullptr) *resistance = r;
    if (ratio != nullptr) *ratio = resist::arc_ratio(v0);
    return RS_OK;
  });
}

rs_status rs_report_to_json(const rs_report* r, char* buf, size_t cap, size_t* needed) {
  RS_REQUIRE(r);
  return guarded([&] { return copy_string(resist::to_json(from_c(*r)), buf, cap, needed); });
}

/* extremal */

rs_status rs_diagnose(const rs_profile* p, size_t n_per_piece, rs_diag_row* buf, size_t cap,
                      size_t* needed) {
  RS_REQUIRE(p);
  return guarded([&] {
    return copy_array<rs_diag_row, resist::DiagnosticRow>(
        resist::diagnose(p->profile, n_per_piece), buf, cap, needed,
        [](const resist::DiagnosticRow& r) {
          return rs_diag_row{r.v, r.el_residual, r.conserved, r.legendre_margin};
        });
  });
}

rs_status rs_diagnose_write_csv(const rs_profile* p, size_t n_per_piece, const char* path) {
  RS_REQUIRE(p);
  RS_REQUIRE(path);
  return guarded([&] {
    const auto rows = resist::diagnose(p->profile, n_per_piece);
    write_file(path, [&](std::ostream& os) { resist::write_csv(os, rows); });
    return RS_OK;
  });
}

rs_status rs_el_residual(const rs_profile* p, double v, double* out) {
  RS_REQUIRE(p);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = resist::el_residual_graph(p->profile, v);
    return RS_OK;
  });
}

rs_status rs_legendre_margin(const rs_metric* m, double u, double slope, double* margin,
                             double* d2L) {
  RS_REQUIRE(m);
  return guarded([&] {
    const auto r = resist::legendre_margin(m->metric, u, slope);
    if (margin != nullptr) *margin = r.margin;
    if (d2L != nullptr) *d2L = r.d2L;
    return RS_OK;
  });
}

rs_status rs_corner_check(const rs_metric* m, double u, double p, double q, rs_corner* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    const auto c = resist::corner_check(m->metric, {u, p, q});
    *out = {c.is_corner ? 1 : 0, c.degenerate ? 1 : 0, c.flux.first, c.flux.second,
            c.hamiltonian.first, c.hamiltonian.second};
    return RS_OK;
  });
}

rs_status rs_weierstrass_excess(const rs_metric* m, double u, double p, double q, double* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = resist::weierstrass_excess(m->metric, u, p, q);
    return RS_OK;
  });
}

rs_status rs_central_field(const rs_metric* m, rs_point a, rs_point b, double* k,
                           double* jacobian_det, int* degenerate) {
  RS_REQUIRE(m);
  return guarded([&] {
    const auto f = resist::central_field(m->metric, pt(a), pt(b));
    if (k != nullptr) *k = f.k;
    if (jacobian_det != nullptr) *jacobian_det = f.jacobian_det;
    if (degenerate != nullptr) *degenerate = f.degenerate ? 1 : 0;
    return RS_OK;
  });
}

/* optimizer */

rs_status rs_convex_envelope(double p, double* out) {
  RS_REQUIRE(out);
  return guarded([&] {
    *out = resist::convex_envelope(p);
    return RS_OK;
  });
}

rs_status rs_jensen_lower_bound(double delta_v, double L, double* out) {
  RS_REQUIRE(out);
  return guarded([&] {
    *out = resist::jensen_lower_bound(delta_v, L);
    return RS_OK;
  });
}

rs_status rs_classify(const rs_metric* m, rs_point a, rs_point b, rs_solution* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    *out = to_c(resist::classify(m->metric, pt(a), pt(b)));
    return RS_OK;
  });
}

rs_status rs_optimal_profile(const rs_metric* m, rs_point a, rs_point b, const rs_solution* sol,
                             rs_profile** out) {
  RS_REQUIRE(m);
  RS_REQUIRE(sol);
  RS_REQUIRE(out);
  return guarded([&] {
    return make_profile(resist::optimal_profile(m->metric, pt(a), pt(b), from_c(*sol)), out);
  });
}

rs_status rs_solution_to_json(const rs_solution* s, char* buf, size_t cap, size_t* needed) {
  RS_REQUIRE(s);
  return guarded([&] { return copy_string(resist::to_json(from_c(*s)), buf, cap, needed); });
}

rs_status rs_optimal_truncation(const rs_metric* m, rs_point a, rs_point b, rs_truncation* out) {
  RS_REQUIRE(m);
  RS_REQUIRE(out);
  return guarded([&] {
    const auto t = resist::optimal_truncation(m->metric, pt(a), pt(b));
    *out = {t.V, t.value, t.second_derivative, t.search_V, t.search_value, t.fd_second_derivative};
    return RS_OK;
  });
}

rs_status rs_brute_force_min(double delta_v, double L, int n_cells, int slope_grid, double p_max,
                             double* value, double* budget_slack) {
  RS_REQUIRE(value);
  return guarded([&] {
    const auto r = resist::brute_force_min(delta_v, L, n_cells, slope_grid, p_max);
    *value = r.value;
    if (budget_slack != nullptr) *budget_slack = r.budget_slack;
    return RS_OK;
  });
}

rs_status rs_oscillation_demo(const rs_metric* m, double u0, double u1, const int* m_list,
                              size_t count, rs_oscillation_point* out) {
  RS_REQUIRE(m);
  if (count > 0) {
    RS_REQUIRE(m_list);
    RS_REQUIRE(out);
  }
  return guarded([&] {
    const auto pts = resist::oscillation_infimum_demo(m->metric, u0, u1, {m_list, count});
    for (size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i].m, pts[i].resistance, pts[i].closed_form};
    return RS_OK;
  });
}

/* Monte-Carlo */

rs_status rs_simulate(const rs_profile* p, uint64_t n_particles, uint64_t seed, unsigned threads,
                      const char* impacts_csv, rs_sim_result* out) {
  RS_REQUIRE(p);
  RS_REQUIRE(out);
  return guarded([&] {
    resist::SimulationOptions opts;
    opts.n_particles = n_particles;
    opts.seed = seed;
    opts.threads = threads;
    opts.record_impacts = impacts_csv != nullptr;
    const auto r = resist::simulate(p->profile, opts);
    if (impacts_csv != nullptr) {
      write_file(impacts_csv, [&](std::ostream& os) { resist::write_impacts_csv(os, r.impacts); });
    }
    *out = {r.estimate, r.std_error, r.n, r.seed, r.sic_violations};
    return RS_OK;
  });
}

rs_status rs_sim_result_to_json(const rs_sim_result* r, char* buf, size_t cap, size_t* needed) {
  RS_REQUIRE(r);
  return guarded([&] {
    resist::SimulationResult s;
    s.estimate = r->estimate;
    s.std_error = r->std_error;
    s.n = r->n;
    s.seed = r->seed;
    s.sic_violations = r->sic_violations;
    return copy_string(resist::to_json(s), buf, cap, needed);
  });
}

const char* rs_rng_algorithm(void) { return resist::kRngAlgorithm.data(); }

}  // extern "C"
