/*
 * C interface of the resist library.
 *
 * Objects are opaque handles created by rs_*_create-style calls and released
 * with the matching rs_*_free. Every fallible call returns an rs_status; on
 * failure rs_last_error() describes the problem (thread-local, valid until
 * the next call on the same thread). Angles are radians.
 *
 * Functions writing JSON or arrays use the size-query convention: pass a
 * buffer and its capacity; *needed receives the full size (for strings,
 * including the terminating NUL). A NULL buffer with capacity 0 only
 * queries and returns RS_OK. RS_ERR_BUFFER_TOO_SMALL is returned when the output did not fit.
 */
#ifndef RESIST_RESIST_H
#define RESIST_RESIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RS_API __declspec(dllexport)
#else
#define RS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rs_status {
  RS_OK = 0,
  RS_ERR_INVALID_ARGUMENT = 1,
  RS_ERR_DOMAIN = 2,
  RS_ERR_NUMERICAL = 3,
  RS_ERR_IO = 4,
  RS_ERR_BUFFER_TOO_SMALL = 5,
  RS_ERR_INTERNAL = 6
} rs_status;

typedef struct rs_metric rs_metric;
typedef struct rs_profile rs_profile;

RS_API const char* rs_last_error(void);
RS_API const char* rs_status_name(rs_status status);
RS_API const char* rs_version(void);

/* ---- metric ---------------------------------------------------------- */

typedef enum rs_metric_kind {
  RS_METRIC_SPHERE = 0,
  RS_METRIC_PLANE = 1,
  RS_METRIC_HYPERBOLIC = 2,
  RS_METRIC_CUSTOM = 3
} rs_metric_kind;

typedef double (*rs_warp_fn)(double u, void* user);

/* curvature must be 1, 0 or -1 */
RS_API rs_status rs_metric_space_form(int curvature, rs_metric** out);
/* "sphere", "plane" or "hyperbolic" */
RS_API rs_status rs_metric_by_id(const char* id, rs_metric** out);
/* CSV table with header "u,f" and strictly increasing u */
RS_API rs_status rs_metric_from_csv(const char* path, rs_metric** out);
/* warp_prime may be NULL (central differences are used) */
RS_API rs_status rs_metric_custom(rs_warp_fn warp, rs_warp_fn warp_prime, void* user,
                                  double u_min, double u_max, rs_metric** out);
RS_API void rs_metric_free(rs_metric* m);

RS_API rs_status rs_metric_kind_of(const rs_metric* m, rs_metric_kind* out);
RS_API rs_status rs_metric_domain(const rs_metric* m, double* u_min, double* u_max);
RS_API rs_status rs_metric_phi_range(const rs_metric* m, double* lo, double* hi);
RS_API rs_status rs_metric_warp(const rs_metric* m, double u, double* f);
RS_API rs_status rs_metric_warp_prime(const rs_metric* m, double u, double* fp);
RS_API rs_status rs_metric_phi(const rs_metric* m, double u, double* y);
RS_API rs_status rs_metric_phi_inverse(const rs_metric* m, double y, double* u);
RS_API rs_status rs_amplitude_L(const rs_metric* m, double u0, double u1, double* L);

/* Embedding chart used for figures: plane -> Cartesian from polar, sphere ->
 * orthographic view of the unit sphere, hyperbolic -> Poincare disk; custom
 * warps use the polar chart. */
RS_API rs_status rs_metric_chart_point(const rs_metric* m, double u, double v, double* x,
                                       double* y);

/* ---- profiles -------------------------------------------------------- */

typedef struct rs_point {
  double u;
  double v;
} rs_point;

RS_API rs_status rs_profile_loxodrome(const rs_metric* m, rs_point a, rs_point b,
                                      rs_profile** out);
RS_API rs_status rs_profile_loxodrome_slope(const rs_metric* m, rs_point a, double k,
                                            double v_end, rs_profile** out);
RS_API rs_status rs_profile_truncated(const rs_metric* m, rs_point a, rs_point b, double v_c,
                                      rs_profile** out);
RS_API rs_status rs_profile_parallel(const rs_metric* m, double u, double v0, double v1,
                                     rs_profile** out);
RS_API rs_status rs_profile_oscillation(const rs_metric* m, double u0, double u1, int m_index,
                                        double v0, double v1, rs_profile** out);
/* plane metric only */
RS_API rs_status rs_profile_plane_segment(rs_point a, rs_point b, rs_profile** out);
/* branch: +1 or -1; plane metric, centre (1, 0) */
RS_API rs_status rs_profile_tangent_circle(double v0, int branch, rs_profile** out);
RS_API void rs_profile_free(rs_profile* p);

RS_API rs_status rs_profile_range(const rs_profile* p, double* v0, double* v1);
RS_API rs_status rs_profile_eval(const rs_profile* p, double v, double* u, double* du);
RS_API rs_status rs_profile_breakpoints(const rs_profile* p, double* buf, size_t cap,
                                        size_t* needed);

typedef struct rs_sample {
  double v;
  double u;
  double uprime;
} rs_sample;

/* n_per_piece uniform samples per piece, both one-sided values at breakpoints */
RS_API rs_status rs_profile_sample(const rs_profile* p, size_t n_per_piece, rs_sample* buf,
                                   size_t cap, size_t* needed);
/* CSV "v,u,uprime" */
RS_API rs_status rs_profile_write_csv(const rs_profile* p, size_t n_per_piece, const char* path);

/* ---- resistance ------------------------------------------------------ */

typedef enum rs_method {
  RS_METHOD_PARAMETRIC = 0,
  RS_METHOD_GRAPH = 1,
  RS_METHOD_TRANSFORMED = 2,
  RS_METHOD_CLOSED_FORM = 3,
  RS_METHOD_MONTE_CARLO = 4
} rs_method;

typedef struct rs_report {
  double value;
  double abs_error;
  rs_method method;
  int converged;
} rs_report;

RS_API rs_status rs_resistance_graph(const rs_profile* p, rs_report* out);
RS_API rs_status rs_resistance_transformed(const rs_profile* p, rs_report* out);
/* the profile viewed as the curve t -> (u(t), t) */
RS_API rs_status rs_resistance_parametric(const rs_profile* p, rs_report* out);
RS_API rs_status rs_resistance_meridian(const rs_metric* m, double v0, double u0, double u1,
                                        rs_report* out);
/* with the factor 2 */
RS_API rs_status rs_resistance_density(const rs_metric* m, rs_point at, double du, double dv,
                                       double* out);
RS_API rs_status rs_tangent_circle_resistance(double v0, double* resistance, double* ratio);
RS_API rs_status rs_report_to_json(const rs_report* r, char* buf, size_t cap, size_t* needed);

/* ---- extremal diagnostics -------------------------------------------- */

typedef struct rs_diag_row {
  double v;
  double el_residual;
  double conserved;
  double legendre_margin;
} rs_diag_row;

RS_API rs_status rs_diagnose(const rs_profile* p, size_t n_per_piece, rs_diag_row* buf,
                             size_t cap, size_t* needed);
/* CSV "v,el_residual,C,legendre_margin" */
RS_API rs_status rs_diagnose_write_csv(const rs_profile* p, size_t n_per_piece,
                                       const char* path);
RS_API rs_status rs_el_residual(const rs_profile* p, double v, double* out);
RS_API rs_status rs_legendre_margin(const rs_metric* m, double u, double slope, double* margin,
                                    double* d2L);

typedef struct rs_corner {
  int is_corner;
  int degenerate;
  double flux_p, flux_q;
  double hamiltonian_p, hamiltonian_q;
} rs_corner;

RS_API rs_status rs_corner_check(const rs_metric* m, double u, double p, double q, rs_corner* out);
RS_API rs_status rs_weierstrass_excess(const rs_metric* m, double u, double p, double q,
                                       double* out);
RS_API rs_status rs_central_field(const rs_metric* m, rs_point a, rs_point b, double* k,
                                  double* jacobian_det, int* degenerate);

/* ---- optimizer ------------------------------------------------------- */

typedef enum rs_minimizer_kind { RS_KIND_LOXODROME = 0, RS_KIND_TRUNCATED = 1 } rs_minimizer_kind;

typedef struct rs_solution {
  rs_minimizer_kind kind;
  double k;
  double junction_v;
  double optimal_value;
  double lower_bound;
  double amplitude_l;
  double delta_v;
} rs_solution;

RS_API rs_status rs_convex_envelope(double p, double* out);
RS_API rs_status rs_jensen_lower_bound(double delta_v, double L, double* out);
RS_API rs_status rs_classify(const rs_metric* m, rs_point a, rs_point b, rs_solution* out);
RS_API rs_status rs_optimal_profile(const rs_metric* m, rs_point a, rs_point b,
                                    const rs_solution* sol, rs_profile** out);
RS_API rs_status rs_solution_to_json(const rs_solution* s, char* buf, size_t cap, size_t* needed);

typedef struct rs_truncation {
  double v;
  double value;
  double second_derivative;
  double search_v;
  double search_value;
  double fd_second_derivative;
} rs_truncation;

RS_API rs_status rs_optimal_truncation(const rs_metric* m, rs_point a, rs_point b,
                                       rs_truncation* out);

RS_API rs_status rs_brute_force_min(double delta_v, double L, int n_cells, int slope_grid,
                                    double p_max, double* value, double* budget_slack);

typedef struct rs_oscillation_point {
  int m;
  double resistance;
  double closed_form;
} rs_oscillation_point;

/* out must hold count entries; m values must be odd */
RS_API rs_status rs_oscillation_demo(const rs_metric* m, double u0, double u1, const int* m_list,
                                     size_t count, rs_oscillation_point* out);

/* ---- Monte-Carlo ----------------------------------------------------- */

typedef struct rs_sim_result {
  double estimate;
  double std_error;
  uint64_t n;
  uint64_t seed;
  uint64_t sic_violations;
} rs_sim_result;

/* impacts_csv may be NULL; otherwise per-impact "v,transfer" rows are written */
RS_API rs_status rs_simulate(const rs_profile* p, uint64_t n_particles, uint64_t seed,
                             unsigned threads, const char* impacts_csv, rs_sim_result* out);
RS_API rs_status rs_sim_result_to_json(const rs_sim_result* r, char* buf, size_t cap,
                                       size_t* needed);
RS_API const char* rs_rng_algorithm(void);

#ifdef __cplusplus
}
#endif

#endif /* RESIST_RESIST_H */
