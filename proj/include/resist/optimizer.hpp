#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resist/curve.hpp"

namespace resist {

/// Lower convex envelope of g(p) = 1/(1+p^2) on [0, inf): the tangent line
/// 1 - p/2 on [0, 1], g itself beyond.
double convex_envelope(double p);

/// delta_v * g**(L / delta_v), a lower bound for every monotone profile.
double jensen_lower_bound(double delta_v, double L);

enum class MinimizerKind { loxodrome, truncated };

std::string_view to_string(MinimizerKind k);

struct MinimizerSolution {
  MinimizerKind kind = MinimizerKind::loxodrome;
  double k = 0.0;           // phi-slope of the loxodromic part (1 when truncated)
  double junction_V = 0.0;  // v where the parallel starts (truncated kind)
  double optimal_value = 0.0;
  double lower_bound = 0.0;
  double L = 0.0;
  double delta_v = 0.0;
};

/// Global minimizer among monotone profiles from A to B. Loxodrome when
/// delta_v <= L, truncated loxodrome with junction v0 + L otherwise.
/// u0 == u1 gives the parallel (truncated kind, L = 0).
MinimizerSolution classify(const Metric& m, GeodesicPoint a, GeodesicPoint b);

/// The profile realising `sol`.
Profile optimal_profile(const Metric& m, GeodesicPoint a, GeodesicPoint b,
                        const MinimizerSolution& sol);

/// {"kind", "k", "V", "optimal_value", "lower_bound"}; V is null for the
/// loxodrome kind.
std::string to_json(const MinimizerSolution& s);

struct GoldenSectionResult {
  double x;
  double value;
  int iterations;
};

/// Golden-section search for the minimum of a unimodal `f` on [a, b],
/// stopping when the bracket is shorter than `tol`.
GoldenSectionResult golden_section_minimize(const std::function<double(double)>& f, double a,
                                            double b, double tol = 1e-10);

/// Resistance of the truncated loxodrome with junction v_c, by quadrature.
double truncation_resistance(const Metric& m, GeodesicPoint a, GeodesicPoint b, double v_c);

struct TruncationResult {
  double V;                  // v0 + L
  double value;              // delta_v - L/2
  double second_derivative;  // 1/(2L)
  double search_V;           // golden-section minimiser of truncation_resistance
  double search_value;
  double fd_second_derivative;  // central difference of truncation_resistance at V
};

/// Requires delta_v > L > 0.
TruncationResult optimal_truncation(const Metric& m, GeodesicPoint a, GeodesicPoint b);

struct BruteForceResult {
  double value;
  /// Worst-case amount by which rounding the budget up to whole quanta can
  /// push `value` below the continuous bound (half a quantum).
  double budget_slack;
  long budget_units;
};

/// Discrete oracle: minimises (delta_v/n) sum g(p_i) over per-cell slopes
/// p_i in {0, d, ..., p_max} (d = p_max / slope_grid) whose total
/// sum p_i delta_v / n is the smallest whole number of quanta >= L.
BruteForceResult brute_force_min(double delta_v, double L, int n_cells, int slope_grid,
                                 double p_max);

struct OscillationPoint {
  int m;
  double resistance;
  double closed_form;  // pi / (2 sqrt(1 + m^2 L^2))
};

/// Resistance of the oscillating profiles on [0, pi/2] for each odd m.
std::vector<OscillationPoint> oscillation_infimum_demo(const Metric& m, double u0, double u1,
                                                       std::span<const int> m_list);

}  // namespace resist
