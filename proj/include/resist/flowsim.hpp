#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resist/curve.hpp"

namespace resist {

/// Tangent vector with components in the coordinate frame (Psi_u, Psi_v).
struct FrameVector {
  double du = 0.0;
  double dv = 0.0;
};

/// <a, b> = a_u b_u + f(u)^2 a_v b_v.
double metric_inner(const Metric& m, double u, FrameVector a, FrameVector b);

/// Unit outward normal (v' f Psi_u - (u'/f) Psi_v) / |gamma'| of a curve with
/// tangent (du, dv) at radius u.
FrameVector outward_normal(const Metric& m, double u, double du, double dv);

/// Elastic reflection v_f = v_i - 2 <v_i, N> N. Throws InvalidArgument when
/// |N| differs from 1 by more than 1e-9.
FrameVector reflect(const Metric& m, double u, FrameVector v_i, FrameVector n);

/// Momentum transferred against the flow, <v_f - v_i, -v_i>.
double momentum_transfer(const Metric& m, double u, FrameVector v_i, FrameVector v_f);

struct ImpactSample {
  double v_coord;
  GeodesicPoint impact_point;
  FrameVector normal;
  double transfer;
};

inline constexpr std::string_view kRngAlgorithm = "mt19937_64/seed_seq-batch";
inline constexpr std::size_t kBatchSize = std::size_t{1} << 16;

struct SimulationOptions {
  std::size_t n_particles = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool record_impacts = false;
};

struct SimulationResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t sic_violations = 0;
  std::vector<ImpactSample> impacts;  // filled when record_impacts is set
};

/// Monte-Carlo resistance: particles arrive along -Psi_u on meridians drawn
/// uniformly in v, reflect elastically once, and the mean transfer times
/// delta_v / 2 estimates the functional. A particle whose reflected velocity
/// points to smaller u counts as a single-impact violation. The result is
/// bit-identical for a given seed whatever the thread count.
/// Throws InvalidArgument for non-monotone profiles.
SimulationResult simulate(const Profile& p, const SimulationOptions& opts);

/// {"estimate", "std_error", "n", "seed", "sic_violations", "rng"}.
std::string to_json(const SimulationResult& r);

void write_impacts_csv(std::ostream& os, std::span<const ImpactSample> impacts);

}  // namespace resist
