#include "resist/flowsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

#include "json.hpp"
#include "resist/errors.hpp"
#include "resist/quadrature.hpp"
#include "resist/resistance.hpp"

namespace resist {

namespace {

constexpr double kUnitTol = 1e-9;
constexpr double kSicTol = 1e-9;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

double metric_inner(const Metric& m, double u, FrameVector a, FrameVector b) {
  const double f = m.warp(u);
  return a.du * b.du + f * f * a.dv * b.dv;
}

FrameVector outward_normal(const Metric& m, double u, double du, double dv) {
  const double f = m.warp(u);
  const double norm = std::sqrt(du * du + dv * dv * f * f);
  if (!(norm > 0.0)) throw InvalidArgument("normal of a zero tangent");
  return {dv * f / norm, -du / (f * norm)};
}

FrameVector reflect(const Metric& m, double u, FrameVector v_i, FrameVector n) {
  const double nn = metric_inner(m, u, n, n);
  if (std::abs(nn - 1.0) > kUnitTol) {
    throw InvalidArgument("reflection normal is not a unit vector (|N|^2 = " +
                          std::to_string(nn) + ")");
  }
  const double c = 2.0 * metric_inner(m, u, v_i, n);
  return {v_i.du - c * n.du, v_i.dv - c * n.dv};
}

double momentum_transfer(const Metric& m, double u, FrameVector v_i, FrameVector v_f) {
  return metric_inner(m, u, {v_f.du - v_i.du, v_f.dv - v_i.dv}, {-v_i.du, -v_i.dv});
}

SimulationResult simulate(const Profile& p, const SimulationOptions& opts) {
  if (opts.n_particles < 2) throw InvalidArgument("simulation needs at least 2 particles");
  if (!is_monotone_nondecreasing(p, 1000, 1e-9)) {
    throw InvalidArgument("simulation needs a monotone profile (u' >= 0)");
  }
  const Metric& m = p.metric();
  const std::size_t n = opts.n_particles;
  const std::size_t n_batches = (n + kBatchSize - 1) / kBatchSize;
  const double v0 = p.v_begin();
  const double dv = p.delta_v();
  const FrameVector incoming{-1.0, 0.0};

  std::vector<double> transfer(n);
  std::vector<std::size_t> sic(n_batches, 0);
  std::vector<ImpactSample> impacts(opts.record_impacts ? n : 0);

  auto run_batch = [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(opts.seed >> 32), static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    const std::size_t end = std::min(n, (b + 1) * kBatchSize);
    for (std::size_t i = b * kBatchSize; i < end; ++i) {
      const double v = v0 + dv * uniform01(rng);
      const auto& piece = p.piece_at(v);
      const double u = piece.u(v);
      const double up = piece.du(v);
      if (up < -kSicTol) throw InvalidArgument("simulation hit a decreasing stretch of the profile");
      const FrameVector normal = outward_normal(m, u, up, 1.0);
      const FrameVector out = reflect(m, u, incoming, normal);
      transfer[i] = momentum_transfer(m, u, incoming, out);
      if (out.du < -kSicTol) ++sic[b];
      if (opts.record_impacts) impacts[i] = {v, {u, v}, normal, transfer[i]};
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, n_batches));
  if (threads == 1) {
    for (std::size_t b = 0; b < n_batches; ++b) run_batch(b);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t b = t; b < n_batches; b += threads) run_batch(b);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const double mean = pairwise_sum(transfer) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (transfer[i] - mean) * (transfer[i] - mean);
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);

  SimulationResult r;
  r.estimate = 0.5 * dv * mean;
  r.std_error = 0.5 * dv * std::sqrt(var / static_cast<double>(n));
  r.n = n;
  r.seed = opts.seed;
  for (auto c : sic) r.sic_violations += c;
  r.impacts = std::move(impacts);
  return r;
}

std::string to_json(const SimulationResult& r) {
  nlohmann::json j;
  j["estimate"] = round_significant(r.estimate);
  j["std_error"] = round_significant(r.std_error);
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["sic_violations"] = r.sic_violations;
  j["rng"] = std::string(kRngAlgorithm);
  return j.dump();
}

void write_impacts_csv(std::ostream& os, std::span<const ImpactSample> impacts) {
  os << "v,transfer\n";
  char buf[64];
  for (const auto& s : impacts) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", s.v_coord, s.transfer);
    os << buf;
  }
}

}  // namespace resist
