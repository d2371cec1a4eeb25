#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace resist::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double u = 0.0;
  double v = 0.0;
  bool operator==(const Point&) const = default;
};

using Range = std::array<double, 2>;

/// Everything a single command invocation needs. Unset fields fall back to
/// per-command defaults at execution time.
struct RunConfig {
  std::string command;
  std::optional<std::string> metric;
  std::optional<std::string> warp_table;
  std::optional<std::string> profile;
  std::optional<Point> from;
  std::optional<Point> to;
  std::optional<double> k;
  std::optional<double> v_end;
  std::optional<double> u;
  std::optional<double> v0;
  std::optional<double> v_c;
  std::optional<double> delta_v;
  std::optional<double> amplitude;
  std::optional<double> p_max;
  std::optional<Range> v_range;
  std::optional<Range> u_range;
  std::optional<int> branch;
  std::optional<int> m_index;
  std::optional<std::vector<int>> m_list;
  std::optional<int> n_cells;
  std::optional<int> grid;
  std::optional<int> samples;
  std::optional<std::uint64_t> n_particles;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> figure;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  std::optional<std::string> impacts_csv;
  std::optional<std::string> out_dir;

  bool operator==(const RunConfig&) const = default;
};

/// Real literal: decimal, "a/b", "pi", "pi/3", "2pi/3", "-3*pi/4".
double parse_scalar(std::string_view text);
/// "u,v" with each coordinate a scalar literal.
Point parse_point(std::string_view text);
Range parse_range(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

nlohmann::json to_json(const RunConfig& c);
/// Strict: unknown keys and ill-typed values raise ConfigError. Scalars may
/// be JSON numbers or literal strings; points and ranges may be two-element
/// arrays or "a,b" strings.
RunConfig from_json(const nlohmann::json& j);
std::string canonical(const RunConfig& c);
RunConfig load_config(const std::string& path);

/// Fields set in `over` replace those in `base`.
RunConfig merge(const RunConfig& base, const RunConfig& over);

}  // namespace resist::cli
