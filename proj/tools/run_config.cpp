#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace resist::cli {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_decimal(std::string_view s, std::string_view whole) {
  s = trim(s);
  double x = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("not a number: '" + std::string(whole) + "'");
  return x;
}

bool consume_pi(std::string_view& s) {
  for (std::string_view tok : {std::string_view("pi"), std::string_view("PI"),
                               std::string_view("\xCF\x80")}) {
    if (s.ends_with(tok)) {
      s.remove_suffix(tok.size());
      return true;
    }
  }
  return false;
}

std::pair<std::string_view, std::string_view> split_comma(std::string_view text) {
  const auto pos = text.find(',');
  if (pos == std::string_view::npos || text.find(',', pos + 1) != std::string_view::npos)
    throw ConfigError("expected two comma-separated values: '" + std::string(text) + "'");
  return {text.substr(0, pos), text.substr(pos + 1)};
}

double scalar_of(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_scalar(v.get<std::string>());
  throw ConfigError("'" + key + "' must be a number or numeric literal");
}

std::array<double, 2> pair_of(const json& v, const std::string& key) {
  if (v.is_array() && v.size() == 2) return {scalar_of(v[0], key), scalar_of(v[1], key)};
  if (v.is_string()) return parse_range(v.get<std::string>());
  throw ConfigError("'" + key + "' must be a two-element array or \"a,b\" string");
}

long long integer_of(const json& v, const std::string& key) {
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::nearbyint(d) == d && std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return out;
  }
  throw ConfigError("'" + key + "' must be an integer");
}

std::uint64_t unsigned_of(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return out;
  }
  const long long i = integer_of(v, key);
  if (i < 0) throw ConfigError("'" + key + "' must be non-negative");
  return static_cast<std::uint64_t>(i);
}

int int_of(const json& v, const std::string& key) {
  const long long i = integer_of(v, key);
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max())
    throw ConfigError("'" + key + "' out of range");
  return static_cast<int>(i);
}

std::string string_of(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

double parse_scalar(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ConfigError("empty numeric literal");

  std::string_view num = s;
  std::string_view den;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num = trim(s.substr(0, slash));
    den = trim(s.substr(slash + 1));
    if (den.empty()) throw ConfigError("missing denominator: '" + std::string(text) + "'");
  }

  double sign = 1.0;
  if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
    if (num.front() == '-') sign = -1.0;
    num = trim(num.substr(1));
  }
  const bool has_pi = consume_pi(num);
  num = trim(num);
  if (has_pi && num.ends_with('*')) num = trim(num.substr(0, num.size() - 1));

  double coeff = 1.0;
  if (!num.empty()) {
    if (num.front() == '-' || num.front() == '+')
      throw ConfigError("not a number: '" + std::string(text) + "'");
    coeff = parse_decimal(num, text);
  } else if (!has_pi) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }

  double value = has_pi ? coeff * std::numbers::pi : coeff;
  if (!den.empty()) {
    const double d = parse_decimal(den, text);
    if (d == 0.0) throw ConfigError("zero denominator: '" + std::string(text) + "'");
    value /= d;
  }
  value *= sign;
  if (!std::isfinite(value)) throw ConfigError("non-finite value: '" + std::string(text) + "'");
  return value;
}

Point parse_point(std::string_view text) {
  const auto [a, b] = split_comma(text);
  return {parse_scalar(a), parse_scalar(b)};
}

Range parse_range(std::string_view text) {
  const auto [a, b] = split_comma(text);
  return {parse_scalar(a), parse_scalar(b)};
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (true) {
    const auto pos = rest.find(',');
    std::string_view tok = trim(rest.substr(0, pos));
    int x = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ConfigError("not an integer list: '" + std::string(text) + "'");
    out.push_back(x);
    if (pos == std::string_view::npos) break;
    rest = rest.substr(pos + 1);
  }
  return out;
}

json to_json(const RunConfig& c) {
  json j = json::object();
  j["command"] = c.command;
  auto put = [&j](const char* key, const auto& field) {
    if (field) j[key] = *field;
  };
  auto put_point = [&j](const char* key, const std::optional<Point>& p) {
    if (p) j[key] = json::array({p->u, p->v});
  };
  put("metric", c.metric);
  put("warp_table", c.warp_table);
  put("profile", c.profile);
  put_point("from", c.from);
  put_point("to", c.to);
  put("k", c.k);
  put("v_end", c.v_end);
  put("u", c.u);
  put("v0", c.v0);
  put("v_c", c.v_c);
  put("delta_v", c.delta_v);
  put("L", c.amplitude);
  put("p_max", c.p_max);
  put("v_range", c.v_range);
  put("u_range", c.u_range);
  put("branch", c.branch);
  put("m_index", c.m_index);
  put("m_list", c.m_list);
  put("n_cells", c.n_cells);
  put("grid", c.grid);
  put("samples", c.samples);
  put("n_particles", c.n_particles);
  put("seed", c.seed);
  put("threads", c.threads);
  put("figure", c.figure);
  put("csv", c.csv);
  put("svg", c.svg);
  put("impacts_csv", c.impacts_csv);
  put("out_dir", c.out_dir);
  return j;
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  using Setter = std::function<void(RunConfig&, const json&, const std::string&)>;
  const auto point = [](std::optional<Point> RunConfig::*f) -> Setter {
    return [f](RunConfig& c, const json& v, const std::string& k) {
      const auto p = pair_of(v, k);
      c.*f = Point{p[0], p[1]};
    };
  };
  const auto real = [](std::optional<double> RunConfig::*f) -> Setter {
    return [f](RunConfig& c, const json& v, const std::string& k) { c.*f = scalar_of(v, k); };
  };
  const auto range = [](std::optional<Range> RunConfig::*f) -> Setter {
    return [f](RunConfig& c, const json& v, const std::string& k) { c.*f = pair_of(v, k); };
  };
  const auto integer = [](std::optional<int> RunConfig::*f) -> Setter {
    return [f](RunConfig& c, const json& v, const std::string& k) { c.*f = int_of(v, k); };
  };
  const auto text = [](std::optional<std::string> RunConfig::*f) -> Setter {
    return [f](RunConfig& c, const json& v, const std::string& k) { c.*f = string_of(v, k); };
  };
  const std::map<std::string, Setter> setters = {
      {"command", [](RunConfig& c, const json& v, const std::string& k) {
         c.command = string_of(v, k);
       }},
      {"metric", text(&RunConfig::metric)},
      {"warp_table", text(&RunConfig::warp_table)},
      {"profile", text(&RunConfig::profile)},
      {"from", point(&RunConfig::from)},
      {"to", point(&RunConfig::to)},
      {"k", real(&RunConfig::k)},
      {"v_end", real(&RunConfig::v_end)},
      {"u", real(&RunConfig::u)},
      {"v0", real(&RunConfig::v0)},
      {"v_c", real(&RunConfig::v_c)},
      {"delta_v", real(&RunConfig::delta_v)},
      {"L", real(&RunConfig::amplitude)},
      {"p_max", real(&RunConfig::p_max)},
      {"v_range", range(&RunConfig::v_range)},
      {"u_range", range(&RunConfig::u_range)},
      {"branch", integer(&RunConfig::branch)},
      {"m_index", integer(&RunConfig::m_index)},
      {"m_list", [](RunConfig& c, const json& v, const std::string& k) {
         if (v.is_string()) {
           c.m_list = parse_int_list(v.get<std::string>());
           return;
         }
         if (!v.is_array()) throw ConfigError("'" + k + "' must be an array of integers");
         std::vector<int> out;
         for (const auto& x : v) out.push_back(int_of(x, k));
         c.m_list = std::move(out);
       }},
      {"n_cells", integer(&RunConfig::n_cells)},
      {"grid", integer(&RunConfig::grid)},
      {"samples", integer(&RunConfig::samples)},
      {"n_particles", [](RunConfig& c, const json& v, const std::string& k) {
         c.n_particles = unsigned_of(v, k);
       }},
      {"seed", [](RunConfig& c, const json& v, const std::string& k) {
         c.seed = unsigned_of(v, k);
       }},
      {"threads", [](RunConfig& c, const json& v, const std::string& k) {
         const auto t = unsigned_of(v, k);
         if (t > std::numeric_limits<unsigned>::max()) throw ConfigError("'threads' out of range");
         c.threads = static_cast<unsigned>(t);
       }},
      {"figure", text(&RunConfig::figure)},
      {"csv", text(&RunConfig::csv)},
      {"svg", text(&RunConfig::svg)},
      {"impacts_csv", text(&RunConfig::impacts_csv)},
      {"out_dir", text(&RunConfig::out_dir)},
  };
  for (const auto& [key, value] : j.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(c, value, key);
  }
  return c;
}

std::string canonical(const RunConfig& c) { return to_json(c).dump(); }

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed config '" + path + "': " + e.what());
  }
  return from_json(j);
}

RunConfig merge(const RunConfig& base, const RunConfig& over) {
  json j = to_json(base);
  const json patch = to_json(over);
  for (const auto& [key, value] : patch.items()) {
    if (key == "command" && value.get<std::string>().empty()) continue;
    j[key] = value;
  }
  return from_json(j);
}

}  // namespace resist::cli
