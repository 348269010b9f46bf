#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "shiftlab/dimension/scale_grid.hpp"
#include "shiftlab/measures/model.hpp"

namespace shiftlab::cli {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Malformed or out-of-range configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::optional<unsigned> workers;
  MeasureModel model = MeasureModel::bernoulli({0.5, 0.5});
  json model_spec = {{"type", "bernoulli"}, {"probs", {0.5, 0.5}}};
  std::optional<ScaleGrid> grid;  // command default when absent
  std::size_t budget = 4000;
  std::uint64_t horizon = 10000000;
  double tol = 1e-6;
  std::size_t points = 30;
  double trim = 0.05;
  bool check_galatolo = true;
  std::size_t period = 8;
  std::vector<std::size_t> periods{8, 32, 128};
  std::vector<double> etas{0.1, 0.01, 0.001};
  std::vector<double> block{0.1, 0.35, 0.6, 0.85};
  std::size_t replicates = 30;
  std::optional<ScaleGrid> dim_grid;
  std::optional<ScaleGrid> rate_grid;
  std::optional<ScaleGrid> profile_grid;
  std::size_t profile_points = 5;
  std::string out_dir = "shiftlab-out";
};

namespace detail {

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("missing or mistyped '" + key + "' in " + where);
  }
}

inline std::uint64_t get_count(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ConfigError("'" + key + "' in " + where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

inline AlphabetSpec parse_alphabet(const json& j) {
  reject_unknown(j, {"kind", "size"}, "alphabet");
  const auto kind = get<std::string>(j, "kind", "alphabet");
  if (kind == "unit-interval") return AlphabetSpec::unit_interval();
  if (kind == "finite") return AlphabetSpec::finite(get_count(j, "size", "alphabet"));
  throw ConfigError("alphabet kind must be 'unit-interval' or 'finite'");
}

inline WrapMode parse_wrap(const std::string& s) {
  if (s == "reflect") return WrapMode::reflect;
  if (s == "clamp") return WrapMode::clamp;
  throw ConfigError("wrap must be 'reflect' or 'clamp'");
}

}  // namespace detail

/// Model description:
///   {"type":"bernoulli","probs":[...]} | {"type":"bernoulli-uniform"}
///   {"type":"periodic","alphabet":{...},"block":[...],"distinct":bool}
///   {"type":"noisy","block":[...],"noise_width":x,"wrap":"reflect"|"clamp"}
///   {"type":"mixture","weights":[...],"components":[model, ...]}
inline MeasureModel parse_model(const json& j) {
  if (!j.is_object()) throw ConfigError("model must be a JSON object");
  const auto type = detail::get<std::string>(j, "type", "model");
  try {
    if (type == "bernoulli") {
      detail::reject_unknown(j, {"type", "probs"}, "bernoulli model");
      return MeasureModel::bernoulli(detail::get<std::vector<double>>(j, "probs", "bernoulli model"));
    }
    if (type == "bernoulli-uniform") {
      detail::reject_unknown(j, {"type"}, "bernoulli-uniform model");
      return MeasureModel::bernoulli_uniform();
    }
    if (type == "periodic") {
      detail::reject_unknown(j, {"type", "alphabet", "block", "distinct"}, "periodic model");
      const AlphabetSpec a = j.contains("alphabet") ? detail::parse_alphabet(j["alphabet"]) : AlphabetSpec::unit_interval();
      return MeasureModel::periodic(a, detail::get<std::vector<double>>(j, "block", "periodic model"),
                                    j.value("distinct", false));
    }
    if (type == "noisy") {
      detail::reject_unknown(j, {"type", "block", "noise_width", "wrap"}, "noisy model");
      return MeasureModel::noisy(detail::get<std::vector<double>>(j, "block", "noisy model"),
                                 detail::get<double>(j, "noise_width", "noisy model"),
                                 detail::parse_wrap(j.value("wrap", std::string("reflect"))));
    }
    if (type == "mixture") {
      detail::reject_unknown(j, {"type", "weights", "components"}, "mixture model");
      std::vector<MeasureModel> comps;
      const json& cs = j.at("components");
      if (!cs.is_array()) throw ConfigError("mixture components must be an array");
      for (const auto& c : cs) comps.push_back(parse_model(c));
      return MeasureModel::mixture(detail::get<std::vector<double>>(j, "weights", "mixture model"), std::move(comps));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }
  throw ConfigError("unknown model type '" + type + "'");
}

inline ScaleGrid validated_grid(const ScaleGrid& g) {
  try {
    g.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid grid: ") + e.what());
  }
  return g;
}

inline ScaleGrid parse_grid(const json& j, const std::string& where) {
  detail::reject_unknown(j, {"eps0", "q", "count", "s_index"}, where);
  ScaleGrid g;
  g.eps0 = detail::get<double>(j, "eps0", where);
  g.q = j.contains("q") ? detail::get<double>(j, "q", where) : 0.5;
  g.count = detail::get_count(j, "count", where);
  g.s_index = j.contains("s_index") ? detail::get_count(j, "s_index", where) : 0;
  return validated_grid(g);
}

/// "eps0,q,J,s" from the --grid flag.
inline ScaleGrid parse_grid_flag(const std::string& text) {
  std::stringstream ss(text);
  std::string item;
  std::vector<std::string> parts;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("--grid expects eps0,q,J,s");
  try {
    ScaleGrid g;
    std::size_t used = 0;
    g.eps0 = std::stod(parts[0], &used);
    g.q = std::stod(parts[1]);
    const long long count = std::stoll(parts[2]);
    const long long s = std::stoll(parts[3]);
    if (count < 0 || s < 0) throw ConfigError("--grid counts must be non-negative");
    g.count = static_cast<std::size_t>(count);
    g.s_index = static_cast<std::size_t>(s);
    return validated_grid(g);
  } catch (const std::logic_error&) {
    throw ConfigError("--grid expects numbers: eps0,q,J,s");
  }
}

inline void validate(const RunConfig& c) {
  if (c.budget < 1) throw ConfigError("budget must be at least 1");
  if (c.horizon < 1) throw ConfigError("horizon must be at least 1");
  if (!(c.tol > 0.0 && c.tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (!(c.trim >= 0.0 && c.trim < 0.5)) throw ConfigError("trim must lie in [0, 0.5)");
  if (c.points < 1) throw ConfigError("points must be at least 1");
  if (c.command == "estimate-dim" && c.points < 30) throw ConfigError("estimate-dim needs points >= 30");
  if (c.period < 1) throw ConfigError("period must be at least 1");
  if (c.replicates < 1) throw ConfigError("replicates must be at least 1");
  for (std::size_t s : c.periods)
    if (s < 1) throw ConfigError("periods must be at least 1");
  for (double e : c.etas)
    if (!(e >= 0.0 && e < 1.0)) throw ConfigError("etas must lie in [0, 1)");
  if (c.block.empty()) throw ConfigError("block must be non-empty");
  for (double b : c.block)
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigError("block symbols must lie in [0, 1]");
  if (c.workers && *c.workers < 1) throw ConfigError("workers must be at least 1");
  if (c.grid) {
    validated_grid(*c.grid);
    if ((c.command == "recurrence" || c.command == "waiting") && !(c.grid->eps0 < 1.0))
      throw ConfigError("rate grids need eps0 < 1");
  }
}

inline RunConfig parse_config(const json& j, const std::string& command) {
  detail::reject_unknown(j, {"schema_version", "command", "seed", "workers", "model", "grid", "budget", "horizon",
                             "tol", "points", "trim", "check_galatolo", "period", "periods", "etas", "block",
                             "replicates", "dim_grid", "rate_grid", "profile_grid", "profile_points", "out_dir"},
                         "config");
  RunConfig c;
  c.command = command;
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
    throw ConfigError("unsupported schema_version (expected " + std::string(kSchemaVersion) + ")");
  if (j.contains("command") && j["command"] != command)
    throw ConfigError("config is for command '" + j["command"].dump() + "', not '" + command + "'");
  try {
    if (j.contains("seed")) c.seed = detail::get_count(j, "seed", "config");
    if (j.contains("workers")) c.workers = static_cast<unsigned>(detail::get_count(j, "workers", "config"));
    if (j.contains("model")) {
      c.model = parse_model(j["model"]);
      c.model_spec = j["model"];
    }
    if (j.contains("grid")) c.grid = parse_grid(j["grid"], "grid");
    if (j.contains("budget")) c.budget = detail::get_count(j, "budget", "config");
    if (j.contains("horizon")) c.horizon = detail::get_count(j, "horizon", "config");
    if (j.contains("tol")) c.tol = detail::get<double>(j, "tol", "config");
    if (j.contains("points")) c.points = detail::get_count(j, "points", "config");
    if (j.contains("trim")) c.trim = detail::get<double>(j, "trim", "config");
    if (j.contains("check_galatolo")) c.check_galatolo = detail::get<bool>(j, "check_galatolo", "config");
    if (j.contains("period")) c.period = detail::get_count(j, "period", "config");
    if (j.contains("periods")) c.periods = detail::get<std::vector<std::size_t>>(j, "periods", "config");
    if (j.contains("etas")) c.etas = detail::get<std::vector<double>>(j, "etas", "config");
    if (j.contains("block")) c.block = detail::get<std::vector<double>>(j, "block", "config");
    if (j.contains("replicates")) c.replicates = detail::get_count(j, "replicates", "config");
    if (j.contains("dim_grid")) c.dim_grid = parse_grid(j["dim_grid"], "dim_grid");
    if (j.contains("rate_grid")) c.rate_grid = parse_grid(j["rate_grid"], "rate_grid");
    if (j.contains("profile_grid")) c.profile_grid = parse_grid(j["profile_grid"], "profile_grid");
    if (j.contains("profile_points")) c.profile_points = detail::get_count(j, "profile_points", "config");
    if (j.contains("out_dir")) c.out_dir = detail::get<std::string>(j, "out_dir", "config");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return c;
}

inline RunConfig load_config(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j, command);
}

/// Worker count: explicit flag, then config, then SHIFTLAB_WORKERS, then 1.
inline unsigned resolve_workers(std::optional<unsigned> flag, const RunConfig& c) {
  if (flag) return *flag;
  if (c.workers) return *c.workers;
  if (const char* env = std::getenv("SHIFTLAB_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::logic_error&) {
    }
    throw ConfigError("SHIFTLAB_WORKERS must be a positive integer");
  }
  return 1;
}

}  // namespace shiftlab::cli
