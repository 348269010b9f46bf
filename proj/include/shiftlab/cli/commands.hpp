#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "shiftlab/cli/config.hpp"
#include "shiftlab/cli/json_io.hpp"
#include "shiftlab/genericity/experiments.hpp"
#include "shiftlab/verify/suites.hpp"

namespace shiftlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDegraded = 2 };

/// Fraction of censored estimates above which a run is reported degraded.
inline constexpr double kDegradedFraction = 0.2;

struct CommandResult {
  json payload;    // written to <command>.json
  std::string csv; // written to <command>.csv
  bool degraded = false;
};

namespace detail {

inline LocalDimOptions local_options(const RunConfig& c) {
  LocalDimOptions o;
  o.tol = c.tol;
  o.budget = c.budget;
  return o;
}

inline json config_echo(const RunConfig& c, const ScaleGrid* grid) {
  json j = {{"model", c.model_spec}, {"budget", c.budget}, {"horizon", c.horizon}, {"tol", num(c.tol)}};
  if (grid) j["grid"] = to_json(*grid);
  return j;
}

inline ScaleGrid grid_or(const RunConfig& c, const ScaleGrid& fallback) { return c.grid.value_or(fallback); }

inline const ScaleGrid kDimGrid = ScaleGrid::dyadic(4, 14, 2);
inline const ScaleGrid kRateGrid{0.0625, 0.5, 8, 4};

}  // namespace detail

inline CommandResult cmd_estimate_dim(const RunConfig& c, unsigned workers) {
  const ScaleGrid grid = detail::grid_or(c, detail::kDimGrid);
  MeasureDimsOptions opts{detail::local_options(c), c.trim, workers};
  const DimensionReport r = measure_dims(c.model, c.points, grid, opts, c.seed);
  CommandResult out;
  out.payload = {{"config", detail::config_echo(c, &grid)}, {"report", to_json(r)}};
  CsvTable csv({"seed", "point", "point_seed", "grid_index", "eps", "mass", "ci_low", "ci_high", "log_mass", "quotient",
                "slope", "method", "censored"});
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const LocalDimEstimate& e = r.samples[i];
    for (std::size_t j = 0; j < e.scales.size(); ++j) {
      const BallMassEstimate& m = e.masses[j];
      csv.row(c.seed, i, r.point_seeds[i], j, e.scales[j], m.mean, m.ci_low, m.ci_high, m.log_mean, e.quotients[j],
              e.slopes[j], to_string(m.method), m.censored);
    }
  }
  out.csv = csv.str();
  out.degraded = r.unreliable;
  return out;
}

namespace detail {

inline void rate_rows(CsvTable& csv, std::uint64_t seed, std::size_t index, const RateEstimate& r, double target) {
  for (std::size_t j = 0; j < r.scales.size(); ++j)
    csv.row(seed, index, j, r.scales[j], r.times[j].value, r.times[j].censored, r.rates[j], target, "orbit-scan");
}

inline bool has_censored_admissible(const RateEstimate& r, const ScaleGrid& g) {
  for (std::size_t j = g.s_index; j < r.times.size(); ++j)
    if (r.times[j].censored) return true;
  return false;
}

}  // namespace detail

inline CommandResult cmd_recurrence(const RunConfig& c, unsigned workers) {
  const ScaleGrid grid = detail::grid_or(c, detail::kRateGrid);
  const auto rates = parallel_map(c.points, workers, [&](std::size_t i) {
    return recurrence_rates(sample_point(c.model, point_seed(c.seed, i)), grid, c.horizon);
  });
  CommandResult out;
  json items = json::array();
  std::vector<double> lowers, uppers;
  std::size_t censored = 0;
  CsvTable csv({"seed", "point", "grid_index", "eps", "tau", "censored", "rate", "target_quotient", "method"});
  for (std::size_t i = 0; i < rates.size(); ++i) {
    json e = to_json(rates[i]);
    e["point_seed"] = point_seed(c.seed, i);
    items.push_back(std::move(e));
    lowers.push_back(rates[i].lower);
    uppers.push_back(rates[i].upper);
    censored += detail::has_censored_admissible(rates[i], grid) ? 1 : 0;
    detail::rate_rows(csv, c.seed, i, rates[i], std::numeric_limits<double>::quiet_NaN());
  }
  const double frac = static_cast<double>(censored) / static_cast<double>(rates.size());
  out.payload = {{"config", detail::config_echo(c, &grid)},
                 {"estimates", items},
                 {"summary",
                  {{"median_lower", num(median(lowers))},
                   {"median_upper", num(median(uppers))},
                   {"max_upper", num(*std::max_element(uppers.begin(), uppers.end()))},
                   {"censored_fraction", num(frac)}}}};
  out.csv = csv.str();
  out.degraded = frac > kDegradedFraction;
  return out;
}

/// Pairs (x, y) of independent mu-points; the waiting rate of x into y is
/// compared with the lower dimension quotient at y.
inline CommandResult cmd_waiting(const RunConfig& c, unsigned workers) {
  const ScaleGrid grid = detail::grid_or(c, detail::kRateGrid);
  struct PairOutcome {
    RateEstimate rate;
    double target = std::numeric_limits<double>::quiet_NaN();
  };
  const auto pairs = parallel_map(c.points, workers, [&](std::size_t i) {
    const BilateralSequence x = sample_point(c.model, point_seed(c.seed, 2 * i));
    const BilateralSequence y = sample_point(c.model, point_seed(c.seed, 2 * i + 1));
    PairOutcome o{waiting_rates(x, y, grid, c.horizon)};
    if (c.check_galatolo)
      o.target = local_dims(c.model, y, grid, detail::local_options(c), derive_seed(c.seed, stream::replicate, i)).quotient_lower;
    return o;
  });
  CommandResult out;
  json items = json::array();
  std::vector<double> lowers;
  std::size_t censored = 0, violations = 0;
  CsvTable csv({"seed", "pair", "grid_index", "eps", "tau", "censored", "rate", "target_quotient", "method"});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairOutcome& p = pairs[i];
    json e = to_json(p.rate);
    e["x_seed"] = point_seed(c.seed, 2 * i);
    e["y_seed"] = point_seed(c.seed, 2 * i + 1);
    e["target_lower_quotient"] = num(p.target);
    const bool violated = c.check_galatolo && p.rate.lower < p.target - 0.3;
    e["galatolo_violation"] = violated;
    items.push_back(std::move(e));
    lowers.push_back(p.rate.lower);
    censored += detail::has_censored_admissible(p.rate, grid) ? 1 : 0;
    violations += violated ? 1 : 0;
    detail::rate_rows(csv, c.seed, i, p.rate, p.target);
  }
  const double n = static_cast<double>(pairs.size());
  const double violation_fraction = c.check_galatolo ? static_cast<double>(violations) / n : std::nan("");
  csv.row(c.seed, "summary", -1, std::nan(""), 0, false, violation_fraction, std::nan(""), "galatolo-violation-fraction");
  out.payload = {{"config", detail::config_echo(c, &grid)},
                 {"estimates", items},
                 {"summary",
                  {{"median_lower", num(median(lowers))},
                   {"censored_fraction", num(static_cast<double>(censored) / n)},
                   {"galatolo_violation_fraction", num(violation_fraction)}}}};
  out.csv = csv.str();
  out.degraded = static_cast<double>(censored) / n > kDegradedFraction;
  return out;
}

inline CommandResult cmd_periodize(const RunConfig& c, unsigned) {
  const PeriodizeResult p = periodize(c.model, c.period, c.seed);
  const auto* orbit = p.model.as<PeriodicOrbit>();
  const WeakDistance wd = weak_distance(c.model, p.model, default_test_family(c.model.alphabet()), c.budget, c.seed);
  CommandResult out;
  out.payload = {{"config", detail::config_echo(c, nullptr)},
                 {"period", c.period},
                 {"block", nums(orbit->block)},
                 {"distinct", orbit->distinct},
                 {"entropy", num(analytic_entropy(p.model).value_or(std::nan("")))},
                 {"resampled", p.resampled},
                 {"perturbed", p.perturbed},
                 {"warnings", p.warnings},
                 {"weak_distance", to_json(wd)}};
  CsvTable csv({"seed", "index", "symbol", "grid_index", "method"});
  for (std::size_t i = 0; i < orbit->block.size(); ++i) csv.row(c.seed, i, orbit->block[i], -1, "periodize");
  out.csv = csv.str();
  return out;
}

namespace detail {

inline CsvTable experiment_table() {
  return CsvTable({"seed", "experiment", "stage", "replicate", "grid_index", "metric", "value", "method"});
}

}  // namespace detail

inline CommandResult cmd_hd_collapse(const RunConfig& c, unsigned workers) {
  HdCollapseOptions o;
  o.periods = c.periods;
  o.replicates = c.replicates;
  o.weak_budget = c.budget;
  if (c.dim_grid) o.dim_grid = *c.dim_grid;
  if (c.rate_grid) o.rate_grid = *c.rate_grid;
  o.dim_points = std::max<std::size_t>(30, c.points);
  o.local = detail::local_options(c);
  o.horizon = c.horizon;
  o.workers = workers;
  const ExperimentReport r = run_hd_collapse(c.model, o, c.seed);
  CommandResult out;
  out.payload = {{"config", detail::config_echo(c, nullptr)},
                 {"dim_grid", to_json(o.dim_grid)},
                 {"rate_grid", to_json(o.rate_grid)},
                 {"report", to_json(r)}};
  CsvTable csv = detail::experiment_table();
  for (const auto& s : r.hd) {
    for (std::size_t k = 0; k < s.weak_distances.size(); ++k)
      csv.row(c.seed, r.id, s.period, k, -1, "weak_distance", s.weak_distances[k], "weak-distance");
    csv.row(c.seed, r.id, s.period, -1, -1, "median_weak_distance", s.median_weak_distance, "weak-distance");
    for (const auto& [name, v] : std::map<std::string, double>{{"dimH_minus", s.dims.dimH_minus},
                                                               {"dimH_plus", s.dims.dimH_plus},
                                                               {"dimP_minus", s.dims.dimP_minus},
                                                               {"dimP_plus", s.dims.dimP_plus}})
      csv.row(c.seed, r.id, s.period, -1, -1, name, v, "exact");
    for (std::size_t k = 0; k < s.rates.size(); ++k)
      for (std::size_t j = 0; j < s.rates[k].rates.size(); ++j)
        csv.row(c.seed, r.id, s.period, k, j, "recurrence_rate", s.rates[k].rates[j], "orbit-scan");
    out.degraded = out.degraded || s.dims.unreliable || !s.error.empty();
  }
  out.csv = csv.str();
  out.degraded = out.degraded || !r.failures.empty();
  return out;
}

inline CommandResult cmd_pd_blowup(const RunConfig& c, unsigned workers) {
  PdBlowupOptions o;
  o.etas = c.etas;
  o.replicates = c.replicates;
  o.weak_budget = c.budget;
  if (c.profile_grid) o.profile_grid = *c.profile_grid;
  o.profile_points = c.profile_points;
  o.local = detail::local_options(c);
  o.workers = workers;
  const ExperimentReport r = run_pd_blowup(c.block, o, c.seed);
  CommandResult out;
  json cfg = detail::config_echo(c, nullptr);
  cfg.erase("model");
  cfg["block"] = nums(c.block);
  out.payload = {{"config", cfg}, {"profile_grid", to_json(o.profile_grid)}, {"report", to_json(r)}};
  CsvTable csv = detail::experiment_table();
  std::size_t censored = 0, total = 0;
  for (const auto& s : r.pd) {
    char buf[32];
    const std::string eta(buf, std::to_chars(buf, buf + sizeof buf, s.eta).ptr);
    for (std::size_t k = 0; k < s.weak_distances.size(); ++k)
      csv.row(c.seed, r.id, eta, k, -1, "weak_distance", s.weak_distances[k], "weak-distance");
    csv.row(c.seed, r.id, eta, -1, -1, "median_weak_distance", s.median_weak_distance, "weak-distance");
    for (std::size_t k = 0; k < s.profiles.size(); ++k) {
      const LocalDimEstimate& p = s.profiles[k];
      for (std::size_t j = 0; j < p.scales.size(); ++j) {
        csv.row(c.seed, r.id, eta, k, j, "slope", p.slopes[j], to_string(p.masses[j].method));
        csv.row(c.seed, r.id, eta, k, j, "quotient", p.quotients[j], to_string(p.masses[j].method));
      }
      censored += p.censored ? 1 : 0;
      ++total;
    }
  }
  out.csv = csv.str();
  out.degraded = !r.failures.empty() || (total > 0 && static_cast<double>(censored) > kDegradedFraction * static_cast<double>(total));
  return out;
}

inline const std::map<std::string, std::function<CommandResult(const RunConfig&, unsigned)>>& command_table() {
  static const std::map<std::string, std::function<CommandResult(const RunConfig&, unsigned)>> table{
      {"estimate-dim", cmd_estimate_dim}, {"recurrence", cmd_recurrence}, {"waiting", cmd_waiting},
      {"periodize", cmd_periodize},       {"hd-collapse", cmd_hd_collapse}, {"pd-blowup", cmd_pd_blowup}};
  return table;
}

/// Runs one analysis command and writes <out>/<command>.json, .csv and a
/// .timing.json sidecar. The JSON depends only on (config, seed).
inline int run_command(const RunConfig& c, unsigned workers, std::ostream& log) {
  const auto& table = command_table();
  const auto it = table.find(c.command);
  if (it == table.end()) throw ConfigError("unknown command '" + c.command + "'");
  const auto start = std::chrono::steady_clock::now();
  CommandResult r = it->second(c, workers);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json doc = {{"schema_version", kSchemaVersion}, {"command", c.command}, {"seed", c.seed}, {"degraded", r.degraded}};
  for (auto& [k, v] : r.payload.items()) doc[k] = v;
  std::filesystem::create_directories(c.out_dir);
  const std::string base = (std::filesystem::path(c.out_dir) / c.command).string();
  write_text(base + ".json", doc.dump(2) + "\n");
  write_text(base + ".csv", r.csv);
  write_text(base + ".timing.json", json{{"command", c.command}, {"seconds", seconds}, {"workers", workers}}.dump(2) + "\n");
  log << c.command << ": wrote " << base << ".json and .csv" << (r.degraded ? " (degraded)" : "") << '\n';
  return r.degraded ? kDegraded : kOk;
}

inline int run_verify(const std::string& suite, unsigned workers, std::ostream& os) {
  if (!verify::known_suite(suite)) {
    std::cerr << "unknown suite '" << suite << "' (expected metric, measures, dimension, recurrence, genericity, all)\n";
    return kUsage;
  }
  const auto results = verify::run_suite(suite, workers);
  verify::print_table(os, results);
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
  os << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kDegraded;
}

}  // namespace shiftlab::cli
