#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "shiftlab/dimension/local_dims.hpp"
#include "shiftlab/dimension/packing.hpp"
#include "shiftlab/genericity/experiments.hpp"
#include "shiftlab/recurrence/rates.hpp"

namespace shiftlab::cli {

using nlohmann::json;

/// Finite doubles stay numbers; inf, -inf and nan become strings.
inline json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json nums(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

inline json to_json(const ScaleGrid& g) {
  return {{"eps0", num(g.eps0)}, {"q", num(g.q)}, {"count", g.count}, {"s_index", g.s_index}};
}

inline json to_json(const BallMassEstimate& m) {
  return {{"mean", num(m.mean)},     {"ci_low", num(m.ci_low)},   {"ci_high", num(m.ci_high)},
          {"log_mean", num(m.log_mean)}, {"method", to_string(m.method)}, {"samples", m.samples},
          {"censored", m.censored},  {"depth", m.depth}};
}

inline json to_json(const LocalDimEstimate& e) {
  json masses = json::array();
  for (const auto& m : e.masses) masses.push_back(to_json(m));
  return {{"scales", nums(e.scales)},       {"masses", masses},
          {"quotients", nums(e.quotients)}, {"slopes", nums(e.slopes)},
          {"lower", num(e.lower)},          {"upper", num(e.upper)},
          {"quotient_lower", num(e.quotient_lower)}, {"quotient_upper", num(e.quotient_upper)},
          {"censored", e.censored},         {"off_support", e.off_support}};
}

inline json to_json(const DimensionReport& r, bool with_samples = true) {
  json j = {{"dimH_minus", num(r.dimH_minus)}, {"dimH_plus", num(r.dimH_plus)},
            {"dimP_minus", num(r.dimP_minus)}, {"dimP_plus", num(r.dimP_plus)},
            {"trim", num(r.trim)},             {"censored_fraction", num(r.censored_fraction)},
            {"unreliable", r.unreliable},      {"points", r.samples.size()}};
  if (with_samples) {
    json s = json::array();
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      json e = to_json(r.samples[i]);
      if (i < r.point_seeds.size()) e["point_seed"] = r.point_seeds[i];
      s.push_back(std::move(e));
    }
    j["samples"] = std::move(s);
  }
  return j;
}

inline json to_json(const HittingTime& t) { return {{"value", t.value}, {"censored", t.censored}}; }

inline json to_json(const RateEstimate& r) {
  json times = json::array();
  for (const auto& t : r.times) times.push_back(to_json(t));
  return {{"scales", nums(r.scales)}, {"times", times},         {"rates", nums(r.rates)},
          {"lower", num(r.lower)},    {"upper", num(r.upper)},  {"horizon", r.horizon},
          {"upper_is_bound", r.upper_is_bound}, {"fully_censored", r.fully_censored}};
}

inline json to_json(const WeakDistance& w) {
  return {{"value", num(w.value)},     {"ci_low", num(w.ci_low)},     {"ci_high", num(w.ci_high)},
          {"deltas", nums(w.deltas)},  {"half_widths", nums(w.half_widths)}, {"family", w.family_id},
          {"method_mu", w.method_mu},  {"method_nu", w.method_nu}};
}

inline json to_json(const PackingCoverResult& p) {
  json balls = json::array(), sets = json::array();
  for (const auto& b : p.balls) balls.push_back({{"center", b.center}, {"radius", num(b.radius)}});
  for (const auto& s : p.sets) sets.push_back({{"members", s.members}, {"diameter", num(s.diameter)}});
  return {{"value", num(p.value)}, {"alpha", num(p.alpha)}, {"delta", num(p.delta)},
          {"mode", p.mode == PackingMode::packing ? "packing" : "cover"}, {"optimal", p.optimal},
          {"balls", balls}, {"sets", sets}};
}

inline json to_json(const ExperimentReport& r) {
  json j = {{"experiment", r.id}, {"seed", r.seed}, {"family", r.family_id}, {"failures", r.failures}};
  json stages = json::array();
  for (const auto& s : r.hd) {
    json rates = json::array();
    for (const auto& e : s.rates) rates.push_back(to_json(e));
    stages.push_back({{"period", s.period},
                      {"weak_distances", nums(s.weak_distances)},
                      {"median_weak_distance", num(s.median_weak_distance)},
                      {"distinct", s.distinct},
                      {"entropy", num(s.entropy)},
                      {"warnings", s.warnings},
                      {"dimensions", to_json(s.dims, false)},
                      {"recurrence", rates},
                      {"max_upper_rate", num(s.max_upper_rate)},
                      {"error", s.error}});
  }
  for (const auto& s : r.pd) {
    json profiles = json::array();
    for (const auto& p : s.profiles) profiles.push_back(to_json(p));
    stages.push_back({{"eta", num(s.eta)},
                      {"weak_distances", nums(s.weak_distances)},
                      {"median_weak_distance", num(s.median_weak_distance)},
                      {"profiles", profiles},
                      {"fine_slopes", nums(s.fine_slopes)},
                      {"min_fine_slope", num(s.min_fine_slope)},
                      {"error", s.error}});
  }
  j["stages"] = std::move(stages);
  return j;
}

/// Plain CSV rows; doubles keep 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : width_(header.size()) { row_strings(header); }

  template <typename... Cells>
  void row(const Cells&... cells) {
    static_assert(sizeof...(Cells) > 0);
    std::vector<std::string> out;
    (out.push_back(cell(cells)), ...);
    if (out.size() != width_) throw std::logic_error("CSV row width mismatch");
    row_strings(out);
  }

  std::string str() const { return text_.str(); }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(bool b) { return b ? "true" : "false"; }
  static std::string cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream o;
    o << std::setprecision(17) << v;
    return o.str();
  }
  template <typename T>
  static std::enable_if_t<std::is_integral_v<T>, std::string> cell(T v) {
    return std::to_string(v);
  }

  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ << (i ? "," : "") << cells[i];
    text_ << '\n';
  }

  std::size_t width_;
  std::ostringstream text_;
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace shiftlab::cli
