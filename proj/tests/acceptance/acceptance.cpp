// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: shiftlab_acceptance [--workers N] [--only K]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "shiftlab/cli/commands.hpp"
#include "shiftlab/verify/suites.hpp"

using namespace shiftlab;
using namespace shiftlab::cli;
using verify::fmt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome(unsigned)> run;
};

std::string count(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

const AlphabetSpec kUnit = AlphabetSpec::unit_interval();
const std::vector<double> kOrbit8{0.05, 0.17, 0.29, 0.41, 0.53, 0.65, 0.77, 0.89};
const MeasureModel kFair = MeasureModel::bernoulli({0.5, 0.5});

// Criterion 1: metric axioms and the shift Lipschitz bound.
Outcome metric_shift(unsigned) {
  const double tol = 1e-9;
  Outcome o{true, ""};
  for (const auto& [label, model] : {std::pair{"finite", kFair}, std::pair{"unit", MeasureModel::bernoulli_uniform()}}) {
    const verify::PairCheckStats st = verify::metric_pair_checks(model, 1000, tol, 1);
    const bool ok = st.triangle_failures + st.bound_failures + st.lipschitz_failures == 0 && st.max_ratio >= 1.99;
    o.pass = o.pass && ok;
    o.detail += std::string(o.detail.empty() ? "" : "; ") + label + ": failures " +
                std::to_string(st.triangle_failures + st.bound_failures + st.lipschitz_failures) + ", max ratio " +
                fmt(st.max_ratio);
  }
  return o;
}

// Criterion 2: mollifier sandwich on 200 instances.
Outcome sandwich(unsigned workers) {
  const verify::SandwichStats st = verify::sandwich_checks(200, 4000, 2, workers);
  const double frac = static_cast<double>(st.violations) / static_cast<double>(st.instances);
  return {frac <= 0.05, "violations " + count(st.violations, st.instances) + " = " + fmt(frac) + " (<= 0.05)"};
}

// Criterion 3: period-8 orbit on the unit interval.
Outcome periodic_dims(unsigned workers) {
  MeasureDimsOptions o;
  o.workers = workers;
  const MeasureModel orbit = MeasureModel::periodic(kUnit, kOrbit8, true);
  const DimensionReport r = measure_dims(orbit, 30, ScaleGrid::dyadic(4, 20), o, 3);
  bool exact = true;
  for (const auto& s : r.samples)
    for (const auto& m : s.masses) exact = exact && m.method == MassMethod::exact;
  return {r.dimH_plus <= 0.05 && r.dimP_plus <= 0.05 && exact,
          "dimH+ " + fmt(r.dimH_plus) + ", dimP+ " + fmt(r.dimP_plus) + (exact ? ", exact masses" : ", NOT exact")};
}

// Criterion 4: fair coin local dimensions.
Outcome bernoulli_dims(unsigned workers) {
  MeasureDimsOptions o;
  o.workers = workers;
  const ScaleGrid grid = ScaleGrid::dyadic(4, 14, 2);
  const DimensionReport r = measure_dims(kFair, 100, grid, o, 4);
  std::size_t inside = 0;
  bool bb = true;
  for (const auto& s : r.samples) {
    inside += s.lower >= 1.8 && s.upper <= 2.2;
    for (const auto& m : s.masses) bb = bb && m.method == MassMethod::branch_and_bound;
  }
  const bool four = std::fabs(r.dimH_minus - 2) <= 0.25 && std::fabs(r.dimH_plus - 2) <= 0.25 &&
                    std::fabs(r.dimP_minus - 2) <= 0.25 && std::fabs(r.dimP_plus - 2) <= 0.25;
  const bool entropy = r.dimP_minus >= 0.75;
  return {inside >= 90 && four && entropy && bb,
          "points in [1.8,2.2] " + count(inside, 100) + "; dims " + fmt(r.dimH_minus) + " " + fmt(r.dimH_plus) + " " +
              fmt(r.dimP_minus) + " " + fmt(r.dimP_plus) + "; dimP- >= 0.75 " + (entropy ? "yes" : "no") +
              (bb ? "" : "; some masses not branch-and-bound")};
}

// Criterion 5: packing oracle on random fair-coin point clouds.
Outcome packing(unsigned) {
  std::size_t dominated = 0, equal = 0;
  const std::size_t instances = 200;
  for (std::size_t i = 0; i < instances; ++i) {
    CounterRng rng(derive_seed(5, stream::pair, i), stream::pair);
    const std::size_t n = 1 + rng.below(10);
    std::vector<BilateralSequence> pts;
    for (std::size_t k = 0; k < n; ++k) pts.push_back(sample_point(kFair, derive_seed(5, stream::point, 16 * i + k)));
    const double delta = 1.5;
    double r1 = 0.05 + 0.7 * rng.uniform(), r2 = 0.05 + 0.7 * rng.uniform();
    if (r1 == r2) r2 /= 2;
    const double g = greedy_packing(pts, 1.0, delta, {r1, r2}).value;
    const double b = brute_force_packing(pts, 1.0, delta, {r1, r2}).value;
    dominated += b >= g - 1e-12;
    equal += std::fabs(b - g) <= 1e-12;
  }
  DistanceMatrix d(3);
  d.set(0, 1, 0.2);
  d.set(0, 2, 0.5);
  d.set(1, 2, 0.3);
  const double three = brute_force_packing(d, 1.0, 0.2, {0.05, 0.1}).value;
  const bool three_ok = std::fabs(three - 0.4) <= 1e-12;
  return {dominated == instances && equal * 10 >= instances * 6 && three_ok,
          "brute >= greedy " + count(dominated, instances) + ", equal " + count(equal, instances) +
              " (>= 60%), 3-point instance " + fmt(three, 12) + " (want 0.4)"};
}

// Criterion 6: recurrence rates.
Outcome recurrence(unsigned workers) {
  // log 8 / log(1/t) <= 0.05 needs t <= 2^-60, so the grid starts at 2^-64
  double periodic_upper = 0.0;
  for (const auto& block : {kOrbit8, std::vector<double>{0.2, 0.6, 0.9}, std::vector<double>{0.5}}) {
    const auto x = BilateralSequence::periodic(kUnit, block);
    periodic_upper = std::max(periodic_upper, recurrence_rates(x, ScaleGrid{std::ldexp(1.0, -64), 0.5, 8, 0}, 1000).upper);
  }
  const ScaleGrid grid{0.0625, 0.5, 8, 4};
  const auto lowers = parallel_map(50, workers, [&](std::size_t i) {
    return recurrence_rates(sample_point(kFair, point_seed(6, i)), grid, 10'000'000).lower;
  });
  const double med = median(lowers);
  const auto dyn = parallel_map(50, workers, [&](std::size_t i) {
    const auto x = sample_point(kFair, point_seed(66, i));
    std::pair<std::size_t, std::size_t> r{0, 0};  // checked, failed
    for (std::size_t n = 1; n <= 6; ++n) {
      const HittingTime R = dynamical_return_time(x, n, 0.25, 1'000'000);
      const HittingTime tau = return_time(x, std::ldexp(0.25, -static_cast<int>(n)), 1'000'000);
      if (R.censored || tau.censored) continue;
      ++r.first;
      r.second += tau.value < R.value;
    }
    return r;
  });
  std::size_t checked = 0, failed = 0;
  for (const auto& [c, f] : dyn) {
    checked += c;
    failed += f;
  }
  return {periodic_upper <= 0.05 && med >= 1.5 && med <= 2.5 && failed == 0,
          "periodic upper " + fmt(periodic_upper) + "; fair-coin median lower " + fmt(med) + "; tau >= R_n on " +
              count(checked - failed, checked) + " uncensored"};
}

// Criterion 7: Barreira-Saussol and waiting-time inequalities.
Outcome inequalities(unsigned workers) {
  MeasureDimsOptions mo;
  mo.workers = workers;
  const DimensionReport dims = measure_dims(kFair, 30, ScaleGrid::dyadic(4, 14, 2), mo, 7);
  const ScaleGrid rgrid{0.0625, 0.5, 8, 4};
  const auto rec = parallel_map(100, workers, [&](std::size_t i) {
    return recurrence_rates(sample_point(kFair, point_seed(70, i)), rgrid, 10'000'000).lower;
  });
  std::size_t bs = 0;
  for (double r : rec) bs += r <= dims.dimH_plus + 0.3;

  // one admissible scale, 2^-14, with horizon 2^26
  const ScaleGrid wgrid{std::ldexp(1.0, -7), 0.5, 8, 7};
  const auto gal = parallel_map(200, workers, [&](std::size_t i) {
    const auto x = sample_point(kFair, point_seed(71, 2 * i)), y = sample_point(kFair, point_seed(71, 2 * i + 1));
    const RateEstimate w = waiting_rates(x, y, wgrid, std::uint64_t{1} << 26);
    const double target = local_dims(kFair, y, wgrid, {}, derive_seed(71, stream::replicate, i)).quotient_lower;
    return std::pair{w.lower >= target - 0.3, w.fully_censored};
  });
  std::size_t ok = 0, censored = 0;
  for (const auto& [pass, cens] : gal) {
    ok += pass;
    censored += cens;
  }
  return {bs >= 90 && ok >= 180,
          "recurrence <= dimH+ + 0.3 " + count(bs, 100) + " (dimH+ " + fmt(dims.dimH_plus) + "); waiting >= lower - 0.3 " +
              count(ok, 200) + " (" + std::to_string(censored) + " censored at 2^26)"};
}

// Criterion 8: genericity experiments.
Outcome genericity(unsigned workers) {
  HdCollapseOptions ho;
  ho.workers = workers;
  const ExperimentReport hd = run_hd_collapse(kFair, ho, 17);
  bool hd_ok = hd.failures.empty() && hd.hd.size() == 3;
  std::string trend;
  for (std::size_t i = 0; i < hd.hd.size(); ++i) {
    trend += (i ? " > " : "") + fmt(hd.hd[i].median_weak_distance);
    if (i > 0) hd_ok = hd_ok && hd.hd[i].median_weak_distance < hd.hd[i - 1].median_weak_distance;
    hd_ok = hd_ok && hd.hd[i].dims.dimH_plus <= 0.05;
  }
  PdBlowupOptions po;
  po.workers = workers;
  const ExperimentReport pd = run_pd_blowup({0.1, 0.35, 0.6, 0.85}, po, 18);
  bool pd_ok = pd.failures.empty() && pd.pd.size() == 3;
  std::string wd, slopes;
  for (std::size_t i = 0; i < pd.pd.size(); ++i) {
    wd += (i ? " > " : "") + fmt(pd.pd[i].median_weak_distance);
    slopes += (i ? ", " : "") + fmt(pd.pd[i].min_fine_slope);
    if (i > 0) pd_ok = pd_ok && pd.pd[i].median_weak_distance < pd.pd[i - 1].median_weak_distance;
    pd_ok = pd_ok && pd.pd[i].min_fine_slope >= 5.0;
  }
  return {hd_ok && pd_ok, "hd medians " + trend + (hd_ok ? " ok" : " FAIL") + "; pd medians " + wd +
                              ", min fine slopes " + slopes + (pd_ok ? " ok" : " FAIL")};
}

// Criterion 9: byte-identical JSON for 1 and 3 workers.
Outcome determinism(unsigned) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"estimate-dim", R"({"points": 30})"},
      {"recurrence", R"({"points": 12, "horizon": 200000})"},
      {"waiting", R"({"points": 12, "horizon": 200000})"},
      {"periodize", R"({"model": {"type": "bernoulli-uniform"}, "period": 16})"},
      {"hd-collapse", R"({"replicates": 6, "budget": 1000, "points": 30})"},
      {"pd-blowup", R"({"replicates": 6, "budget": 1000})"}};
  std::size_t same = 0;
  std::string diff;
  for (const auto& [cmd, cfg] : cases) {
    const RunConfig c = parse_config(json::parse(cfg), cmd);
    const auto& fn = command_table().at(cmd);
    const CommandResult a = fn(c, 1), b = fn(c, 3);
    if (a.payload.dump() == b.payload.dump() && a.csv == b.csv) ++same;
    else diff += " " + cmd;
  }
  return {same == cases.size(), "identical " + count(same, cases.size()) + (diff.empty() ? "" : "; differs:" + diff)};
}

}  // namespace

int main(int argc, char** argv) {
  unsigned workers = 1;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (!std::strcmp(argv[i], "--workers")) workers = static_cast<unsigned>(std::max(1, std::atoi(argv[i + 1])));
    else if (!std::strcmp(argv[i], "--only")) only = std::atoi(argv[i + 1]);
  }
  const std::vector<Criterion> criteria{
      {1, "metric-shift", 5, metric_shift},        {2, "sandwich", 60, sandwich},
      {3, "periodic-dims", 10, periodic_dims},     {4, "bernoulli-dims", 120, bernoulli_dims},
      {5, "packing-oracle", 30, packing},          {6, "recurrence-rates", 600, recurrence},
      {7, "inequalities", 600, inequalities},      {8, "genericity", 900, genericity},
      {9, "determinism", 600, determinism}};
  int failed = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(workers);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %d %-16s %s [%.1fs, limit %.0fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
