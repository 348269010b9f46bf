#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "shiftlab/core/metric.hpp"
#include "shiftlab/dimension/local_dims.hpp"
#include "shiftlab/dimension/local_entropy.hpp"
#include "shiftlab/dimension/packing.hpp"
#include "shiftlab/genericity/experiments.hpp"
#include "shiftlab/measures/ball_mass.hpp"
#include "shiftlab/recurrence/rates.hpp"

namespace shiftlab::verify {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::string fmt(double v, int digits = 4) {
  std::ostringstream o;
  o << std::setprecision(digits) << v;
  return o.str();
}

/// Faults can be injected into named checks through SHIFTLAB_VERIFY_INJECT
/// so that the suite runner itself can be tested.
inline bool fault_injected(const std::string& name) {
  const char* env = std::getenv("SHIFTLAB_VERIFY_INJECT");
  return env && name == env;
}

// ---- shared instance generators ---------------------------------------------

struct PairCheckStats {
  std::size_t pairs = 0;
  std::size_t triangle_failures = 0;
  std::size_t bound_failures = 0;
  std::size_t symmetry_failures = 0;
  std::size_t lipschitz_failures = 0;
  double max_ratio = 0.0;
};

/// Seeded random pairs for the metric properties. Half are independent
/// draws; half differ from x only on a random set of coordinates on one side
/// of the origin, which is where the Lipschitz bound is tight.
inline PairCheckStats metric_pair_checks(const MeasureModel& model, std::size_t pairs, double tol, std::uint64_t seed) {
  PairCheckStats st;
  st.pairs = pairs;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::uint64_t s = derive_seed(seed, stream::pair, i);
    const BilateralSequence x = sample_point(model, derive_seed(s, stream::point, 0));
    BilateralSequence y = sample_point(model, derive_seed(s, stream::point, 1));
    const BilateralSequence z = sample_point(model, derive_seed(s, stream::point, 2));
    if (i % 2 == 1) {
      CounterRng rng(s, stream::coordinate);
      const bool negative = i % 4 == 1;
      std::map<std::int64_t, double> patch;
      const std::size_t count = 1 + rng.below(4);
      for (std::size_t c = 0; c < count; ++c) {
        const auto n = static_cast<std::int64_t>(1 + rng.below(6));
        patch[negative ? -n : n] = y[negative ? -n : n];
      }
      y = x.with_coordinates(patch);
    }
    const double dxy = product_metric(x, y, tol);
    const double dyx = product_metric(y, x, tol);
    const double dyz = product_metric(y, z, tol);
    const double dxz = product_metric(x, z, tol);
    if (dxz > dxy + dyz + 3.0 * tol) ++st.triangle_failures;
    if (dxy > 3.0 + tol || dxy < 0.0) ++st.bound_failures;
    if (std::fabs(dxy - dyx) > tol) ++st.symmetry_failures;
    for (std::int64_t k : {1, -1}) {
      const double dt = product_metric(shift(x, k), shift(y, k), tol);
      if (dt > 2.0 * dxy + 3.0 * tol) ++st.lipschitz_failures;
      if (dxy > 1e-9) st.max_ratio = std::max(st.max_ratio, dt / dxy);
    }
  }
  return st;
}

inline std::vector<MeasureModel> sandwich_models() {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  return {MeasureModel::bernoulli({0.5, 0.5}),
          MeasureModel::bernoulli({0.3, 0.7}),
          MeasureModel::bernoulli({0.2, 0.3, 0.5}),
          MeasureModel::bernoulli_uniform(),
          MeasureModel::periodic(unit, {0.05, 0.3, 0.5, 0.7, 0.95}, true),
          MeasureModel::noisy({0.2, 0.5, 0.8}, 0.05),
          MeasureModel::mixture({0.5, 0.5}, {MeasureModel::bernoulli({0.5, 0.5}),
                                             MeasureModel::periodic(AlphabetSpec::finite(2), {0, 1, 1})})};
}

struct SandwichStats {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::vector<std::string> examples;
};

/// f_{x,eps/2}(mu) <= mu(B(x,eps)) <= f_{x,2eps}(mu), compared through the
/// 95% bands: a violation needs the bands to separate.
inline SandwichStats sandwich_checks(std::size_t instances, std::size_t budget, std::uint64_t seed, unsigned workers,
                                     bool flipped = false) {
  const auto models = sandwich_models();
  const auto outcomes = parallel_map(instances, workers, [&](std::size_t i) -> std::string {
    const std::uint64_t s = derive_seed(seed, stream::replicate, i);
    const MeasureModel& model = models[i % models.size()];
    const BilateralSequence x = sample_point(model, derive_seed(s, stream::point, 0));
    const double eps = 0.05 * std::pow(12.0, counter_uniform(s, stream::monte_carlo, 0));
    BallMassOptions mo;
    mo.budget = budget;
    mo.seed = derive_seed(s, stream::monte_carlo, 1);
    const BallMassEstimate mass = ball_mass(model, x, eps, mo);
    BallMassEstimate lo = mollified_mass(model, x, eps / 2.0, budget, derive_seed(s, stream::monte_carlo, 2));
    BallMassEstimate hi = mollified_mass(model, x, 2.0 * eps, budget, derive_seed(s, stream::monte_carlo, 3));
    if (flipped) std::swap(lo, hi);
    if (lo.ci_low > mass.ci_high || mass.ci_low > hi.ci_high)
      return model.kind_name() + " eps=" + fmt(eps) + ": " + fmt(lo.mean) + " / " + fmt(mass.mean) + " / " + fmt(hi.mean);
    return {};
  });
  SandwichStats st;
  st.instances = instances;
  for (const auto& o : outcomes) {
    if (o.empty()) continue;
    ++st.violations;
    if (st.examples.size() < 3) st.examples.push_back(o);
  }
  return st;
}

// ---- suites -----------------------------------------------------------------

using Suite = std::function<std::vector<CheckResult>(unsigned workers)>;

inline std::vector<CheckResult> metric_suite(unsigned) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({"metric", std::move(name), pass, std::move(detail)});
  };
  const double tol = 1e-9;
  const AlphabetSpec bin = AlphabetSpec::finite(2), unit = AlphabetSpec::unit_interval();
  for (const auto& [label, model] : {std::pair{"finite", MeasureModel::bernoulli({0.5, 0.5})},
                                     std::pair{"unit", MeasureModel::bernoulli_uniform()}}) {
    const PairCheckStats st = metric_pair_checks(model, 1000, tol, 2024);
    add(std::string("axioms/") + label, st.triangle_failures + st.bound_failures + st.symmetry_failures == 0,
        "triangle " + std::to_string(st.triangle_failures) + ", bound " + std::to_string(st.bound_failures) +
            ", symmetry " + std::to_string(st.symmetry_failures) + " failures over 1000 triples");
    add(std::string("lipschitz/") + label, st.lipschitz_failures == 0 && st.max_ratio >= 1.99,
        "failures " + std::to_string(st.lipschitz_failures) + ", max ratio " + fmt(st.max_ratio));
  }
  const auto zero = BilateralSequence::constant(bin, 0), one = BilateralSequence::constant(bin, 1);
  const double d0 = product_metric(zero, zero.with_coordinate(0, 1), tol);
  const double dall = product_metric(zero, one, tol);
  const auto xm = zero.with_coordinate(-1, 1);
  const double dm = product_metric(zero, xm, tol), dtm = product_metric(shift(zero, 1), shift(xm, 1), tol);
  add("constructed-values", std::fabs(d0 - 0.5) <= tol && std::fabs(dall - 1.5) <= tol &&
                                std::fabs(dm - 0.25) <= tol && std::fabs(dtm - 0.5) <= tol,
      "0.5=" + fmt(d0, 12) + " 1.5=" + fmt(dall, 12) + " 0.25=" + fmt(dm, 12) + " 0.5=" + fmt(dtm, 12));
  bool tail_ok = true, trunc_ok = true;
  const auto u = sample_point(MeasureModel::bernoulli_uniform(), 5);
  for (int N = 1; N <= 20; ++N) {
    std::map<std::int64_t, double> patch;
    for (std::int64_t n = N + 1; n <= N + 40; ++n) {
      patch[n] = 1.0 - u[n];
      patch[-n] = 1.0 - u[-n];
    }
    tail_ok = tail_ok && product_metric(u, u.with_coordinates(patch), 1e-15) <= std::ldexp(1.0, -N);
    const auto v = sample_point(MeasureModel::bernoulli_uniform(), 100 + static_cast<std::uint64_t>(N));
    trunc_ok = trunc_ok && std::fabs(truncated_distance(u, v, N) - truncated_distance(u, v, N + 30)) <= 2.0 * tail_bound(N);
  }
  (void)unit;
  add("tail-bound", tail_ok, "agreement on |n|<=N gives d<=2^-N for N=1..20");
  add("truncation", trunc_ok, "|d_N - d_N'| <= 2^(1-N) for N=1..20");
  return out;
}

inline std::vector<CheckResult> measures_suite(unsigned workers) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({"measures", std::move(name), pass, std::move(detail)});
  };
  const SandwichStats sw = sandwich_checks(42, 2000, 77, workers, fault_injected("sandwich"));
  add("sandwich", static_cast<double>(sw.violations) <= 0.05 * static_cast<double>(sw.instances),
      std::to_string(sw.violations) + "/" + std::to_string(sw.instances) + " separated bands" +
          (sw.examples.empty() ? "" : " (e.g. " + sw.examples.front() + ")"));

  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const MeasureModel orbit = MeasureModel::periodic(unit, {0.1, 0.4, 0.7, 1.0}, true);
  const BallMassEstimate pm = ball_mass(orbit, sample_point_stratified(orbit, 0, 0), 0.1);
  add("periodic-exact", std::fabs(pm.mean - 0.25) < 1e-12 && pm.method == MassMethod::exact,
      "mass " + fmt(pm.mean, 12) + " via " + to_string(pm.method));

  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  bool lower_ok = true, mono_ok = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto x = sample_point(fair, s);
    double prev = 0.0;
    for (int N = 1; N <= 12; ++N) {
      const double m = ball_mass(fair, x, std::ldexp(1.0, -N)).mean;
      lower_ok = lower_ok && m >= std::pow(0.5, 2 * N + 1);
      if (N > 1) mono_ok = mono_ok && m <= prev + 1e-15;
      prev = m;
    }
  }
  const double half = ball_mass(fair, sample_point(fair, 9), 0.49).mean;
  add("bernoulli-bounds", lower_ok && half <= 0.5, "mass(2^-N) >= 2^-(2N+1), mass(0.49) = " + fmt(half));
  add("monotone-in-eps", mono_ok, "mass non-increasing along 2^-1..2^-12");

  bool agree = true;
  std::string agree_detail;
  for (std::uint64_t s = 0; s < 6; ++s) {
    const MeasureModel m = MeasureModel::bernoulli({0.3, 0.7});
    const auto x = sample_point(m, s);
    const double eps = 0.1 + 0.1 * static_cast<double>(s);
    const BallMassEstimate exact = ball_mass(m, x, eps);
    BallMassOptions mo;
    mo.force = MassMethod::monte_carlo;
    mo.budget = 20000;
    mo.seed = s;
    const BallMassEstimate mc = ball_mass(m, x, eps, mo);
    if (exact.mean < mc.ci_low || exact.mean > mc.ci_high) {
      agree = false;
      agree_detail = "eps=" + fmt(eps) + " exact " + fmt(exact.mean) + " mc " + fmt(mc.mean);
    }
  }
  add("exact-vs-mc", agree, agree ? "branch-and-bound inside MC band at eps 0.1..0.6" : agree_detail);

  const MeasureModel a = MeasureModel::bernoulli({0.3, 0.7});
  const MeasureModel b = MeasureModel::periodic(AlphabetSpec::finite(2), {0, 1, 1});
  const MeasureModel mix = MeasureModel::mixture({0.25, 0.75}, {a, b});
  const auto x = sample_point(b, 4);
  const double lhs = ball_mass(mix, x, 0.2).mean;
  const double rhs = 0.25 * ball_mass(a, x, 0.2).mean + 0.75 * ball_mass(b, x, 0.2).mean;
  add("mixture-affinity", std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs), fmt(lhs, 12) + " vs " + fmt(rhs, 12));

  const bool entropy_ok = std::fabs(*analytic_entropy(fair) - std::log(2.0)) < 1e-15 &&
                          *analytic_entropy(orbit) == 0.0 && std::isinf(*analytic_entropy(MeasureModel::bernoulli_uniform()));
  add("analytic-entropy", entropy_ok, "log 2, 0 and +inf for fair coin, orbit, uniform");
  return out;
}

inline std::vector<CheckResult> dimension_suite(unsigned workers) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({"dimension", std::move(name), pass, std::move(detail)});
  };
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const MeasureModel orbit = MeasureModel::periodic(unit, {0.05, 0.17, 0.29, 0.41, 0.53, 0.65, 0.77, 0.89}, true);
  MeasureDimsOptions mdo;
  mdo.workers = workers;
  const DimensionReport pr = measure_dims(orbit, 30, ScaleGrid::dyadic(4, 20), mdo, 3);
  add("periodic-dims", pr.dimH_plus <= 0.05 && pr.dimP_plus <= 0.05,
      "dimH+ " + fmt(pr.dimH_plus) + ", dimP+ " + fmt(pr.dimP_plus));

  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const DimensionReport br = measure_dims(fair, 30, ScaleGrid::dyadic(4, 12), mdo, 4);
  const bool near2 = std::fabs(br.dimH_minus - 2) <= 0.25 && std::fabs(br.dimH_plus - 2) <= 0.25 &&
                     std::fabs(br.dimP_minus - 2) <= 0.25 && std::fabs(br.dimP_plus - 2) <= 0.25;
  add("bernoulli-dims", near2 && br.dimP_minus >= 0.75,
      fmt(br.dimH_minus) + " " + fmt(br.dimH_plus) + " " + fmt(br.dimP_minus) + " " + fmt(br.dimP_plus));

  const MeasureModel mix = MeasureModel::mixture({0.5, 0.5}, {MeasureModel::periodic(AlphabetSpec::finite(2), {0, 1}), fair});
  const DimensionReport mr = measure_dims(mix, 40, ScaleGrid::dyadic(4, 12), mdo, 5);
  add("mixture-dims", mr.dimH_minus <= 0.25 && std::fabs(mr.dimP_plus - 2.0) <= 0.25,
      "dimH- " + fmt(mr.dimH_minus) + ", dimP+ " + fmt(mr.dimP_plus));

  DistanceMatrix d(3);
  d.set(0, 1, 0.2);
  d.set(0, 2, 0.5);
  d.set(1, 2, 0.3);
  const double g3 = greedy_packing(d, 1.0, 0.2, {0.05, 0.1}).value;
  const double b3 = brute_force_packing(d, 1.0, 0.2, {0.05, 0.1}).value;
  bool dominance = true;
  for (std::uint64_t s = 0; s < 60; ++s) {
    CounterRng rng(s, stream::pair);
    const std::size_t n = 1 + rng.below(8);
    DistanceMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, 0.05 + 0.4 * rng.uniform());
    dominance = dominance && brute_force_packing(m, 1.0, 0.2, {0.05, 0.1}).value >=
                                 greedy_packing(m, 1.0, 0.2, {0.05, 0.1}).value - 1e-15;
  }
  add("packing-oracle", dominance && std::fabs(b3 - 0.5) < 1e-12 && std::fabs(g3 - 0.5) < 1e-12,
      "3-point optimum " + fmt(b3) + ", greedy " + fmt(g3) + ", brute >= greedy on 60 instances");

  bool shift_ok = true;
  std::string shift_detail = "|delta| <= 0.15 on 10 points";
  const MeasureModel biased = MeasureModel::bernoulli({0.3, 0.7});
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto x = sample_point(biased, s);
    const ScaleGrid g = ScaleGrid::dyadic(4, 13, 4);
    const LocalDimEstimate a = local_dims(biased, x, g, {}, s), b = local_dims(biased, shift(x, 1), g, {}, s);
    const double du = std::fabs(a.quotient_upper - b.quotient_upper), dl = std::fabs(a.quotient_lower - b.quotient_lower);
    if (du > 0.15 || dl > 0.15) {
      shift_ok = false;
      shift_detail = "seed " + std::to_string(s) + ": " + fmt(du) + ", " + fmt(dl);
    }
  }
  add("shift-invariance", shift_ok, shift_detail);

  bool mono = true;
  const auto x = sample_point(biased, 11);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < 8; ++s) {
    const double up = local_dims(biased, x, ScaleGrid{0.25, 0.5, 10, s}, {}, 1).upper;
    mono = mono && up <= prev;
    prev = up;
  }
  add("s-index-monotone", mono, "upper non-increasing in s_index");

  const auto y = sample_point(fair, 12);
  const LocalEntropyEstimate e1 = local_entropy(fair, y, 1, 0.125);
  const BallMassEstimate m1 = ball_mass(fair, y, 0.125);
  const LocalEntropyEstimate eo = local_entropy(orbit, sample_point_stratified(orbit, 0, 2), 12, 0.01);
  add("local-entropy", std::fabs(e1.mass.mean - m1.mean) <= 1e-12 && std::fabs(eo.rate - std::log(8.0) / 12.0) < 1e-12,
      "n=1 mass " + fmt(e1.mass.mean) + " vs ball " + fmt(m1.mean) + "; periodic rate " + fmt(eo.rate));
  return out;
}

inline std::vector<CheckResult> recurrence_suite(unsigned workers) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({"recurrence", std::move(name), pass, std::move(detail)});
  };
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const auto p3 = BilateralSequence::periodic(unit, {0.1, 0.5, 0.9});
  const HittingTime t3 = return_time(p3, 0.05, 100);
  const HittingTime e2 = entrance_time(p3, shift(p3, 2), 0.05, 100);
  add("periodic-times", !t3.censored && t3.value == 3 && !e2.censored && e2.value == 2,
      "tau=" + std::to_string(t3.value) + ", offset " + std::to_string(e2.value));

  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const auto checks = parallel_map(12, workers, [&](std::size_t i) {
    const auto x = sample_point(fair, derive_seed(31, stream::point, i));
    bool ok = true;
    HittingTime prev{0, false};
    for (int N = 1; N <= 8; ++N) {
      const HittingTime t = return_time(x, std::ldexp(1.0, -N), 1 << 20);
      ok = ok && (t.censored || prev.censored || t.value >= prev.value);
      prev = t;
    }
    for (std::size_t n : {1u, 2u, 4u}) {
      const double eps = 0.25;
      const HittingTime R = dynamical_return_time(x, n, eps, 1 << 20);
      const HittingTime tau = return_time(x, eps * std::ldexp(1.0, -static_cast<int>(n)), 1 << 20);
      if (!R.censored && !tau.censored) ok = ok && tau.value >= R.value;
      if (n == 1) ok = ok && R == return_time(x, eps, 1 << 20);
    }
    return ok;
  });
  add("monotone-and-dynamical", std::all_of(checks.begin(), checks.end(), [](bool b) { return b; }),
      "tau monotone in r, tau_{eps 2^-n} >= R_n, R_1 = tau on 12 points");

  const auto orbit = BilateralSequence::periodic(unit, {0.05, 0.17, 0.29, 0.41, 0.53, 0.65, 0.77, 0.89});
  const RateEstimate pr = recurrence_rates(orbit, ScaleGrid{std::ldexp(1.0, -64), 0.5, 8, 0}, 100);
  const RateEstimate fixed = recurrence_rates(BilateralSequence::constant(unit, 0.3), ScaleGrid{0.25, 0.5, 8, 0}, 10);
  add("periodic-rates", pr.upper <= 0.05 && fixed.upper == 0.0 && fixed.lower == 0.0,
      "period-8 upper " + fmt(pr.upper) + ", fixed point upper " + fmt(fixed.upper));

  const auto x = sample_point(fair, 8);
  const ScaleGrid g{0.0625, 0.5, 8, 2};
  const RateEstimate r1 = recurrence_rates(x, g, 1 << 18), r2 = recurrence_rates(x, g, 1 << 18);
  const RateEstimate w = waiting_rates(x, x, g, 1 << 18);
  add("determinism", r1.times == r2.times && w.times == r1.times, "repeat and waiting(x,x) reproduce tau exactly");
  return out;
}

inline std::vector<CheckResult> genericity_suite(unsigned workers) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool pass, std::string detail) {
    out.push_back({"genericity", std::move(name), pass, std::move(detail)});
  };
  const MeasureModel uni = MeasureModel::bernoulli_uniform();
  const PeriodizeResult p4 = periodize(uni, 4, 3);
  const auto* orbit = p4.model.as<PeriodicOrbit>();
  add("periodize", orbit && orbit->distinct && orbit->block.size() == 4 && *analytic_entropy(p4.model) == 0.0,
      "s=4 block distinct with zero entropy");
  const PeriodizeResult pf = periodize(MeasureModel::bernoulli({0.5, 0.5}), 5, 3);
  add("periodize-finite", !pf.model.as<PeriodicOrbit>()->distinct && !pf.warnings.empty(),
      "finite alphabet, s > m warns and keeps distinct=false");

  const TestFunctionFamily fam = default_test_family(uni.alphabet());
  const WeakDistance self = weak_distance(uni, uni, fam, 4000, 9);
  add("self-distance", self.ci_low == 0.0, "value " + fmt(self.value) + ", band [" + fmt(self.ci_low) + ", " + fmt(self.ci_high) + "]");
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const WeakDistance fixed = weak_distance(MeasureModel::periodic(unit, {0.2}), MeasureModel::periodic(unit, {0.7}),
                                           coordinate_identity_family(), 1000, 1);
  add("fixed-points", std::fabs(fixed.value - 0.5) < 1e-15, "|a-b| = " + fmt(fixed.value));

  HdCollapseOptions ho;
  ho.workers = workers;
  ho.dim_points = 30;
  const ExperimentReport hd = run_hd_collapse(MeasureModel::bernoulli({0.5, 0.5}), ho, 17);
  bool decreasing = hd.failures.empty(), collapsed = hd.failures.empty();
  std::string trend;
  for (std::size_t i = 0; i < hd.hd.size(); ++i) {
    trend += (i ? " > " : "") + fmt(hd.hd[i].median_weak_distance);
    if (i > 0) decreasing = decreasing && hd.hd[i].median_weak_distance < hd.hd[i - 1].median_weak_distance;
    collapsed = collapsed && hd.hd[i].dims.dimH_plus <= 0.05 && hd.hd[i].max_upper_rate <= 0.05;
  }
  add("hd-collapse", decreasing && collapsed, "median weak distance " + trend);
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"metric", "measures", "dimension", "recurrence", "genericity"};
  return names;
}

inline bool known_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

inline std::vector<CheckResult> run_suite(const std::string& name, unsigned workers) {
  if (!known_suite(name)) throw DomainError("unknown suite '" + name + "'");
  std::vector<CheckResult> all;
  for (const auto& s : suite_names()) {
    if (name != "all" && name != s) continue;
    std::vector<CheckResult> part;
    if (s == "metric") part = metric_suite(workers);
    else if (s == "measures") part = measures_suite(workers);
    else if (s == "dimension") part = dimension_suite(workers);
    else if (s == "recurrence") part = recurrence_suite(workers);
    else part = genericity_suite(workers);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

inline void print_table(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(12) << r.suite << std::setw(24) << r.name << r.detail
       << '\n';
}

}  // namespace shiftlab::verify
