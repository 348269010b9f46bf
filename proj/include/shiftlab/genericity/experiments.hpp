#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "shiftlab/dimension/local_dims.hpp"
#include "shiftlab/genericity/periodize.hpp"
#include "shiftlab/genericity/weak_distance.hpp"
#include "shiftlab/recurrence/rates.hpp"
#include "shiftlab/util/parallel.hpp"
#include "shiftlab/util/stats.hpp"

namespace shiftlab {

struct HdCollapseOptions {
  std::vector<std::size_t> periods{8, 32, 128};
  std::size_t replicates = 30;
  std::size_t weak_budget = 4000;
  ScaleGrid dim_grid = ScaleGrid::dyadic(12, 20);
  std::size_t dim_points = 30;
  LocalDimOptions local;
  // log k / log t <= 0.05 needs t >= k^20, hence the very fine rate grid
  ScaleGrid rate_grid{std::ldexp(1.0, -150), 0.5, 8, 0};
  std::uint64_t horizon = 1000;
  unsigned workers = 1;
};

struct PdBlowupOptions {
  std::vector<double> etas{0.1, 0.01, 0.001};
  std::size_t replicates = 30;
  std::size_t weak_budget = 4000;
  ScaleGrid profile_grid = ScaleGrid::dyadic(3, 10);
  std::size_t profile_points = 5;
  LocalDimOptions local;
  unsigned workers = 1;
};

struct HdStage {
  std::size_t period = 0;
  std::vector<double> weak_distances;  // one per replicate
  double median_weak_distance = 0.0;
  std::vector<std::string> warnings;
  bool distinct = false;
  double entropy = 0.0;
  DimensionReport dims;
  std::vector<RateEstimate> rates;  // one per orbit phase sampled
  double max_upper_rate = 0.0;
  std::string error;
};

struct PdStage {
  double eta = 0.0;
  std::vector<double> weak_distances;
  double median_weak_distance = 0.0;
  std::vector<LocalDimEstimate> profiles;
  std::vector<double> fine_slopes;  // increment slope at the finest profile scale
  double min_fine_slope = 0.0;
  std::string error;
};

struct ExperimentReport {
  std::string id;
  std::uint64_t seed = 0;
  std::string family_id;
  std::vector<HdStage> hd;
  std::vector<PdStage> pd;
  std::vector<std::string> failures;
};

inline std::uint64_t replicate_seed(std::uint64_t seed, std::size_t cell, std::size_t r) {
  return derive_seed(derive_seed(seed, stream::replicate, cell), stream::replicate, r);
}

/// Periodization of mu at each period: weak distance to mu over replicate
/// draws, then dimensions and recurrence rates of the first replicate.
inline ExperimentReport run_hd_collapse(const MeasureModel& mu, const HdCollapseOptions& opts, std::uint64_t seed) {
  ExperimentReport rep;
  rep.id = "hd-collapse";
  rep.seed = seed;
  const TestFunctionFamily fam = default_test_family(mu.alphabet());
  rep.family_id = fam.id;
  for (std::size_t cell = 0; cell < opts.periods.size(); ++cell) {
    HdStage st;
    st.period = opts.periods[cell];
    try {
      st.weak_distances = parallel_map(opts.replicates, opts.workers, [&](std::size_t r) {
        const std::uint64_t rs = replicate_seed(seed, cell, r);
        const MeasureModel nu = periodize(mu, st.period, rs).model;
        return weak_distance(mu, nu, fam, opts.weak_budget, derive_seed(rs, stream::pair)).value;
      });
      st.median_weak_distance = median(st.weak_distances);

      const PeriodizeResult first = periodize(mu, st.period, replicate_seed(seed, cell, 0));
      st.warnings = first.warnings;
      st.distinct = first.model.as<PeriodicOrbit>()->distinct;
      st.entropy = analytic_entropy(first.model).value_or(std::numeric_limits<double>::quiet_NaN());
      MeasureDimsOptions mdo{opts.local, 0.05, opts.workers};
      st.dims = measure_dims(first.model, opts.dim_points, opts.dim_grid, mdo, derive_seed(seed, stream::point, cell));
      const std::size_t phases = std::min<std::size_t>(st.period, 8);
      st.rates = parallel_map(phases, opts.workers, [&](std::size_t i) {
        const BilateralSequence x = sample_point_stratified(first.model, seed, i * st.period / phases);
        return recurrence_rates(x, opts.rate_grid, opts.horizon);
      });
      for (const auto& r : st.rates) st.max_upper_rate = std::max(st.max_upper_rate, r.upper);
    } catch (const std::exception& e) {
      st.error = e.what();
      rep.failures.push_back("period " + std::to_string(st.period) + ": " + e.what());
    }
    rep.hd.push_back(std::move(st));
  }
  return rep;
}

/// Noisy periodizations of the orbit of `block` at each noise width: weak
/// distance to the periodic base and local-dimension profiles at sampled
/// points. eta = 0 is the periodic base itself.
inline ExperimentReport run_pd_blowup(const std::vector<double>& block, const PdBlowupOptions& opts,
                                      std::uint64_t seed) {
  ExperimentReport rep;
  rep.id = "pd-blowup";
  rep.seed = seed;
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const MeasureModel base = MeasureModel::periodic(unit, block, false);
  const TestFunctionFamily fam = default_test_family(unit);
  rep.family_id = fam.id;
  for (std::size_t cell = 0; cell < opts.etas.size(); ++cell) {
    PdStage st;
    st.eta = opts.etas[cell];
    try {
      if (st.eta < 0.0) throw DomainError("noise width must be non-negative");
      const MeasureModel nu = st.eta == 0.0 ? base : MeasureModel::noisy(block, st.eta);
      st.weak_distances = parallel_map(opts.replicates, opts.workers, [&](std::size_t r) {
        return weak_distance(base, nu, fam, opts.weak_budget, replicate_seed(seed, cell, r)).value;
      });
      st.median_weak_distance = median(st.weak_distances);
      st.profiles = parallel_map(opts.profile_points, opts.workers, [&](std::size_t i) {
        const BilateralSequence x = sample_point(nu, point_seed(derive_seed(seed, stream::point, cell), i));
        return local_dims(nu, x, opts.profile_grid, opts.local, replicate_seed(seed, cell, i));
      });
      st.min_fine_slope = std::numeric_limits<double>::infinity();
      for (const auto& p : st.profiles) {
        st.fine_slopes.push_back(p.slopes.back());
        st.min_fine_slope = std::min(st.min_fine_slope, p.slopes.back());
      }
    } catch (const std::exception& e) {
      st.error = e.what();
      rep.failures.push_back("eta " + std::to_string(st.eta) + ": " + e.what());
    }
    rep.pd.push_back(std::move(st));
  }
  return rep;
}

}  // namespace shiftlab
