#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "shiftlab/dimension/scale_grid.hpp"
#include "shiftlab/measures/ball_mass.hpp"
#include "shiftlab/measures/sampling.hpp"
#include "shiftlab/util/parallel.hpp"
#include "shiftlab/util/random.hpp"
#include "shiftlab/util/stats.hpp"

namespace shiftlab {

/// Local-dimension statistics of mu at one point over a scale grid.
///
/// quotients[j] = log m(eps_j) / log eps_j is the raw dimension quotient.
/// slopes[j] = (log m_j - log m_{j-1}) / (log eps_j - log eps_{j-1}) is the
/// increment between neighbouring scales (slopes[0] is NaN). Both have the
/// same liminf/limsup along a geometric grid; the increments drop the
/// constant offset log m(eps0) and so settle at coarse scales. lower/upper
/// are taken over slopes, quotient_lower/quotient_upper over quotients.
struct LocalDimEstimate {
  std::vector<double> scales;
  std::vector<BallMassEstimate> masses;
  std::vector<double> quotients;
  std::vector<double> slopes;
  double lower = 0.0;
  double upper = 0.0;
  double quotient_lower = 0.0;
  double quotient_upper = 0.0;
  bool censored = false;
  bool off_support = false;  // some ball had certified zero mass
};

struct LocalDimOptions {
  double tol = 1e-6;
  std::size_t budget = 4000;
  BallMassOptions mass;  // tol, budget and seed are overwritten per call
};

namespace detail {

inline double quotient(double log_mass, double eps) {
  if (log_mass == -std::numeric_limits<double>::infinity()) return std::numeric_limits<double>::infinity();
  return log_mass / std::log(eps) + 0.0;  // no negative zero
}

inline void extract_bounds(LocalDimEstimate& est, std::size_t s_index) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo = inf, hi = -inf, qlo = inf, qhi = -inf;
  for (std::size_t j = s_index; j < est.scales.size(); ++j) {
    qlo = std::min(qlo, est.quotients[j]);
    qhi = std::max(qhi, est.quotients[j]);
    if (j == 0) continue;
    lo = std::min(lo, est.slopes[j]);
    hi = std::max(hi, est.slopes[j]);
  }
  if (hi < lo) lo = hi = est.quotients.back();  // one admissible scale, index 0
  est.lower = lo;
  est.upper = hi;
  est.quotient_lower = qlo;
  est.quotient_upper = qhi;
}

}  // namespace detail

inline LocalDimEstimate local_dims(const MeasureModel& model, const BilateralSequence& x,
                                   const ScaleGrid& grid, const LocalDimOptions& opts,
                                   std::uint64_t seed) {
  grid.validate();
  constexpr double inf = std::numeric_limits<double>::infinity();
  LocalDimEstimate est;
  est.scales = grid.scales();
  const std::size_t J = grid.count;
  std::vector<double> log_mass(J);
  for (std::size_t j = 0; j < J; ++j) {
    BallMassOptions mo = opts.mass;
    mo.tol = opts.tol;
    mo.budget = opts.budget;
    mo.seed = derive_seed(seed, stream::monte_carlo, j);
    est.masses.push_back(ball_mass(model, x, est.scales[j], mo));
    const BallMassEstimate& m = est.masses.back();
    log_mass[j] = m.log_mean;
    est.censored = est.censored || m.censored;
    if (m.ci_high == 0.0) est.off_support = true;
  }
  est.quotients.resize(J);
  est.slopes.assign(J, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 0; j < J; ++j) {
    est.quotients[j] = detail::quotient(log_mass[j], est.scales[j]);
    if (j == 0) continue;
    if (log_mass[j] == -inf) {
      est.slopes[j] = inf;
    } else if (log_mass[j - 1] == -inf) {
      est.slopes[j] = -inf;  // unreachable for a monotone mass, kept for completeness
    } else {
      est.slopes[j] = (log_mass[j] - log_mass[j - 1]) / (std::log(est.scales[j]) - std::log(est.scales[j - 1])) + 0.0;
    }
  }
  if (est.off_support || std::any_of(log_mass.begin(), log_mass.end(), [](double v) { return v == -inf; })) {
    est.censored = true;
  }
  detail::extract_bounds(est, grid.s_index);
  if (est.off_support) est.upper = inf;
  if (est.lower > est.upper) est.lower = est.upper;
  return est;
}

/// Quantile summary of local dimensions at mu-sampled points. Essential
/// bounds are approximated by trimmed order statistics.
struct DimensionReport {
  std::vector<LocalDimEstimate> samples;
  std::vector<std::uint64_t> point_seeds;
  double dimH_minus = 0.0;
  double dimH_plus = 0.0;
  double dimP_minus = 0.0;
  double dimP_plus = 0.0;
  double trim = 0.05;
  double censored_fraction = 0.0;
  bool unreliable = false;  // more than 20% of the samples censored
};

struct MeasureDimsOptions {
  LocalDimOptions local;
  double trim = 0.05;
  unsigned workers = 1;
};

inline DimensionReport summarize_dims(std::vector<LocalDimEstimate> samples, double trim) {
  DimensionReport r;
  r.trim = trim;
  std::vector<double> lowers, uppers;
  std::size_t censored = 0;
  for (const auto& s : samples) {
    lowers.push_back(s.lower);
    uppers.push_back(s.upper);
    censored += s.censored ? 1 : 0;
  }
  r.dimH_minus = trimmed_low(lowers, trim);
  r.dimH_plus = trimmed_high(lowers, trim);
  r.dimP_minus = trimmed_low(uppers, trim);
  r.dimP_plus = trimmed_high(uppers, trim);
  r.censored_fraction = samples.empty() ? 0.0 : static_cast<double>(censored) / static_cast<double>(samples.size());
  r.unreliable = r.censored_fraction > 0.2;
  r.samples = std::move(samples);
  return r;
}

inline std::uint64_t point_seed(std::uint64_t seed, std::size_t i) {
  return derive_seed(seed, stream::point, i);
}

inline DimensionReport measure_dims(const MeasureModel& model, std::size_t n_points, const ScaleGrid& grid,
                                    const MeasureDimsOptions& opts, std::uint64_t seed) {
  if (n_points < 30) throw DomainError("measure_dims needs at least 30 points");
  if (!(opts.trim >= 0.0 && opts.trim < 0.5)) throw DomainError("trim fraction must lie in [0, 0.5)");
  grid.validate();
  auto samples = parallel_map(n_points, opts.workers, [&](std::size_t i) {
    const BilateralSequence x = sample_point(model, point_seed(seed, i));
    return local_dims(model, x, grid, opts.local, derive_seed(seed, stream::replicate, i));
  });
  DimensionReport r = summarize_dims(std::move(samples), opts.trim);
  for (std::size_t i = 0; i < n_points; ++i) r.point_seeds.push_back(point_seed(seed, i));
  return r;
}

}  // namespace shiftlab
