#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "shiftlab/dimension/scale_grid.hpp"
#include "shiftlab/recurrence/return_times.hpp"

namespace shiftlab {

/// Hitting times over a scale grid with the rate quotients
/// log tau_{1/t} / log t, t = 1/eps_j.
///
/// A censored scale only certifies tau > horizon, i.e. a rate of at least
/// log(horizon)/log t; that bound is stored in rates[j]. lower ignores
/// censored scales; upper includes their bounds and is then flagged as a
/// lower bound itself. With every admissible scale censored, lower falls back
/// to the smallest implied bound and fully_censored is set.
struct RateEstimate {
  std::vector<double> scales;
  std::vector<HittingTime> times;
  std::vector<double> rates;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t horizon = 0;
  bool upper_is_bound = false;
  bool fully_censored = false;

  std::size_t censored_count() const {
    return static_cast<std::size_t>(std::count_if(times.begin(), times.end(), [](const auto& t) { return t.censored; }));
  }
};

inline RateEstimate rates_from_times(const ScaleGrid& grid, std::vector<HittingTime> times, std::uint64_t horizon) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  RateEstimate est;
  est.scales = grid.scales();
  est.times = std::move(times);
  est.horizon = horizon;
  double lo = inf, hi = -inf, bound_lo = inf;
  for (std::size_t j = 0; j < est.scales.size(); ++j) {
    const double log_t = -std::log(est.scales[j]);
    const HittingTime& h = est.times[j];
    const double rate = std::log(static_cast<double>(h.censored ? horizon : h.value)) / log_t;
    est.rates.push_back(rate);
    if (j < grid.s_index) continue;
    hi = std::max(hi, rate);
    if (h.censored) {
      est.upper_is_bound = true;
      bound_lo = std::min(bound_lo, rate);
    } else {
      lo = std::min(lo, rate);
    }
  }
  est.fully_censored = lo == inf;
  est.lower = est.fully_censored ? bound_lo : lo;
  est.upper = hi;
  return est;
}

inline void require_rate_grid(const ScaleGrid& grid) {
  grid.validate();
  if (!(grid.eps0 < 1.0)) throw DomainError("rate grids need eps0 < 1 so that log t > 0");
}

/// Lower and upper recurrence rates of x along the grid.
inline RateEstimate recurrence_rates(const BilateralSequence& x, const ScaleGrid& grid, std::uint64_t horizon) {
  require_rate_grid(grid);
  return rates_from_times(grid, return_times(x, grid.scales(), horizon), horizon);
}

/// Waiting-time indicators of x into the balls around y.
inline RateEstimate waiting_rates(const BilateralSequence& x, const BilateralSequence& y, const ScaleGrid& grid,
                                  std::uint64_t horizon) {
  require_rate_grid(grid);
  return rates_from_times(grid, entrance_times(x, y, grid.scales(), horizon), horizon);
}

}  // namespace shiftlab
