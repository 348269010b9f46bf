#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "shiftlab/core/alphabet.hpp"
#include "shiftlab/core/sequence.hpp"

namespace shiftlab {

// Product metric d(x,y) = sum_n 2^{-|n|} rho(x_n,y_n) / (1 + rho(x_n,y_n)).
// Both built-in alphabets have rho <= 1, so every term is at most 2^{-|n|}/2
// and the tail beyond |n| = N is at most 2^{-N}.

/// Truncation depth N = ceil(log2(4 / tol)); the dropped tail is < tol / 4.
inline int truncation_depth(double tol) {
  if (!(tol > 0.0)) throw DomainError("metric tolerance must be positive");
  return std::max(0, static_cast<int>(std::ceil(std::log2(4.0 / tol))));
}

/// Upper bound on sum_{|n| > depth} of the metric terms.
inline double tail_bound(int depth) { return std::ldexp(1.0, -depth); }

/// 2^{-|n|}.
inline double coordinate_weight(std::int64_t n) {
  return std::ldexp(1.0, -static_cast<int>(n < 0 ? -n : n));
}

struct MetricEvaluation {
  double value = 0.0;      // truncated sum, d - tail_bound <= value <= d
  int depth = 0;           // coordinates |n| <= depth were summed
  double tail_bound = 0.0;
};

inline void require_same_alphabet(const BilateralSequence& x, const BilateralSequence& y) {
  if (!(x.alphabet() == y.alphabet()))
    throw DomainError("sequences over different alphabets: " + x.alphabet().describe() + " vs " +
                      y.alphabet().describe());
}

/// Sum over |n| <= depth, visiting n = 0, -1, 1, -2, 2, ...
inline double truncated_distance(const BilateralSequence& x, const BilateralSequence& y, int depth) {
  require_same_alphabet(x, y);
  const AlphabetSpec& a = x.alphabet();
  double sum = bounded_rho(a.rho(x[0], y[0]));
  for (std::int64_t k = 1; k <= depth; ++k) {
    const double w = coordinate_weight(k);
    sum += w * bounded_rho(a.rho(x[-k], y[-k]));
    sum += w * bounded_rho(a.rho(x[k], y[k]));
  }
  return sum;
}

inline MetricEvaluation evaluate_metric(const BilateralSequence& x, const BilateralSequence& y,
                                        double tol) {
  const int depth = truncation_depth(tol);
  return {truncated_distance(x, y, depth), depth, tail_bound(depth)};
}

/// d(x,y) to within tol.
inline double product_metric(const BilateralSequence& x, const BilateralSequence& y, double tol) {
  return evaluate_metric(x, y, tol).value;
}

/// Closed-ball membership d_hat(x,y) <= r + tol, stopping as soon as the
/// partial sum exceeds the threshold.
inline bool within_ball(const BilateralSequence& x, const BilateralSequence& y, double r, double tol) {
  require_same_alphabet(x, y);
  const AlphabetSpec& a = x.alphabet();
  const int depth = truncation_depth(tol);
  const double threshold = r + tol;
  double sum = bounded_rho(a.rho(x[0], y[0]));
  if (sum > threshold) return false;
  for (std::int64_t k = 1; k <= depth; ++k) {
    const double w = coordinate_weight(k);
    sum += w * bounded_rho(a.rho(x[-k], y[-k]));
    sum += w * bounded_rho(a.rho(x[k], y[k]));
    if (sum > threshold) return false;
  }
  return true;
}

/// T^k x.
inline BilateralSequence shift(const BilateralSequence& x, std::int64_t k) { return x.shifted(k); }

/// The full shift over an alphabet, with the Lipschitz constants of T and
/// T^{-1} for the product metric.
struct ShiftSystem {
  AlphabetSpec alphabet;
  double lipschitz_forward = 2.0;
  double lipschitz_backward = 2.0;
  double metric_tolerance = 1e-12;

  void validate() const {
    if (lipschitz_forward < 1.0 || lipschitz_backward < 1.0)
      throw DomainError("Lipschitz constants must be >= 1");
    if (!(metric_tolerance > 0.0)) throw DomainError("metric tolerance must be positive");
  }

  BilateralSequence forward(const BilateralSequence& x) const { return x.shifted(1); }
  BilateralSequence backward(const BilateralSequence& x) const { return x.shifted(-1); }
  double distance(const BilateralSequence& x, const BilateralSequence& y) const {
    return product_metric(x, y, metric_tolerance);
  }
};

}  // namespace shiftlab
