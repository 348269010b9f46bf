#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace shiftlab {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// 95% Wilson score interval for a mean of [0,1]-valued samples. For
/// non-binary samples the variance is at most p(1-p), so the interval stays
/// conservative.
inline Interval wilson_interval(double mean, std::size_t n, double z = kZ95) {
  if (n == 0) return {0.0, 1.0};
  const double p = std::clamp(mean, 0.0, 1.0);
  const double nn = static_cast<double>(n);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, std::min(p, centre - half)), std::min(1.0, std::max(p, centre + half))};
}

/// z with P(|Z| > z) = alpha for a standard normal Z.
inline double normal_two_sided_quantile(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::erfc(mid / std::sqrt(2.0)) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Value at `fraction` of the sorted sample using the lower order statistic.
/// trimmed_quantile(v, 0.05) drops the floor(0.05 n) smallest entries.
inline double trimmed_low(std::vector<double> values, double trim) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const auto drop = static_cast<std::size_t>(std::floor(trim * static_cast<double>(values.size())));
  return values[std::min(drop, values.size() - 1)];
}

inline double trimmed_high(std::vector<double> values, double trim) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const auto drop = static_cast<std::size_t>(std::floor(trim * static_cast<double>(values.size())));
  return values[values.size() - 1 - std::min(drop, values.size() - 1)];
}

inline double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

/// Running mean and variance (Welford).
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double standard_error() const {
    return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace shiftlab
