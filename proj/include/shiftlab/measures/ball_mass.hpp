#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shiftlab/core/metric.hpp"
#include "shiftlab/core/sequence.hpp"
#include "shiftlab/measures/coordinate_law.hpp"
#include "shiftlab/measures/model.hpp"
#include "shiftlab/measures/sampling.hpp"
#include "shiftlab/util/random.hpp"
#include "shiftlab/util/stats.hpp"

namespace shiftlab {

enum class MassMethod { exact, branch_and_bound, convolution, monte_carlo, composite };

inline std::string to_string(MassMethod m) {
  switch (m) {
    case MassMethod::exact: return "exact";
    case MassMethod::branch_and_bound: return "branch-and-bound";
    case MassMethod::convolution: return "convolution";
    case MassMethod::monte_carlo: return "monte-carlo";
    case MassMethod::composite: return "composite";
  }
  return "unknown";
}

/// mu(B(x, eps)) for the closed ball, with a 95% interval. Deterministic
/// methods report the certified bracket coming from metric truncation (and
/// bin rounding for the convolution path) as [ci_low, ci_high].
struct BallMassEstimate {
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double log_mean = -std::numeric_limits<double>::infinity();  // natural log, exact for tiny masses
  MassMethod method = MassMethod::exact;
  std::size_t samples = 0;
  bool censored = false;
  int depth = 0;
};

struct BallMassOptions {
  double tol = 1e-6;            // metric tolerance; capped at eps / 100
  std::size_t budget = 4000;    // Monte Carlo samples
  std::uint64_t seed = 0;
  std::optional<MassMethod> force;  // only monte_carlo is meaningful
  std::size_t bins = 4096;
  std::size_t node_limit = 50'000'000;
  double max_convolution_work = 4e9;
  double max_relative_width = 1.0;  // MC estimates wider than this (relative) are censored
};

/// Metric tolerance actually used at radius eps.
inline double effective_tolerance(double tol, double eps) { return std::min(tol, eps / 100.0); }

namespace detail {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double safe_log(double v) { return v > 0.0 ? std::log(v) : neg_inf; }

/// Coordinates visited in order of decreasing weight: 0, -1, 1, -2, 2, ...
inline std::vector<std::int64_t> weight_order(int depth) {
  std::vector<std::int64_t> order{0};
  for (std::int64_t k = 1; k <= depth; ++k) {
    order.push_back(-k);
    order.push_back(k);
  }
  return order;
}

struct ComponentMass {
  double low = 0.0;
  double high = 0.0;
  double log_mean = neg_inf;
  bool censored = false;
  std::size_t samples = 0;
  MassMethod method = MassMethod::exact;
};

// ---- exact: point masses on one orbit point -------------------------------

inline ComponentMass block_mass(const ProductComponent& c, const AlphabetSpec& a,
                                const CoordinateWindow& xw, double eps, int depth) {
  const double tail = tail_bound(depth);
  double sum = 0.0;
  bool within = true;
  for (std::int64_t n : weight_order(depth)) {
    sum += coordinate_weight(n) * bounded_rho(a.rho(xw(n), c.block_symbol(n)));
    if (sum > eps) {
      within = false;
      break;
    }
  }
  ComponentMass m;
  m.method = MassMethod::exact;
  m.high = within ? 1.0 : 0.0;
  m.low = (within && sum <= eps - tail) ? 1.0 : 0.0;
  m.log_mean = within ? 0.0 : neg_inf;
  return m;
}

// ---- branch-and-bound over discrete coordinate contributions --------------

struct DiscreteCoordinate {
  std::vector<std::pair<double, double>> options;  // (contribution, probability)
  double max_contribution = 0.0;
};

/// P(sum of independent contributions <= threshold). Subtrees whose
/// worst case stays under the threshold are accepted whole; subtrees already
/// over it are dropped. Mass left when the node budget runs out is reported
/// as undecided.
class ThresholdSearch {
 public:
  ThresholdSearch(const std::vector<DiscreteCoordinate>& coords, std::size_t node_limit)
      : coords_(coords), suffix_(coords.size() + 1, 0.0), limit_(node_limit) {
    for (std::size_t j = coords.size(); j-- > 0;)
      suffix_[j] = suffix_[j + 1] + coords[j].max_contribution;
  }

  struct Result {
    double accepted = 0.0;
    double undecided = 0.0;
    std::size_t nodes = 0;
  };

  Result run(double threshold) {
    threshold_ = threshold;
    result_ = {};
    if (threshold >= 0.0) visit(0, 0.0, 1.0);
    return result_;
  }

 private:
  void visit(std::size_t j, double sum, double prob) {
    if (sum > threshold_) return;
    if (sum + suffix_[j] <= threshold_) {
      result_.accepted += prob;
      return;
    }
    if (++result_.nodes > limit_) {
      result_.undecided += prob;
      return;
    }
    for (const auto& [c, q] : coords_[j].options) visit(j + 1, sum + c, prob * q);
  }

  const std::vector<DiscreteCoordinate>& coords_;
  std::vector<double> suffix_;
  std::size_t limit_;
  double threshold_ = 0.0;
  Result result_;
};

inline ComponentMass branch_and_bound_mass(const ProductComponent& c, const AlphabetSpec& a,
                                           const CoordinateWindow& xw, double eps, int depth,
                                           std::size_t node_limit) {
  std::vector<DiscreteCoordinate> coords;
  for (std::int64_t n : weight_order(depth)) {
    DiscreteCoordinate dc;
    dc.options = discrete_contributions(c.law_at(n), a, xw(n), coordinate_weight(n));
    for (const auto& [value, p] : dc.options) dc.max_contribution = std::max(dc.max_contribution, value);
    coords.push_back(std::move(dc));
  }
  ThresholdSearch search(coords, node_limit);
  const auto upper = search.run(eps);
  const auto lower = search.run(eps - tail_bound(depth));
  ComponentMass m;
  m.method = MassMethod::branch_and_bound;
  m.high = std::min(1.0, upper.accepted + upper.undecided);
  m.low = lower.accepted;
  m.censored = upper.undecided > 0.0 || lower.undecided > 0.0;
  m.log_mean = safe_log(upper.accepted);
  return m;
}

// ---- bracketed convolution for continuous coordinates ---------------------

/// Distribution of a partial sum on the grid {0, h, ..., B h}, stored with a
/// running log scale so that masses far below the double range survive.
class ScaledHistogram {
 public:
  explicit ScaledHistogram(std::size_t last_index) : mass_(last_index + 1, 0.0) { mass_[0] = 1.0; }

  bool empty() const { return hi_ < lo_; }

  void convolve(const std::vector<double>& pmf, std::size_t pmf_last) {
    if (empty()) return;
    const std::size_t last = mass_.size() - 1;
    std::vector<double> next(mass_.size(), 0.0);
    for (std::size_t i = lo_; i <= hi_; ++i) {
      const double a = mass_[i];
      if (a == 0.0) continue;
      const std::size_t top = std::min(pmf_last, last - i);
      double* out = next.data() + i;
      for (std::size_t b = 0; b <= top; ++b) out[b] += a * pmf[b];
    }
    mass_.swap(next);
    lo_ = mass_.size();
    hi_ = 0;
    double peak = 0.0;
    for (std::size_t i = 0; i <= last; ++i) {
      if (mass_[i] > 0.0) {
        lo_ = std::min(lo_, i);
        hi_ = i;
        peak = std::max(peak, mass_[i]);
      }
    }
    if (empty()) return;
    if (peak < 1e-150) {
      for (std::size_t i = lo_; i <= hi_; ++i) mass_[i] /= peak;
      log_scale_ += std::log(peak);
    }
  }

  /// log of the total mass at indices <= limit.
  double log_mass_up_to(std::size_t limit) const {
    if (empty()) return neg_inf;
    double total = 0.0;
    for (std::size_t i = lo_; i <= std::min(limit, hi_); ++i) total += mass_[i];
    return safe_log(total) + log_scale_;
  }

 private:
  std::vector<double> mass_;
  std::size_t lo_ = 0;
  std::size_t hi_ = 0;
  double log_scale_ = 0.0;
};

inline std::size_t last_nonzero(const std::vector<double>& p) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) last = i;
  return last;
}

/// Rounding every contribution down to the grid can only raise P(sum <= eps)
/// and rounding up (against eps minus the truncation tail) can only lower it,
/// so the pair brackets the true mass.
inline ComponentMass convolution_mass(const ProductComponent& c, const AlphabetSpec& a,
                                      const CoordinateWindow& xw, double eps, int depth,
                                      std::size_t bins) {
  const double h = eps / static_cast<double>(bins);
  const double reduced = eps - tail_bound(depth);
  const std::size_t lo_last =
      reduced >= 0.0 ? std::min(bins, static_cast<std::size_t>(std::floor(reduced / h))) : 0;

  ScaledHistogram upper(bins);
  ScaledHistogram lower(lo_last);
  std::vector<double> floor_pmf(bins + 1), ceil_pmf(bins + 1);

  for (std::int64_t n : weight_order(depth)) {
    const CoordinateLaw law = c.law_at(n);
    const double x = xw(n);
    const double w = coordinate_weight(n);
    auto below = [&](double v) { return prob_rho_lt(law, a, x, rho_for_contribution(v / w)); };
    auto at_most = [&](double v) { return prob_rho_le(law, a, x, rho_for_contribution(v / w)); };

    double prev_lt = 0.0;
    double prev_le = at_most(0.0);
    ceil_pmf[0] = prev_le;
    for (std::size_t b = 0; b <= bins; ++b) {
      const double edge = h * static_cast<double>(b + 1);
      const double lt = below(edge);
      floor_pmf[b] = std::max(0.0, lt - prev_lt);
      prev_lt = lt;
      if (b + 1 <= bins) {
        const double le = at_most(edge);
        ceil_pmf[b + 1] = std::max(0.0, le - prev_le);
        prev_le = le;
      }
    }
    upper.convolve(floor_pmf, last_nonzero(floor_pmf));
    lower.convolve(ceil_pmf, last_nonzero(ceil_pmf));
    if (upper.empty()) break;
  }

  ComponentMass m;
  m.method = MassMethod::convolution;
  const double log_hi = upper.log_mass_up_to(bins);
  const double log_lo = reduced >= 0.0 ? lower.log_mass_up_to(lo_last) : neg_inf;
  m.high = std::exp(log_hi);
  m.low = std::exp(log_lo);
  m.log_mean = log_lo > neg_inf ? 0.5 * (log_lo + log_hi) : log_hi;
  return m;
}

// ---- Monte Carlo ------------------------------------------------------------

/// Truncated distance to a realised window, abandoned once it exceeds cap.
inline double distance_to_window(const CoordinateWindow& xw, const BilateralSequence& y, int depth,
                                 double cap) {
  const AlphabetSpec& a = y.alphabet();
  double sum = bounded_rho(a.rho(xw(0), y[0]));
  for (std::int64_t k = 1; k <= depth && sum <= cap; ++k) {
    const double w = coordinate_weight(k);
    sum += w * (bounded_rho(a.rho(xw(-k), y[-k])) + bounded_rho(a.rho(xw(k), y[k])));
  }
  return sum;
}

template <typename Sampler>
ComponentMass monte_carlo_mass(Sampler&& sample, const CoordinateWindow& xw, double eps, int depth,
                               const BallMassOptions& opts) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < opts.budget; ++i) {
    const BilateralSequence y = sample(derive_seed(opts.seed, stream::monte_carlo, i));
    if (distance_to_window(xw, y, depth, eps) <= eps) ++hits;
  }
  ComponentMass m;
  m.method = MassMethod::monte_carlo;
  m.samples = opts.budget;
  const double p = opts.budget ? static_cast<double>(hits) / static_cast<double>(opts.budget) : 0.0;
  const Interval ci = wilson_interval(p, opts.budget);
  m.low = ci.low;
  m.high = ci.high;
  m.log_mean = safe_log(p);
  m.censored = hits == 0 || (ci.high - ci.low) > opts.max_relative_width * p;
  return m;
}

}  // namespace detail

/// mu(B(x, eps)). Periodic orbits are counted exactly, finite-alphabet
/// products use branch-and-bound, continuous coordinates use the bracketed
/// convolution, and Monte Carlo covers whatever is too expensive otherwise.
inline BallMassEstimate ball_mass(const MeasureModel& model, const BilateralSequence& x, double eps,
                                  const BallMassOptions& opts = {}) {
  if (!(eps > 0.0)) throw DomainError("ball radius must be positive");
  if (!(opts.tol > 0.0)) throw DomainError("metric tolerance must be positive");
  if (!(x.alphabet() == model.alphabet())) throw DomainError("point and model use different alphabets");

  const double tol = effective_tolerance(opts.tol, eps);
  const int depth = truncation_depth(tol);
  const CoordinateWindow xw(x, -depth, depth);
  const AlphabetSpec& a = model.alphabet();

  BallMassEstimate est;
  est.depth = depth;

  if (opts.force == MassMethod::monte_carlo) {
    const auto m = detail::monte_carlo_mass([&](std::uint64_t s) { return sample_point(model, s); }, xw,
                                            eps, depth, opts);
    est.mean = std::exp(m.log_mean);
    est.ci_low = m.low;
    est.ci_high = m.high;
    est.log_mean = m.log_mean;
    est.method = m.method;
    est.samples = m.samples;
    est.censored = m.censored;
    return est;
  }

  const auto components = product_components(model);
  const double conv_work = static_cast<double>(2 * depth + 1) * static_cast<double>(opts.bins + 1) *
                           static_cast<double>(opts.bins + 1);
  std::optional<MassMethod> common;
  double log_total = detail::neg_inf;
  for (std::size_t ci = 0; ci < components.size(); ++ci) {
    const ProductComponent& c = components[ci];
    detail::ComponentMass m;
    if (c.kind == ProductComponent::Kind::block) {
      m = detail::block_mass(c, a, xw, eps, depth);
    } else if (c.discrete()) {
      m = detail::branch_and_bound_mass(c, a, xw, eps, depth, opts.node_limit);
    } else if (conv_work <= opts.max_convolution_work) {
      m = detail::convolution_mass(c, a, xw, eps, depth, opts.bins);
    } else {
      BallMassOptions sub = opts;
      sub.seed = derive_seed(opts.seed, stream::mixture, ci);
      m = detail::monte_carlo_mass([&](std::uint64_t s) { return sample_component(a, c, s); }, xw, eps,
                                   depth, sub);
    }
    est.ci_low += c.weight * m.low;
    est.ci_high += c.weight * m.high;
    est.samples += m.samples;
    est.censored = est.censored || m.censored;
    if (m.log_mean > detail::neg_inf) log_total = log_add(log_total, std::log(c.weight) + m.log_mean);
    if (!common) common = m.method;
    else if (*common != m.method) common = MassMethod::composite;
  }
  est.method = common.value_or(MassMethod::exact);
  est.log_mean = log_total;
  est.mean = std::exp(log_total);
  est.ci_low = std::min(est.ci_low, est.mean);
  est.ci_high = std::min(1.0, std::max(est.ci_high, est.mean));
  return est;
}

/// f^eps_x(y): 1 on d <= eps, 2 - d/eps on [eps, 2 eps], 0 beyond.
inline double mollifier_from_distance(double d, double eps) {
  if (d <= eps) return 1.0;
  if (d >= 2.0 * eps) return 0.0;
  return 2.0 - d / eps;
}

inline double mollifier_value(const BilateralSequence& x, const BilateralSequence& y, double eps) {
  if (!(eps > 0.0)) throw DomainError("mollifier scale must be positive");
  return mollifier_from_distance(product_metric(x, y, eps / 100.0), eps);
}

/// f_{x,eps}(mu) = integral of f^eps_x d mu, by Monte Carlo with a Wilson
/// interval.
inline BallMassEstimate mollified_mass(const MeasureModel& model, const BilateralSequence& x, double eps,
                                       std::size_t budget, std::uint64_t seed) {
  if (!(eps > 0.0)) throw DomainError("mollifier scale must be positive");
  if (budget < 1000) throw DomainError("mollified_mass needs a budget of at least 1000 samples");
  const int depth = truncation_depth(eps / 100.0);
  const CoordinateWindow xw(x, -depth, depth);
  double total = 0.0;
  for (std::size_t i = 0; i < budget; ++i) {
    const BilateralSequence y = sample_point(model, derive_seed(seed, stream::monte_carlo, i));
    total += mollifier_from_distance(detail::distance_to_window(xw, y, depth, 2.0 * eps), eps);
  }
  BallMassEstimate est;
  est.method = MassMethod::monte_carlo;
  est.samples = budget;
  est.depth = depth;
  est.mean = total / static_cast<double>(budget);
  const Interval ci = wilson_interval(est.mean, budget);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.log_mean = detail::safe_log(est.mean);
  est.censored = est.mean == 0.0;
  return est;
}

}  // namespace shiftlab
