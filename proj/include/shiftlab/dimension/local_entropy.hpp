#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "shiftlab/core/metric.hpp"
#include "shiftlab/measures/ball_mass.hpp"
#include "shiftlab/measures/coordinate_law.hpp"
#include "shiftlab/measures/sampling.hpp"

namespace shiftlab {

// Dynamical ball B(x,n,eps) = {z : d(T^i z, T^i x) <= eps for 0 <= i < n}.
// With (T^i z)_m = z_{m-i}, constraint i reads
//   sum_j 2^{-|j+i|} rho(z_j,x_j)/(1+rho(z_j,x_j)) <= eps,
// so all n constraints live on the coordinate window [-(n-1)-D, D].

struct LocalEntropyEstimate {
  double rate = 0.0;  // -(1/n) log mu(B(x,n,eps)), +inf on zero mass
  BallMassEstimate mass;
  bool infinite = false;
};

namespace detail {

struct DynamicalWindow {
  std::int64_t first = 0;
  std::int64_t last = 0;
  int depth = 0;
  std::size_t n = 1;

  /// Weight of coordinate j in constraint i, zero beyond the truncation depth.
  double weight(std::int64_t j, std::size_t i) const {
    const std::int64_t m = j + static_cast<std::int64_t>(i);
    return (m < -depth || m > depth) ? 0.0 : coordinate_weight(m);
  }

  /// Core coordinates -(n-1)..0 first, then alternately outward.
  std::vector<std::int64_t> order() const {
    std::vector<std::int64_t> out;
    for (std::int64_t j = 0; j >= first && j >= -static_cast<std::int64_t>(n - 1); --j) out.push_back(j);
    std::int64_t right = 1, left = -static_cast<std::int64_t>(n);
    while (right <= last || left >= first) {
      if (right <= last) out.push_back(right++);
      if (left >= first) out.push_back(left--);
    }
    return out;
  }
};

inline DynamicalWindow dynamical_window(std::size_t n, int depth) {
  return {-static_cast<std::int64_t>(n - 1) - depth, depth, depth, n};
}

/// Branch-and-bound over discrete coordinates against n simultaneous
/// threshold constraints.
class MultiThresholdSearch {
 public:
  struct Coordinate {
    std::vector<std::pair<double, double>> options;  // (rho/(1+rho), probability)
    std::vector<double> weights;                    // per constraint
  };

  MultiThresholdSearch(std::vector<Coordinate> coords, std::size_t constraints, std::size_t node_limit)
      : coords_(std::move(coords)), k_(constraints), limit_(node_limit),
        rem_((coords_.size() + 1) * constraints, 0.0) {
    for (std::size_t p = coords_.size(); p-- > 0;) {
      double cmax = 0.0;
      for (const auto& o : coords_[p].options) cmax = std::max(cmax, o.first);
      for (std::size_t i = 0; i < k_; ++i)
        rem_[p * k_ + i] = rem_[(p + 1) * k_ + i] + cmax * coords_[p].weights[i];
    }
  }

  struct Result {
    double accepted = 0.0;
    double undecided = 0.0;
  };

  Result run(double threshold) {
    threshold_ = threshold;
    result_ = {};
    nodes_ = 0;
    if (threshold < 0.0) return result_;
    std::vector<double> sums(k_, 0.0);
    visit(0, sums, 1.0);
    return result_;
  }

 private:
  void visit(std::size_t p, std::vector<double>& sums, double prob) {
    bool all_safe = true;
    for (std::size_t i = 0; i < k_; ++i) {
      if (sums[i] > threshold_) return;
      if (sums[i] + rem_[p * k_ + i] > threshold_) all_safe = false;
    }
    if (all_safe) {
      result_.accepted += prob;
      return;
    }
    if (++nodes_ > limit_) {
      result_.undecided += prob;
      return;
    }
    const Coordinate& c = coords_[p];
    for (const auto& [value, q] : c.options) {
      std::vector<double> next = sums;
      for (std::size_t i = 0; i < k_; ++i) next[i] += value * c.weights[i];
      visit(p + 1, next, prob * q);
    }
  }

  std::vector<Coordinate> coords_;
  std::size_t k_;
  std::size_t limit_;
  std::vector<double> rem_;
  double threshold_ = 0.0;
  std::size_t nodes_ = 0;
  Result result_;
};

inline bool in_dynamical_ball(const CoordinateWindow& xw, const BilateralSequence& z,
                              const DynamicalWindow& win, double eps) {
  const AlphabetSpec& a = z.alphabet();
  std::vector<double> c(static_cast<std::size_t>(win.last - win.first + 1));
  for (std::int64_t j = win.first; j <= win.last; ++j)
    c[static_cast<std::size_t>(j - win.first)] = bounded_rho(a.rho(xw(j), z[j]));
  for (std::size_t i = 0; i < win.n; ++i) {
    double sum = 0.0;
    for (std::int64_t m = -win.depth; m <= win.depth && sum <= eps; ++m)
      sum += coordinate_weight(m) * c[static_cast<std::size_t>(m - static_cast<std::int64_t>(i) - win.first)];
    if (sum > eps) return false;
  }
  return true;
}

}  // namespace detail

/// mu(B(x,n,eps)) and the local entropy rate -(1/n) log of it. Finite-alphabet
/// products and periodic orbits are handled exactly; other coordinates fall
/// back to Monte Carlo.
inline LocalEntropyEstimate local_entropy(const MeasureModel& model, const BilateralSequence& x, std::size_t n,
                                          double eps, const BallMassOptions& opts = {}) {
  if (n < 1) throw DomainError("local_entropy needs n >= 1");
  if (!(eps > 0.0)) throw DomainError("dynamical ball radius must be positive");
  if (!(x.alphabet() == model.alphabet())) throw DomainError("point and model use different alphabets");
  const int depth = truncation_depth(effective_tolerance(opts.tol, eps));
  const detail::DynamicalWindow win = detail::dynamical_window(n, depth);
  const CoordinateWindow xw(x, win.first, win.last);
  const AlphabetSpec& a = model.alphabet();
  const auto components = product_components(model);

  BallMassEstimate mass;
  mass.depth = depth;
  const bool exact = opts.force != MassMethod::monte_carlo &&
                     std::all_of(components.begin(), components.end(), [](const auto& c) { return c.discrete(); });
  if (exact) {
    const auto order = win.order();
    double log_total = -std::numeric_limits<double>::infinity();
    bool any_iid = false;
    for (const auto& c : components) {
      std::vector<detail::MultiThresholdSearch::Coordinate> coords;
      for (std::int64_t j : order) {
        detail::MultiThresholdSearch::Coordinate mc;
        for (auto [value, p] : discrete_contributions(c.law_at(j), a, xw(j), 1.0)) mc.options.emplace_back(value, p);
        for (std::size_t i = 0; i < n; ++i) mc.weights.push_back(win.weight(j, i));
        coords.push_back(std::move(mc));
      }
      any_iid = any_iid || c.kind == ProductComponent::Kind::iid;
      detail::MultiThresholdSearch search(std::move(coords), n, opts.node_limit);
      const auto hi = search.run(eps);
      const auto lo = search.run(eps - tail_bound(depth));
      mass.ci_high += c.weight * std::min(1.0, hi.accepted + hi.undecided);
      mass.ci_low += c.weight * lo.accepted;
      mass.censored = mass.censored || hi.undecided > 0.0 || lo.undecided > 0.0;
      if (hi.accepted > 0.0) log_total = log_add(log_total, std::log(c.weight) + std::log(hi.accepted));
    }
    mass.method = any_iid ? MassMethod::branch_and_bound : MassMethod::exact;
    mass.log_mean = log_total;
    mass.mean = std::exp(log_total);
    mass.ci_low = std::min(mass.ci_low, mass.mean);
    mass.ci_high = std::min(1.0, std::max(mass.ci_high, mass.mean));
  } else {
    std::size_t hits = 0;
    for (std::size_t s = 0; s < opts.budget; ++s) {
      const BilateralSequence z = sample_point(model, derive_seed(opts.seed, stream::monte_carlo, s));
      if (detail::in_dynamical_ball(xw, z, win, eps)) ++hits;
    }
    mass.method = MassMethod::monte_carlo;
    mass.samples = opts.budget;
    mass.mean = opts.budget ? static_cast<double>(hits) / static_cast<double>(opts.budget) : 0.0;
    const Interval ci = wilson_interval(mass.mean, opts.budget);
    mass.ci_low = ci.low;
    mass.ci_high = ci.high;
    mass.log_mean = detail::safe_log(mass.mean);
    mass.censored = hits == 0;
  }

  LocalEntropyEstimate est;
  est.mass = mass;
  est.infinite = mass.log_mean == -std::numeric_limits<double>::infinity();
  est.rate = est.infinite ? std::numeric_limits<double>::infinity() : -mass.log_mean / static_cast<double>(n);
  return est;
}

}  // namespace shiftlab
