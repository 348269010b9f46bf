#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "shiftlab/core/metric.hpp"

namespace shiftlab {

/// Symmetric matrix of pairwise distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  static DistanceMatrix from_points(const std::vector<BilateralSequence>& points, double tol) {
    DistanceMatrix m(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j) m.set(i, j, product_metric(points[i], points[j], tol));
    return m;
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

struct PackedBall {
  std::size_t center = 0;
  double radius = 0.0;
};

struct CoverSet {
  std::vector<std::size_t> members;
  double diameter = 0.0;
};

enum class PackingMode { packing, cover };

struct PackingCoverResult {
  double value = 0.0;
  std::vector<PackedBall> balls;   // packing witness
  std::vector<CoverSet> sets;      // cover witness
  double alpha = 1.0;
  double delta = 0.0;
  PackingMode mode = PackingMode::packing;
  bool optimal = false;
};

namespace detail {

inline std::vector<double> checked_radii(std::vector<double> radii, double alpha, double delta) {
  if (!(alpha > 0.0)) throw DomainError("gauge exponent alpha must be positive");
  if (!(delta > 0.0)) throw DomainError("scale cap delta must be positive");
  if (radii.empty()) throw DomainError("radius grid must be non-empty");
  for (double r : radii)
    if (!(r > 0.0) || r > delta / 2.0) throw DomainError("grid radii must lie in (0, delta/2]");
  std::sort(radii.begin(), radii.end(), std::greater<>());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

inline double gauge(double r, double alpha) { return std::pow(2.0 * r, alpha); }

inline bool fits(const DistanceMatrix& d, const std::vector<PackedBall>& chosen, std::size_t i, double r) {
  for (const auto& b : chosen)
    if (!(d(i, b.center) > r + b.radius)) return false;
  return true;
}

}  // namespace detail

/// Greedy lower bound for the radius-packing premeasure with gauge t^alpha.
/// Points with few close neighbours go first; each takes the largest grid
/// radius that keeps d(c_i, c_j) > r_i + r_j with the balls already placed.
inline PackingCoverResult greedy_packing(const DistanceMatrix& d, double alpha, double delta,
                                         std::vector<double> radius_grid) {
  const auto radii = detail::checked_radii(std::move(radius_grid), alpha, delta);
  PackingCoverResult res;
  res.alpha = alpha;
  res.delta = delta;
  const std::size_t n = d.size();
  std::vector<std::size_t> degree(n, 0), order(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && d(i, j) <= 2.0 * radii.front()) ++degree[i];
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });
  for (std::size_t i : order) {
    for (double r : radii) {
      if (detail::fits(d, res.balls, i, r)) {
        res.balls.push_back({i, r});
        res.value += detail::gauge(r, alpha);
        break;
      }
    }
  }
  return res;
}

inline PackingCoverResult greedy_packing(const std::vector<BilateralSequence>& points, double alpha,
                                         double delta, std::vector<double> radius_grid, double tol = 1e-12) {
  return greedy_packing(DistanceMatrix::from_points(points, tol), alpha, delta, std::move(radius_grid));
}

inline constexpr std::size_t kBruteForcePackingCap = 12;

/// Exact optimum over all subsets and grid radii, by depth-first search with
/// an optimistic bound. Refuses more than 12 points.
inline PackingCoverResult brute_force_packing(const DistanceMatrix& d, double alpha, double delta,
                                              std::vector<double> radius_grid) {
  const auto radii = detail::checked_radii(std::move(radius_grid), alpha, delta);
  if (d.size() > kBruteForcePackingCap)
    throw DomainError("brute_force_packing refuses more than 12 points");
  const std::size_t n = d.size();
  const double best_single = detail::gauge(radii.front(), alpha);

  PackingCoverResult best;
  best.alpha = alpha;
  best.delta = delta;
  best.optimal = true;
  std::vector<PackedBall> chosen;
  auto search = [&](auto&& self, std::size_t i, double value) -> void {
    if (value > best.value) {
      best.value = value;
      best.balls = chosen;
    }
    if (i == n) return;
    if (value + static_cast<double>(n - i) * best_single <= best.value) return;
    for (double r : radii) {
      if (!detail::fits(d, chosen, i, r)) continue;
      chosen.push_back({i, r});
      self(self, i + 1, value + detail::gauge(r, alpha));
      chosen.pop_back();
    }
    self(self, i + 1, value);
  };
  search(search, 0, 0.0);
  return best;
}

inline PackingCoverResult brute_force_packing(const std::vector<BilateralSequence>& points, double alpha,
                                              double delta, std::vector<double> radius_grid,
                                              double tol = 1e-12) {
  if (points.size() > kBruteForcePackingCap)
    throw DomainError("brute_force_packing refuses more than 12 points");
  return brute_force_packing(DistanceMatrix::from_points(points, tol), alpha, delta, std::move(radius_grid));
}

enum class CoverMode { singletons, balls };

/// Upper-bound proxy for the Hausdorff premeasure of a finite cloud.
/// Singletons give 0. Balls mode grows clusters greedily in index order,
/// keeping every cluster diameter <= delta, and sums diam^alpha.
inline PackingCoverResult greedy_cover_value(const DistanceMatrix& d, double alpha, double delta,
                                             CoverMode mode = CoverMode::singletons) {
  if (!(alpha > 0.0)) throw DomainError("gauge exponent alpha must be positive");
  if (!(delta > 0.0)) throw DomainError("scale cap delta must be positive");
  PackingCoverResult res;
  res.mode = PackingMode::cover;
  res.alpha = alpha;
  res.delta = delta;
  const std::size_t n = d.size();
  if (mode == CoverMode::singletons) {
    for (std::size_t i = 0; i < n; ++i) res.sets.push_back({{i}, 0.0});
    return res;
  }
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    CoverSet set{{i}, 0.0};
    used[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      double widest = set.diameter;
      for (std::size_t m : set.members) widest = std::max(widest, d(j, m));
      if (widest <= delta) {
        set.members.push_back(j);
        set.diameter = widest;
        used[j] = true;
      }
    }
    if (set.diameter > 0.0) res.value += std::pow(set.diameter, alpha);
    res.sets.push_back(std::move(set));
  }
  return res;
}

inline PackingCoverResult greedy_cover_value(const std::vector<BilateralSequence>& points, double alpha,
                                             double delta, CoverMode mode = CoverMode::singletons,
                                             double tol = 1e-12) {
  return greedy_cover_value(DistanceMatrix::from_points(points, tol), alpha, delta, mode);
}

}  // namespace shiftlab
