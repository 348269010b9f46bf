#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/measures/model.hpp"
#include "shiftlab/measures/sampling.hpp"
#include "shiftlab/util/random.hpp"

namespace shiftlab {

struct PeriodizeResult {
  MeasureModel model;
  std::vector<std::string> warnings;
  std::size_t resampled = 0;  // collisions redrawn
  bool perturbed = false;     // fell back to minimal-spacing perturbation
};

inline constexpr int kCollisionAttempts = 100;
inline constexpr double kMinimalSpacing = 1e-9;

namespace detail {

inline bool has_collision(const std::vector<double>& block, std::size_t i) {
  for (std::size_t j = 0; j < block.size(); ++j)
    if (j != i && block[j] == block[i]) return true;
  return false;
}

/// Sorts values and pushes them apart to spacing >= kMinimalSpacing inside
/// [0, 1], then restores the original order.
inline void spread_apart(std::vector<double>& block) {
  std::vector<std::size_t> idx(block.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return block[a] < block[b]; });
  for (std::size_t r = 1; r < idx.size(); ++r)
    block[idx[r]] = std::max(block[idx[r]], block[idx[r - 1]] + kMinimalSpacing);
  const double overflow = block[idx.back()] - 1.0;
  if (overflow > 0.0)
    for (double& v : block) v = std::max(0.0, v - overflow);
}

}  // namespace detail

/// Periodic measure built from the block x_0..x_{s-1} of a mu-distributed
/// point. On the unit interval the block is made pairwise distinct (colliding
/// entries are redrawn, then perturbed); on finite alphabets distinctness is
/// not attempted.
inline PeriodizeResult periodize(const MeasureModel& model, std::size_t s, std::uint64_t seed) {
  if (s < 1) throw DomainError("period must be at least 1");
  const AlphabetSpec& a = model.alphabet();
  const BilateralSequence x = sample_point(model, derive_seed(seed, stream::point, 0));
  std::vector<double> block(s);
  x.realize(0, block);

  PeriodizeResult res{MeasureModel::periodic(a, block, false), {}, 0, false};
  if (a.is_finite()) {
    if (s > a.size)
      res.warnings.push_back("period " + std::to_string(s) + " exceeds alphabet size " + std::to_string(a.size) +
                             "; coordinates cannot be distinct");
    return res;
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (int attempt = 0; attempt < kCollisionAttempts && detail::has_collision(block, i); ++attempt) {
      const auto key = static_cast<std::uint64_t>(i) * kCollisionAttempts + static_cast<std::uint64_t>(attempt);
      block[i] = sample_point(model, derive_seed(seed, stream::collision, key))[0];
      ++res.resampled;
    }
  }
  bool collide = false;
  for (std::size_t i = 0; i < s && !collide; ++i) collide = detail::has_collision(block, i);
  if (collide) {
    detail::spread_apart(block);
    res.perturbed = true;
    res.warnings.push_back("collisions persisted after resampling; block perturbed to minimal spacing");
  }
  res.model = MeasureModel::periodic(a, std::move(block), true);
  return res;
}

}  // namespace shiftlab
