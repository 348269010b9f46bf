#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "shiftlab/core/sequence.hpp"
#include "shiftlab/measures/coordinate_law.hpp"
#include "shiftlab/measures/model.hpp"
#include "shiftlab/util/random.hpp"

namespace shiftlab {

/// Independent coordinates drawn from one law: x_n = F^{-1}(u(seed, n)).
class IidSource final : public SequenceSource {
 public:
  IidSource(CoordinateLaw law, std::uint64_t seed) : law_(std::move(law)), seed_(seed) {}
  double at(std::int64_t n) const override {
    return sample_law(law_, counter_uniform(seed_, stream::coordinate, n));
  }

 private:
  CoordinateLaw law_;
  std::uint64_t seed_;
};

/// x_n = fold(block[(n - phase) mod k] + noise_n).
class NoisyPeriodicSource final : public SequenceSource {
 public:
  NoisyPeriodicSource(std::shared_ptr<const std::vector<double>> block, std::int64_t phase,
                      double width, WrapMode wrap, std::uint64_t seed)
      : block_(std::move(block)), phase_(phase), width_(width), wrap_(wrap), seed_(seed) {}
  double at(std::int64_t n) const override {
    const auto k = static_cast<std::int64_t>(block_->size());
    const double centre = (*block_)[static_cast<std::size_t>(floor_mod(n - phase_, k))];
    return fold(centre + (counter_uniform(seed_, stream::noise, n) - 0.5) * width_, wrap_);
  }

 private:
  std::shared_ptr<const std::vector<double>> block_;
  std::int64_t phase_;
  double width_;
  WrapMode wrap_;
  std::uint64_t seed_;
};

/// A point drawn from one product component.
inline BilateralSequence sample_component(const AlphabetSpec& alphabet, const ProductComponent& c,
                                          std::uint64_t seed) {
  switch (c.kind) {
    case ProductComponent::Kind::iid:
      return {alphabet, std::make_shared<IidSource>(c.iid_law, seed)};
    case ProductComponent::Kind::block:
      return {alphabet, std::make_shared<PeriodicSource>(*c.block, c.phase)};
    case ProductComponent::Kind::noisy_block:
      return {alphabet, std::make_shared<NoisyPeriodicSource>(c.block, c.phase, c.width, c.wrap, seed)};
  }
  return {};
}

namespace detail {

inline BilateralSequence sample_point_impl(const MeasureModel& model, std::uint64_t seed,
                                           std::optional<std::uint64_t> stratum) {
  const AlphabetSpec& alphabet = model.alphabet();
  return std::visit(
      [&](const auto& v) -> BilateralSequence {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliProduct>) {
          CoordinateLaw law = UniformLaw{};
          if (const auto* cat = std::get_if<CategoricalMarginal>(&v.marginal))
            law = CategoricalLaw{std::make_shared<const std::vector<double>>(cat->probs)};
          return {alphabet, std::make_shared<IidSource>(std::move(law), seed)};
        } else if constexpr (std::is_same_v<T, PeriodicOrbit> || std::is_same_v<T, NoisyPeriodization>) {
          const auto k = static_cast<std::uint64_t>(v.block.size());
          const std::uint64_t phase =
              stratum ? *stratum % k
                      : static_cast<std::uint64_t>(counter_uniform(seed, stream::phase, 0) *
                                                   static_cast<double>(k)) % k;
          if constexpr (std::is_same_v<T, PeriodicOrbit>) {
            return {alphabet, std::make_shared<PeriodicSource>(v.block, static_cast<std::int64_t>(phase))};
          } else {
            return {alphabet, std::make_shared<NoisyPeriodicSource>(
                                  std::make_shared<const std::vector<double>>(v.block),
                                  static_cast<std::int64_t>(phase), v.noise_width, v.wrap, seed)};
          }
        } else {
          const double u = counter_uniform(seed, stream::mixture, 0);
          double acc = 0.0;
          std::size_t pick = v.components.size() - 1;
          for (std::size_t i = 0; i < v.components.size(); ++i) {
            acc += v.weights[i];
            if (u < acc && v.weights[i] > 0.0) {
              pick = i;
              break;
            }
          }
          while (v.weights[pick] == 0.0 && pick > 0) --pick;
          return sample_point_impl(v.components[pick], derive_seed(seed, stream::mixture, 1), stratum);
        }
      },
      model.variant());
}

}  // namespace detail

/// A mu-distributed point, fully determined by the seed.
inline BilateralSequence sample_point(const MeasureModel& model, std::uint64_t seed) {
  return detail::sample_point_impl(model, seed, std::nullopt);
}

/// As sample_point, but periodic phases are taken as stratum mod k instead of
/// being drawn. Averaging over consecutive strata removes phase noise.
inline BilateralSequence sample_point_stratified(const MeasureModel& model, std::uint64_t seed,
                                                 std::uint64_t stratum) {
  return detail::sample_point_impl(model, seed, stratum);
}

}  // namespace shiftlab
