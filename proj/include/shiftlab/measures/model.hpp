#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "shiftlab/core/alphabet.hpp"

namespace shiftlab {

enum class WrapMode { clamp, reflect };

struct CategoricalMarginal {
  std::vector<double> probs;  // symbol s has probability probs[s]
};
struct UniformMarginal {};

/// Product of identical marginals.
struct BernoulliProduct {
  std::variant<CategoricalMarginal, UniformMarginal> marginal;
};

/// (1/k) sum_{i<k} delta_{T^i x} for the point with x_n = block[n mod k].
struct PeriodicOrbit {
  std::vector<double> block;
  bool distinct = false;
};

/// Periodic block with a uniform random phase and i.i.d. additive noise
/// U[-width/2, width/2] on every coordinate, folded back into [0,1].
struct NoisyPeriodization {
  std::vector<double> block;
  double noise_width = 0.01;
  WrapMode wrap = WrapMode::reflect;
};

class MeasureModel;

struct Mixture {
  std::vector<double> weights;
  std::vector<MeasureModel> components;
};

/// A shift-invariant probability measure on the bilateral product space.
class MeasureModel {
 public:
  using Variant = std::variant<BernoulliProduct, PeriodicOrbit, NoisyPeriodization, Mixture>;

  MeasureModel() = default;
  MeasureModel(AlphabetSpec alphabet, Variant v) : alphabet_(alphabet), variant_(std::move(v)) {
    validate();
  }

  static MeasureModel bernoulli(std::vector<double> probs) {
    const auto m = probs.size();
    return {AlphabetSpec::finite(m), BernoulliProduct{CategoricalMarginal{std::move(probs)}}};
  }
  static MeasureModel bernoulli_uniform() {
    return {AlphabetSpec::unit_interval(), BernoulliProduct{UniformMarginal{}}};
  }
  static MeasureModel periodic(AlphabetSpec alphabet, std::vector<double> block, bool distinct = false) {
    return {alphabet, PeriodicOrbit{std::move(block), distinct}};
  }
  static MeasureModel noisy(std::vector<double> block, double width, WrapMode wrap = WrapMode::reflect) {
    return {AlphabetSpec::unit_interval(), NoisyPeriodization{std::move(block), width, wrap}};
  }
  static MeasureModel mixture(std::vector<double> weights, std::vector<MeasureModel> components) {
    if (components.empty()) throw DomainError("mixture needs at least one component");
    const AlphabetSpec alphabet = components.front().alphabet();
    return {alphabet, Mixture{std::move(weights), std::move(components)}};
  }

  const AlphabetSpec& alphabet() const { return alphabet_; }
  const Variant& variant() const { return variant_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&variant_);
  }

  std::string kind_name() const {
    return std::visit(
        [](const auto& v) -> std::string {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BernoulliProduct>) return "bernoulli";
          else if constexpr (std::is_same_v<T, PeriodicOrbit>) return "periodic";
          else if constexpr (std::is_same_v<T, NoisyPeriodization>) return "noisy-periodization";
          else return "mixture";
        },
        variant_);
  }

  void validate() const {
    std::visit([this](const auto& v) { check(v); }, variant_);
  }

 private:
  void check(const BernoulliProduct& b) const {
    if (const auto* cat = std::get_if<CategoricalMarginal>(&b.marginal)) {
      if (!alphabet_.is_finite() || alphabet_.size != cat->probs.size())
        throw DomainError("categorical marginal must match a finite alphabet of the same size");
      double total = 0.0;
      for (double p : cat->probs) {
        if (!(p >= 0.0)) throw DomainError("categorical weights must be non-negative");
        total += p;
      }
      if (std::fabs(total - 1.0) > 1e-12) throw DomainError("categorical weights must sum to 1");
    } else if (alphabet_.is_finite()) {
      throw DomainError("uniform marginal requires the unit-interval alphabet");
    }
  }

  void check(const PeriodicOrbit& p) const {
    if (p.block.empty()) throw DomainError("periodic block must have k >= 1 symbols");
    for (double s : p.block)
      if (!alphabet_.contains(s)) throw DomainError("block symbol outside " + alphabet_.describe());
    if (p.distinct) {
      for (std::size_t i = 0; i < p.block.size(); ++i)
        for (std::size_t j = i + 1; j < p.block.size(); ++j)
          if (p.block[i] == p.block[j])
            throw DomainError("distinct periodic orbit has repeated block symbols");
    }
  }

  void check(const NoisyPeriodization& n) const {
    if (alphabet_.is_finite()) throw DomainError("noisy periodization needs the unit-interval alphabet");
    if (n.block.empty()) throw DomainError("noisy block must have k >= 1 symbols");
    for (double s : n.block)
      if (!alphabet_.contains(s)) throw DomainError("block symbol outside unit interval");
    if (!(n.noise_width > 0.0 && n.noise_width < 1.0))
      throw DomainError("noise width must lie in (0, 1)");
  }

  void check(const Mixture& m) const {
    if (m.components.empty() || m.weights.size() != m.components.size())
      throw DomainError("mixture weights and components must have equal, non-zero length");
    double total = 0.0;
    for (double w : m.weights) {
      if (!(w >= 0.0)) throw DomainError("mixture weights must be non-negative");
      total += w;
    }
    if (std::fabs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
    for (const auto& c : m.components)
      if (!(c.alphabet() == alphabet_)) throw DomainError("mixture components must share one alphabet");
  }

  AlphabetSpec alphabet_;
  Variant variant_ = BernoulliProduct{UniformMarginal{}};
};

/// Metric entropy h_mu(T) in nats: +infinity for non-atomic marginals,
/// std::nullopt when unknown.
inline std::optional<double> analytic_entropy(const MeasureModel& model) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [](const auto& v) -> std::optional<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliProduct>) {
          if (const auto* cat = std::get_if<CategoricalMarginal>(&v.marginal)) {
            double h = 0.0;
            for (double p : cat->probs)
              if (p > 0.0) h -= p * std::log(p);
            return h;
          }
          return inf;
        } else if constexpr (std::is_same_v<T, PeriodicOrbit>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, NoisyPeriodization>) {
          return inf;
        } else {
          double h = 0.0;
          for (std::size_t i = 0; i < v.components.size(); ++i) {
            const auto hc = analytic_entropy(v.components[i]);
            if (!hc) return std::nullopt;
            if (v.weights[i] > 0.0) h += v.weights[i] * *hc;
          }
          return h;
        }
      },
      model.variant());
}

}  // namespace shiftlab
