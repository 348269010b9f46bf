#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "shiftlab/core/alphabet.hpp"
#include "shiftlab/core/sequence.hpp"
#include "shiftlab/measures/model.hpp"

namespace shiftlab {

// Marginal law of one coordinate of a product measure.

struct AtomLaw {
  double value;
};
struct CategoricalLaw {
  std::shared_ptr<const std::vector<double>> probs;
};
struct UniformLaw {};
struct NoisyLaw {
  double centre;
  double width;
  WrapMode wrap;
};

using CoordinateLaw = std::variant<AtomLaw, CategoricalLaw, UniformLaw, NoisyLaw>;

inline bool is_discrete(const CoordinateLaw& law) {
  return std::holds_alternative<AtomLaw>(law) || std::holds_alternative<CategoricalLaw>(law);
}

inline double fold(double z, WrapMode wrap) {
  if (wrap == WrapMode::clamp) return std::clamp(z, 0.0, 1.0);
  if (z < 0.0) z = -z;
  if (z > 1.0) z = 2.0 - z;
  return std::clamp(z, 0.0, 1.0);
}

/// Inverse-CDF draw from u in [0,1).
inline double sample_law(const CoordinateLaw& law, double u) {
  return std::visit(
      [u](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, AtomLaw>) {
          return l.value;
        } else if constexpr (std::is_same_v<T, CategoricalLaw>) {
          const auto& p = *l.probs;
          double acc = 0.0;
          for (std::size_t s = 0; s + 1 < p.size(); ++s) {
            acc += p[s];
            if (u < acc) return static_cast<double>(s);
          }
          // u >= sum of the first m-1 weights; skip trailing zero-weight symbols
          std::size_t last = p.size() - 1;
          while (last > 0 && p[last] == 0.0) --last;
          return static_cast<double>(last);
        } else if constexpr (std::is_same_v<T, UniformLaw>) {
          return u;
        } else {
          return fold(l.centre + (u - 0.5) * l.width, l.wrap);
        }
      },
      law);
}

namespace detail {

// Lebesgue length of [lo, hi] intersected with [a, b].
inline double overlap(double lo, double hi, double a, double b) {
  return std::max(0.0, std::min(hi, b) - std::max(lo, a));
}

}  // namespace detail

/// P(Y in [lo, hi]) when closed, P(Y in (lo, hi)) otherwise.
inline double prob_interval(const CoordinateLaw& law, double lo, double hi, bool closed) {
  if (hi < lo || (!closed && hi == lo)) return 0.0;
  auto inside = [&](double v) { return closed ? (v >= lo && v <= hi) : (v > lo && v < hi); };
  return std::visit(
      [&](const auto& l) -> double {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, AtomLaw>) {
          return inside(l.value) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, CategoricalLaw>) {
          double total = 0.0;
          const auto& p = *l.probs;
          for (std::size_t s = 0; s < p.size(); ++s)
            if (inside(static_cast<double>(s))) total += p[s];
          return total;
        } else if constexpr (std::is_same_v<T, UniformLaw>) {
          return detail::overlap(lo, hi, 0.0, 1.0);
        } else {
          const double z0 = l.centre - 0.5 * l.width;
          const double z1 = l.centre + 0.5 * l.width;
          auto z_mass = [&](double a, double b) { return detail::overlap(a, b, z0, z1) / l.width; };
          const double a = std::max(lo, 0.0);
          const double b = std::min(hi, 1.0);
          if (l.wrap == WrapMode::reflect) {
            if (b < a) return 0.0;
            double p = z_mass(a, b);
            p += z_mass(-b, std::min(-a, 0.0));  // reflected from below zero
            p += z_mass(std::max(2.0 - b, 1.0), 2.0 - a);  // reflected from above one
            return std::min(1.0, p);
          }
          double p = (b > a) ? z_mass(std::max(a, 0.0), std::min(b, 1.0)) : 0.0;
          if (inside(0.0)) p += z_mass(-std::numeric_limits<double>::infinity(), 0.0);
          if (inside(1.0)) p += z_mass(1.0, std::numeric_limits<double>::infinity());
          return std::min(1.0, p);
        }
      },
      law);
}

/// P(rho(a, Y) <= t).
inline double prob_rho_le(const CoordinateLaw& law, const AlphabetSpec& alphabet, double a, double t) {
  if (t < 0.0) return 0.0;
  if (alphabet.is_finite()) {
    if (t >= 1.0) return 1.0;
    return prob_interval(law, a, a, true);
  }
  return prob_interval(law, a - t, a + t, true);
}

/// P(rho(a, Y) < t).
inline double prob_rho_lt(const CoordinateLaw& law, const AlphabetSpec& alphabet, double a, double t) {
  if (t <= 0.0) return 0.0;
  if (alphabet.is_finite()) {
    if (t > 1.0) return 1.0;
    return prob_interval(law, a, a, true);
  }
  return prob_interval(law, a - t, a + t, false);
}

/// rho threshold equivalent to a contribution bound: w rho/(1+rho) <= v iff
/// rho <= rho_for_contribution(v / w). Infinite once v/w >= 1.
inline double rho_for_contribution(double ratio) {
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return ratio / (1.0 - ratio);
}

/// Distinct contribution values w rho/(1+rho) with their probabilities, for
/// discrete laws.
inline std::vector<std::pair<double, double>> discrete_contributions(const CoordinateLaw& law,
                                                                     const AlphabetSpec& alphabet,
                                                                     double a, double weight) {
  std::vector<std::pair<double, double>> out;
  auto add = [&](double symbol, double p) {
    if (p <= 0.0) return;
    const double c = weight * bounded_rho(alphabet.rho(a, symbol));
    for (auto& [value, prob] : out)
      if (value == c) {
        prob += p;
        return;
      }
    out.emplace_back(c, p);
  };
  if (const auto* atom = std::get_if<AtomLaw>(&law)) {
    add(atom->value, 1.0);
  } else if (const auto* cat = std::get_if<CategoricalLaw>(&law)) {
    const auto& p = *cat->probs;
    for (std::size_t s = 0; s < p.size(); ++s) add(static_cast<double>(s), p[s]);
  } else {
    throw DomainError("discrete_contributions called on a continuous law");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// One product-measure piece of a model: a weight and the coordinate laws.
/// Every model is a finite mixture of such pieces (a periodic orbit has one
/// piece per phase).
struct ProductComponent {
  enum class Kind { iid, block, noisy_block };

  double weight = 1.0;
  Kind kind = Kind::iid;
  CoordinateLaw iid_law = UniformLaw{};
  std::shared_ptr<const std::vector<double>> block;
  std::int64_t phase = 0;
  double width = 0.0;
  WrapMode wrap = WrapMode::reflect;

  /// Block symbol seen at coordinate n under this phase.
  double block_symbol(std::int64_t n) const {
    const auto k = static_cast<std::int64_t>(block->size());
    return (*block)[static_cast<std::size_t>(floor_mod(n - phase, k))];
  }

  CoordinateLaw law_at(std::int64_t n) const {
    switch (kind) {
      case Kind::iid: return iid_law;
      case Kind::block: return AtomLaw{block_symbol(n)};
      case Kind::noisy_block: return NoisyLaw{block_symbol(n), width, wrap};
    }
    return iid_law;
  }

  bool discrete() const {
    return kind == Kind::block || (kind == Kind::iid && is_discrete(iid_law));
  }
};

inline void append_components(const MeasureModel& model, double weight,
                              std::vector<ProductComponent>& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BernoulliProduct>) {
          ProductComponent c;
          c.weight = weight;
          if (const auto* cat = std::get_if<CategoricalMarginal>(&v.marginal))
            c.iid_law = CategoricalLaw{std::make_shared<const std::vector<double>>(cat->probs)};
          out.push_back(std::move(c));
        } else if constexpr (std::is_same_v<T, PeriodicOrbit> || std::is_same_v<T, NoisyPeriodization>) {
          auto block = std::make_shared<const std::vector<double>>(v.block);
          const auto k = static_cast<std::int64_t>(v.block.size());
          for (std::int64_t i = 0; i < k; ++i) {
            ProductComponent c;
            c.weight = weight / static_cast<double>(k);
            c.block = block;
            c.phase = i;
            if constexpr (std::is_same_v<T, PeriodicOrbit>) {
              c.kind = ProductComponent::Kind::block;
            } else {
              c.kind = ProductComponent::Kind::noisy_block;
              c.width = v.noise_width;
              c.wrap = v.wrap;
            }
            out.push_back(std::move(c));
          }
        } else {
          for (std::size_t i = 0; i < v.components.size(); ++i)
            if (v.weights[i] > 0.0) append_components(v.components[i], weight * v.weights[i], out);
        }
      },
      model.variant());
}

inline std::vector<ProductComponent> product_components(const MeasureModel& model) {
  std::vector<ProductComponent> out;
  append_components(model, 1.0, out);
  return out;
}

}  // namespace shiftlab
