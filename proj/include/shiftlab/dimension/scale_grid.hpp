#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "shiftlab/core/alphabet.hpp"

namespace shiftlab {

/// Geometric ladder eps_j = eps0 * q^j, j = 0..count-1. Only indices
/// j >= s_index take part in the sup/inf over scales.
struct ScaleGrid {
  double eps0 = 0.0625;
  double q = 0.5;
  std::size_t count = 8;
  std::size_t s_index = 0;

  void validate() const {
    if (!(eps0 > 0.0) || !std::isfinite(eps0)) throw DomainError("grid eps0 must be positive");
    if (!(q > 0.0 && q < 1.0)) throw DomainError("grid ratio q must lie in (0, 1)");
    if (count < 8) throw DomainError("grid needs at least 8 scales");
    if (s_index >= count) throw DomainError("grid s_index must be below the scale count");
    if (!(epsilon(count - 1) > 0.0)) throw DomainError("grid underflows");
  }

  double epsilon(std::size_t j) const { return eps0 * std::pow(q, static_cast<double>(j)); }

  std::vector<double> scales() const {
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = epsilon(j);
    return out;
  }

  /// Dyadic grid 2^-first, ..., 2^-last.
  static ScaleGrid dyadic(int first, int last, std::size_t s_index = 0) {
    if (last < first) throw DomainError("dyadic grid needs last >= first");
    return {std::ldexp(1.0, -first), 0.5, static_cast<std::size_t>(last - first + 1), s_index};
  }

  std::string describe() const {
    return "eps0=" + std::to_string(eps0) + ",q=" + std::to_string(q) + ",J=" + std::to_string(count) +
           ",s=" + std::to_string(s_index);
  }
};

}  // namespace shiftlab
