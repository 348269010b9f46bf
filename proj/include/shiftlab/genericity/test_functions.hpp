#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "shiftlab/core/metric.hpp"
#include "shiftlab/core/sequence.hpp"

namespace shiftlab {

/// A bounded test function depending on the coordinates window_lo..window_hi.
/// eval receives the alphabet and a pointer to coordinate window_lo.
struct TestFunction {
  std::string name;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  double bound = 1.0;      // |f| <= bound
  double lipschitz = 1.0;  // declared Lipschitz constant for the product metric
  std::function<double(const AlphabetSpec&, const double*)> eval;
};

struct TestFunctionFamily {
  std::string id;
  std::vector<TestFunction> functions;

  std::int64_t window_lo() const {
    std::int64_t lo = 0;
    for (const auto& f : functions) lo = std::min(lo, f.window_lo);
    return lo;
  }
  std::int64_t window_hi() const {
    std::int64_t hi = 0;
    for (const auto& f : functions) hi = std::max(hi, f.window_hi);
    return hi;
  }

  /// Values of every function at x.
  std::vector<double> evaluate(const BilateralSequence& x) const {
    const std::int64_t lo = window_lo();
    std::vector<double> coords(static_cast<std::size_t>(window_hi() - lo + 1));
    x.realize(lo, coords);
    std::vector<double> out;
    out.reserve(functions.size());
    for (const auto& f : functions) out.push_back(f.eval(x.alphabet(), coords.data() + (f.window_lo - lo)));
    return out;
  }
};

inline constexpr const char* kDefaultFamilyId = "shiftlab-default-v1";

/// Coordinate moments, a few products and a cosine of normalised symbols,
/// plus two window mollifiers centred on the constant sequences at the
/// smallest and largest symbol.
inline TestFunctionFamily default_test_family(const AlphabetSpec& alphabet) {
  TestFunctionFamily fam{kDefaultFamilyId, {}};
  for (std::int64_t n = -2; n <= 2; ++n) {
    fam.functions.push_back({"v(x" + std::to_string(n) + ")", n, n, 1.0, std::ldexp(2.0, static_cast<int>(n < 0 ? -n : n)),
                             [](const AlphabetSpec& a, const double* c) { return a.unit_value(c[0]); }});
  }
  fam.functions.push_back({"v(x0)^2", 0, 0, 1.0, 4.0,
                           [](const AlphabetSpec& a, const double* c) { return std::pow(a.unit_value(c[0]), 2); }});
  fam.functions.push_back({"v(x0)v(x1)", 0, 1, 1.0, 6.0, [](const AlphabetSpec& a, const double* c) {
                             return a.unit_value(c[0]) * a.unit_value(c[1]);
                           }});
  fam.functions.push_back({"v(x0)v(x2)", 0, 2, 1.0, 10.0, [](const AlphabetSpec& a, const double* c) {
                             return a.unit_value(c[0]) * a.unit_value(c[2]);
                           }});
  fam.functions.push_back({"cos(2pi v(x0))", 0, 0, 1.0, 4.0 * std::numbers::pi, [](const AlphabetSpec& a, const double* c) {
                             return std::cos(2.0 * std::numbers::pi * a.unit_value(c[0]));
                           }});
  const double top = alphabet.is_finite() ? static_cast<double>(alphabet.size - 1) : 1.0;
  for (const auto& [label, centre] : {std::pair{"mollifier(min)", 0.0}, std::pair{"mollifier(max)", top}}) {
    fam.functions.push_back({label, -2, 2, 1.0, 2.0, [centre](const AlphabetSpec& a, const double* c) {
                               double d = 0.0;
                               for (std::int64_t n = -2; n <= 2; ++n)
                                 d += coordinate_weight(n) * bounded_rho(a.rho(c[n + 2], centre));
                               return std::max(0.0, 1.0 - d / 0.5);
                             }});
  }
  return fam;
}

/// Single-function family f(x) = x_0 (unit-interval symbols).
inline TestFunctionFamily coordinate_identity_family() {
  return {"coordinate-0", {{"x0", 0, 0, 1.0, 2.0, [](const AlphabetSpec&, const double* c) { return c[0]; }}}};
}

}  // namespace shiftlab
