#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/genericity/test_functions.hpp"
#include "shiftlab/measures/model.hpp"
#include "shiftlab/measures/sampling.hpp"
#include "shiftlab/util/random.hpp"
#include "shiftlab/util/stats.hpp"

namespace shiftlab {

/// Integrals of every function of a family against one model.
struct FamilyIntegral {
  std::vector<double> mean;
  std::vector<double> standard_error;
  std::string method;  // exact | stratified | monte-carlo
  std::size_t samples = 0;
};

namespace detail {

inline constexpr std::size_t kExactEnumerationLimit = 100000;

inline FamilyIntegral enumerate_product(const std::vector<double>& probs, const TestFunctionFamily& fam,
                                        const AlphabetSpec& a) {
  const std::int64_t lo = fam.window_lo();
  const auto width = static_cast<std::size_t>(fam.window_hi() - lo + 1);
  const std::size_t m = probs.size();
  FamilyIntegral out{std::vector<double>(fam.functions.size(), 0.0), std::vector<double>(fam.functions.size(), 0.0),
                     "exact", 0};
  std::vector<std::size_t> digits(width, 0);
  std::vector<double> coords(width, 0.0);
  for (;;) {
    double p = 1.0;
    for (std::size_t i = 0; i < width; ++i) {
      coords[i] = static_cast<double>(digits[i]);
      p *= probs[digits[i]];
    }
    if (p > 0.0) {
      for (std::size_t f = 0; f < fam.functions.size(); ++f) {
        const TestFunction& fn = fam.functions[f];
        out.mean[f] += p * fn.eval(a, coords.data() + (fn.window_lo - lo));
      }
    }
    ++out.samples;
    std::size_t i = 0;
    while (i < width && ++digits[i] == m) digits[i++] = 0;
    if (i == width) break;
  }
  return out;
}

}  // namespace detail

/// Periodic orbits are averaged exactly over their phases, small finite
/// products are enumerated over the family window, noisy periodizations
/// are sampled with phases stratified evenly, and everything else uses plain
/// Monte Carlo.
inline FamilyIntegral integrate_family(const MeasureModel& model, const TestFunctionFamily& fam, std::size_t budget,
                                       std::uint64_t seed) {
  const std::size_t F = fam.functions.size();
  const AlphabetSpec& a = model.alphabet();
  if (const auto* orbit = model.as<PeriodicOrbit>()) {
    FamilyIntegral out{std::vector<double>(F, 0.0), std::vector<double>(F, 0.0), "exact", orbit->block.size()};
    const double w = 1.0 / static_cast<double>(orbit->block.size());
    for (std::size_t i = 0; i < orbit->block.size(); ++i) {
      const auto v = fam.evaluate(sample_point_stratified(model, seed, i));
      for (std::size_t f = 0; f < F; ++f) out.mean[f] += w * v[f];
    }
    return out;
  }
  if (const auto* bern = model.as<BernoulliProduct>()) {
    if (const auto* cat = std::get_if<CategoricalMarginal>(&bern->marginal)) {
      const double width = static_cast<double>(fam.window_hi() - fam.window_lo() + 1);
      if (std::pow(static_cast<double>(cat->probs.size()), width) <= detail::kExactEnumerationLimit)
        return detail::enumerate_product(cat->probs, fam, a);
    }
  }
  if (budget == 0) throw DomainError("weak-distance budget must be positive");

  std::size_t strata = 1;
  if (const auto* noisy = model.as<NoisyPeriodization>()) strata = noisy->block.size();
  const std::size_t per = (budget + strata - 1) / strata;
  std::vector<std::vector<RunningMoments>> moments(strata, std::vector<RunningMoments>(F));
  for (std::size_t i = 0; i < per * strata; ++i) {
    const std::uint64_t s = derive_seed(seed, stream::monte_carlo, i);
    const BilateralSequence y = strata > 1 ? sample_point_stratified(model, s, i % strata) : sample_point(model, s);
    const auto v = fam.evaluate(y);
    for (std::size_t f = 0; f < F; ++f) moments[i % strata][f].add(v[f]);
  }
  FamilyIntegral out{std::vector<double>(F, 0.0), std::vector<double>(F, 0.0),
                     strata > 1 ? "stratified" : "monte-carlo", per * strata};
  const double w = 1.0 / static_cast<double>(strata);
  for (std::size_t f = 0; f < F; ++f) {
    double var = 0.0;
    for (std::size_t h = 0; h < strata; ++h) {
      out.mean[f] += w * moments[h][f].mean();
      var += w * w * moments[h][f].variance() / static_cast<double>(moments[h][f].count());
    }
    out.standard_error[f] = std::sqrt(var);
  }
  return out;
}

/// max_i |int f_i dnu - int f_i dmu| with a simultaneous 95% band
/// (Bonferroni over the family).
struct WeakDistance {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> deltas;
  std::vector<double> half_widths;
  std::string family_id;
  std::string method_mu;
  std::string method_nu;

  /// nu lies in V_mu(f_1..f_r; delta) according to the point estimate.
  bool in_neighborhood(double delta) const { return value < delta; }
};

inline WeakDistance weak_distance(const MeasureModel& mu, const MeasureModel& nu, const TestFunctionFamily& fam,
                                  std::size_t budget, std::uint64_t seed) {
  if (!(mu.alphabet() == nu.alphabet())) throw DomainError("weak distance needs models on one alphabet");
  if (fam.functions.empty()) throw DomainError("test-function family is empty");
  const FamilyIntegral im = integrate_family(mu, fam, budget, derive_seed(seed, stream::pair, 0));
  const FamilyIntegral in = integrate_family(nu, fam, budget, derive_seed(seed, stream::pair, 1));
  WeakDistance wd;
  wd.family_id = fam.id;
  wd.method_mu = im.method;
  wd.method_nu = in.method;
  const double z = normal_two_sided_quantile(0.05 / static_cast<double>(fam.functions.size()));
  for (std::size_t f = 0; f < fam.functions.size(); ++f) {
    const double delta = std::fabs(in.mean[f] - im.mean[f]);
    const double hw = z * std::hypot(im.standard_error[f], in.standard_error[f]);
    wd.deltas.push_back(delta);
    wd.half_widths.push_back(hw);
    wd.value = std::max(wd.value, delta);
    wd.ci_low = std::max(wd.ci_low, std::max(0.0, delta - hw));
    wd.ci_high = std::max(wd.ci_high, delta + hw);
  }
  return wd;
}

}  // namespace shiftlab
