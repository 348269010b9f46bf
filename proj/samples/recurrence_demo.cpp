// Return times for a period-8 orbit and a fair-coin point.
#include <cstdio>

#include "shiftlab/shiftlab.hpp"

using namespace shiftlab;

static void show(const char* label, const RateEstimate& r) {
  std::printf("%s\n", label);
  for (std::size_t j = 0; j < r.scales.size(); ++j)
    std::printf("  eps=%-12.4g tau=%-10llu%s rate=%.4f\n", r.scales[j],
                static_cast<unsigned long long>(r.times[j].value), r.times[j].censored ? " (censored)" : "",
                r.rates[j]);
  std::printf("  lower=%.4f upper=%.4f\n", r.lower, r.upper);
}

int main() {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const auto orbit = BilateralSequence::periodic(unit, {0.05, 0.17, 0.29, 0.41, 0.53, 0.65, 0.77, 0.89});
  show("period 8", recurrence_rates(orbit, ScaleGrid{std::ldexp(1.0, -40), 0.5, 8, 0}, 1000));

  const auto x = sample_point(MeasureModel::bernoulli({0.5, 0.5}), 3);
  show("fair coin", recurrence_rates(x, ScaleGrid{0.0625, 0.5, 8, 4}, 10000000));
  return 0;
}
