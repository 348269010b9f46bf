// Ball masses and local dimension along one fair-coin point.
#include <cstdio>

#include "shiftlab/shiftlab.hpp"

using namespace shiftlab;

int main() {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const BilateralSequence x = sample_point(fair, 7);

  std::printf("%6s %14s %10s  %s\n", "eps", "mass", "quotient", "method");
  for (int N = 2; N <= 12; N += 2) {
    const double eps = std::ldexp(1.0, -N);
    const BallMassEstimate m = ball_mass(fair, x, eps);
    std::printf("2^-%-3d %14.6e %10.4f  %s\n", N, m.mean, m.log_mean / std::log(eps), to_string(m.method).c_str());
  }

  const LocalDimEstimate est = local_dims(fair, x, ScaleGrid::dyadic(4, 14, 2), {}, 7);
  std::printf("local dimension in [%.4f, %.4f]\n", est.lower, est.upper);
  return 0;
}
