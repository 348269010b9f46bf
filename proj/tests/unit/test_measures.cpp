#include <gtest/gtest.h>

#include <cmath>

#include "shiftlab/measures/ball_mass.hpp"

using namespace shiftlab;

namespace {

struct Bracket {
  double low = 0.0;
  double high = 0.0;
};

// Enumerates every binary word on |n| <= W. The coordinates beyond W add at
// most 2^-W, so P(S_W <= eps - 2^-W) <= mu(B(x, eps)) <= P(S_W <= eps).
Bracket enumerate_binary(double p1, const BilateralSequence& x, double eps, int W) {
  const int L = 2 * W + 1;
  Bracket b;
  for (std::uint32_t word = 0; word < (1u << L); ++word) {
    double s = 0.0, w = 1.0;
    for (int i = 0; i < L; ++i) {
      const int n = i - W;
      const int bit = (word >> i) & 1u;
      w *= bit ? p1 : 1.0 - p1;
      if (bit != static_cast<int>(x[n])) s += 0.5 * std::ldexp(1.0, -std::abs(n));
    }
    if (s <= eps) b.high += w;
    if (s <= eps - std::ldexp(1.0, -W)) b.low += w;
  }
  return b;
}

}  // namespace

TEST(BallMass, BernoulliMatchesEnumeration) {
  for (double p : {0.5, 0.3}) {
    const MeasureModel m = MeasureModel::bernoulli({1.0 - p, p});
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto x = sample_point(m, s);
      for (double eps : {0.07, 0.21, 0.45, 0.8}) {
        const Bracket b = enumerate_binary(p, x, eps, 8);
        const double tol = effective_tolerance(1e-6, eps);
        const BallMassEstimate est = ball_mass(m, x, eps);
        EXPECT_GE(est.mean, enumerate_binary(p, x, eps - tol, 8).low - 1e-12) << "p=" << p << " eps=" << eps;
        EXPECT_LE(est.mean, enumerate_binary(p, x, eps + tol, 8).high + 1e-12) << "p=" << p << " eps=" << eps;
        EXPECT_LE(b.low, b.high);
      }
    }
  }
}

// For the fair coin f(t) = mu(B(x, t)) satisfies f(t) = f(2t)/4 on (0, 1/2]
// and f(1/2) = 1/4, so the dyadic ball masses are exactly 4^-N. Membership
// is d <= eps + tol, so the estimate may exceed 4^-N by at most tol.
TEST(BallMass, FairCoinDyadicMassesArePowersOfFour) {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto x = sample_point(fair, 40 + s);
    for (int N = 1; N <= 14; ++N) {
      const BallMassEstimate est = ball_mass(fair, x, std::ldexp(1.0, -N));
      const double want = std::ldexp(1.0, -2 * N);
      EXPECT_GE(est.mean, want * (1 - 1e-12)) << "N=" << N;
      EXPECT_LE(est.mean - want, effective_tolerance(1e-6, std::ldexp(1.0, -N))) << "N=" << N;
      EXPECT_FALSE(est.censored);
    }
  }
}

TEST(BallMass, PeriodicCountsPhases) {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const std::vector<double> block{0.1, 0.15, 0.6, 0.62, 0.9};
  const MeasureModel orbit = MeasureModel::periodic(unit, block, true);
  const auto x = BilateralSequence::periodic(unit, block);
  for (double eps : {0.01, 0.1, 0.4, 0.9, 1.6}) {
    int hits = 0;
    for (std::int64_t k = 0; k < 5; ++k) hits += product_metric(x, shift(x, k), 1e-12) <= eps;
    const BallMassEstimate est = ball_mass(orbit, x, eps);
    EXPECT_EQ(est.method, MassMethod::exact);
    EXPECT_NEAR(est.mean, hits / 5.0, 1e-12) << "eps=" << eps;
  }
}

TEST(BallMass, ConvolutionAgreesWithMonteCarlo) {
  for (const auto& m : {MeasureModel::bernoulli_uniform(), MeasureModel::noisy({0.2, 0.5, 0.8}, 0.1)}) {
    const auto x = sample_point(m, 3);
    for (double eps : {0.3, 0.6, 1.0}) {
      const BallMassEstimate conv = ball_mass(m, x, eps);
      BallMassOptions mo;
      mo.force = MassMethod::monte_carlo;
      mo.budget = 20000;
      mo.seed = 11;
      const BallMassEstimate mc = ball_mass(m, x, eps, mo);
      EXPECT_GE(conv.mean, mc.ci_low * 0.9) << m.kind_name() << " eps=" << eps;
      EXPECT_LE(conv.mean, mc.ci_high * 1.1) << m.kind_name() << " eps=" << eps;
    }
  }
}

TEST(BallMass, MixtureIsAffine) {
  const MeasureModel a = MeasureModel::bernoulli({0.5, 0.5});
  const MeasureModel b = MeasureModel::periodic(AlphabetSpec::finite(2), {0, 1});
  const MeasureModel mix = MeasureModel::mixture({0.4, 0.6}, {a, b});
  const auto x = sample_point(a, 2);
  for (double eps : {0.05, 0.3}) {
    const double want = 0.4 * ball_mass(a, x, eps).mean + 0.6 * ball_mass(b, x, eps).mean;
    EXPECT_NEAR(ball_mass(mix, x, eps).mean, want, 1e-12 * std::max(1.0, want));
  }
}

TEST(BallMass, SandwichedByMollifiers) {
  const MeasureModel m = MeasureModel::bernoulli({0.3, 0.7});
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto x = sample_point(m, s);
    const double eps = 0.1 + 0.1 * static_cast<double>(s);
    const BallMassEstimate mass = ball_mass(m, x, eps);
    EXPECT_LE(mollified_mass(m, x, eps / 2, 4000, s).ci_low, mass.mean);
    EXPECT_GE(mollified_mass(m, x, 2 * eps, 4000, s).ci_high, mass.mean);
  }
}

TEST(BallMass, MollifierShape) {
  EXPECT_DOUBLE_EQ(mollifier_from_distance(0.1, 0.2), 1.0);
  EXPECT_DOUBLE_EQ(mollifier_from_distance(0.3, 0.2), 0.5);
  EXPECT_DOUBLE_EQ(mollifier_from_distance(0.4, 0.2), 0.0);
}

TEST(BallMass, RejectsBadArguments) {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const auto x = sample_point(fair, 1);
  EXPECT_THROW(ball_mass(fair, x, 0.0), DomainError);
  EXPECT_THROW(ball_mass(MeasureModel::bernoulli_uniform(), x, 0.1), DomainError);
  EXPECT_THROW(mollified_mass(fair, x, 0.1, 10, 1), DomainError);
  EXPECT_THROW(MeasureModel::bernoulli({0.5, 0.6}), DomainError);
}

TEST(Sampling, DeterministicPerSeed) {
  const MeasureModel m = MeasureModel::bernoulli_uniform();
  const auto a = sample_point(m, 99), b = sample_point(m, 99), c = sample_point(m, 100);
  for (int n = -20; n <= 20; ++n) EXPECT_EQ(a[n], b[n]);
  EXPECT_NE(a[0], c[0]);
}

TEST(Entropy, AnalyticValues) {
  EXPECT_NEAR(*analytic_entropy(MeasureModel::bernoulli({0.5, 0.5})), std::log(2.0), 1e-15);
  EXPECT_EQ(*analytic_entropy(MeasureModel::periodic(AlphabetSpec::finite(2), {0, 1})), 0.0);
  EXPECT_TRUE(std::isinf(*analytic_entropy(MeasureModel::bernoulli_uniform())));
}
