#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "shiftlab/dimension/local_dims.hpp"
#include "shiftlab/dimension/local_entropy.hpp"
#include "shiftlab/dimension/packing.hpp"

using namespace shiftlab;

namespace {

// Plain enumeration of every assignment "no ball / radius r" per point.
double exhaustive_packing(const DistanceMatrix& d, double alpha, const std::vector<double>& radii) {
  const std::size_t n = d.size();
  std::vector<double> r(n, 0.0);
  double best = 0.0;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == n) {
      double v = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        if (r[a] == 0.0) continue;
        for (std::size_t b = a + 1; b < n; ++b)
          if (r[b] > 0.0 && !(d(a, b) > r[a] + r[b])) return;
        v += std::pow(2.0 * r[a], alpha);
      }
      best = std::max(best, v);
      return;
    }
    r[i] = 0.0;
    go(i + 1);
    for (double rad : radii) {
      r[i] = rad;
      go(i + 1);
    }
  };
  go(0);
  return best;
}

DistanceMatrix random_matrix(std::uint64_t seed, std::size_t n) {
  CounterRng rng(seed, stream::pair);
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, 0.05 + 0.35 * rng.uniform());
  return m;
}

}  // namespace

TEST(ScaleGrid, Validation) {
  EXPECT_NO_THROW((ScaleGrid{0.5, 0.5, 8, 0}.validate()));
  EXPECT_THROW((ScaleGrid{0.5, 1.0, 8, 0}.validate()), DomainError);
  EXPECT_THROW((ScaleGrid{0.5, 0.5, 7, 0}.validate()), DomainError);
  EXPECT_THROW((ScaleGrid{0.5, 0.5, 8, 8}.validate()), DomainError);
  const ScaleGrid g = ScaleGrid::dyadic(4, 14, 2);
  EXPECT_EQ(g.count, 11u);
  EXPECT_DOUBLE_EQ(g.epsilon(0), 0.0625);
  EXPECT_DOUBLE_EQ(g.epsilon(10), std::ldexp(1.0, -14));
}

TEST(LocalDims, FairCoinQuotientsAreTwo) {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const LocalDimEstimate e = local_dims(fair, sample_point(fair, 5), ScaleGrid::dyadic(2, 12), {}, 5);
  // masses are 4^-N up to the additive tolerance; increments magnify it
  for (double q : e.quotients) EXPECT_NEAR(q, 2.0, 1e-3);
  EXPECT_TRUE(std::isnan(e.slopes[0]));
  EXPECT_NEAR(e.lower, 2.0, 5e-3);
  EXPECT_NEAR(e.upper, 2.0, 5e-3);
  EXPECT_FALSE(e.censored);
}

TEST(LocalDims, PeriodicQuotientsDecay) {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const std::vector<double> block{0.05, 0.17, 0.29, 0.41, 0.53, 0.65, 0.77, 0.89};
  const MeasureModel orbit = MeasureModel::periodic(unit, block, true);
  const LocalDimEstimate e = local_dims(orbit, BilateralSequence::periodic(unit, block), ScaleGrid::dyadic(4, 20), {}, 1);
  for (std::size_t j = 0; j < e.scales.size(); ++j)
    EXPECT_NEAR(e.quotients[j], 3.0 / static_cast<double>(4 + j), 1e-9);
  EXPECT_NEAR(e.upper, 0.0, 1e-12);
  EXPECT_NEAR(e.quotient_upper, 0.75, 1e-9);
}

TEST(LocalDims, OffSupportIsCensored) {
  const AlphabetSpec bin = AlphabetSpec::finite(2);
  const MeasureModel zeros = MeasureModel::periodic(bin, {0});
  const LocalDimEstimate e = local_dims(zeros, BilateralSequence::constant(bin, 1), ScaleGrid::dyadic(4, 12), {}, 1);
  EXPECT_TRUE(e.off_support);
  EXPECT_TRUE(e.censored);
  EXPECT_TRUE(std::isinf(e.upper));
}

TEST(MeasureDims, RequiresThirtyPoints) {
  EXPECT_THROW(measure_dims(MeasureModel::bernoulli({0.5, 0.5}), 10, ScaleGrid::dyadic(4, 12), {}, 1), DomainError);
}

TEST(MeasureDims, FairCoinIsTwo) {
  const DimensionReport r = measure_dims(MeasureModel::bernoulli({0.5, 0.5}), 30, ScaleGrid::dyadic(4, 12), {}, 1);
  EXPECT_NEAR(r.dimH_minus, 2.0, 5e-3);
  EXPECT_NEAR(r.dimP_plus, 2.0, 5e-3);
  EXPECT_FALSE(r.unreliable);
}

TEST(Packing, DocumentedThreePointInstance) {
  DistanceMatrix d(3);
  d.set(0, 1, 0.2);
  d.set(0, 2, 0.5);
  d.set(1, 2, 0.3);
  // radii (0.1, 0.05, 0.1): 0.2 > 0.15, 0.3 > 0.15, 0.5 > 0.2
  EXPECT_NEAR(exhaustive_packing(d, 1.0, {0.05, 0.1}), 0.5, 1e-12);
  const auto b = brute_force_packing(d, 1.0, 0.2, {0.05, 0.1});
  EXPECT_NEAR(b.value, 0.5, 1e-12);
  EXPECT_TRUE(b.optimal);
  EXPECT_NEAR(greedy_packing(d, 1.0, 0.2, {0.05, 0.1}).value, 0.5, 1e-12);
}

TEST(Packing, BruteForceMatchesEnumeration) {
  for (std::uint64_t s = 0; s < 80; ++s) {
    const std::size_t n = 1 + s % 7;
    const DistanceMatrix d = random_matrix(s, n);
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double want = exhaustive_packing(d, alpha, {0.05, 0.1});
      EXPECT_NEAR(brute_force_packing(d, alpha, 0.2, {0.05, 0.1}).value, want, 1e-12) << "seed " << s;
      EXPECT_LE(greedy_packing(d, alpha, 0.2, {0.05, 0.1}).value, want + 1e-12) << "seed " << s;
    }
  }
}

TEST(Packing, GreedyWitnessIsDisjoint) {
  const DistanceMatrix d = random_matrix(3, 9);
  const auto g = greedy_packing(d, 1.0, 0.2, {0.05, 0.1});
  for (std::size_t a = 0; a < g.balls.size(); ++a)
    for (std::size_t b = a + 1; b < g.balls.size(); ++b)
      EXPECT_GT(d(g.balls[a].center, g.balls[b].center), g.balls[a].radius + g.balls[b].radius);
}

TEST(Packing, GreedyEqualsBruteOnTwoPoints) {
  // with radii {b, 2b} two balls of radius b never beat one of radius 2b
  for (std::uint64_t s = 0; s < 300; ++s) {
    const DistanceMatrix d = random_matrix(1000 + s, 1 + s % 2);
    EXPECT_NEAR(greedy_packing(d, 1.0, 0.2, {0.05, 0.1}).value, brute_force_packing(d, 1.0, 0.2, {0.05, 0.1}).value,
                1e-12)
        << "seed " << s;
  }
}

TEST(Packing, GreedyCanLoseOnThreeClosePoints) {
  // a radius-0.1 ball on any point blocks both others; three 0.05 balls fit
  DistanceMatrix d(3);
  d.set(0, 1, 0.1044);
  d.set(0, 2, 0.1456);
  d.set(1, 2, 0.1090);
  EXPECT_NEAR(exhaustive_packing(d, 1.0, {0.05, 0.1}), 0.3, 1e-12);
  EXPECT_NEAR(brute_force_packing(d, 1.0, 0.2, {0.05, 0.1}).value, 0.3, 1e-12);
  EXPECT_NEAR(greedy_packing(d, 1.0, 0.2, {0.05, 0.1}).value, 0.2, 1e-12);
}

TEST(Packing, SinglePointAndLimits) {
  DistanceMatrix one(1);
  EXPECT_NEAR(greedy_packing(one, 1.0, 0.2, {0.1}).value, 0.2, 1e-15);
  EXPECT_NEAR(brute_force_packing(DistanceMatrix(0), 1.0, 0.2, {0.1}).value, 0.0, 0.0);
  EXPECT_THROW(brute_force_packing(DistanceMatrix(13), 1.0, 0.2, {0.1}), DomainError);
  EXPECT_THROW(greedy_packing(one, 1.0, 0.2, {0.15}), DomainError);
}

TEST(Cover, SingletonsAndOneBall) {
  DistanceMatrix d(3);
  d.set(0, 1, 0.1);
  d.set(0, 2, 0.2);
  d.set(1, 2, 0.15);
  EXPECT_EQ(greedy_cover_value(d, 1.0, 0.2).value, 0.0);
  EXPECT_NEAR(greedy_cover_value(d, 1.0, 0.2, CoverMode::balls).value, 0.2, 1e-15);
}

TEST(LocalEntropy, FirstStepIsTheBall) {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const auto x = sample_point(fair, 8);
  for (double eps : {0.125, 0.03}) {
    EXPECT_NEAR(local_entropy(fair, x, 1, eps).mass.mean, ball_mass(fair, x, eps).mean, 1e-12);
  }
}

TEST(LocalEntropy, PeriodicRate) {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const std::vector<double> block{0.1, 0.3, 0.5, 0.7};
  const MeasureModel orbit = MeasureModel::periodic(unit, block, true);
  const auto e = local_entropy(orbit, BilateralSequence::periodic(unit, block), 10, 0.01);
  EXPECT_NEAR(e.rate, std::log(4.0) / 10.0, 1e-12);
}
