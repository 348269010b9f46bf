#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "shiftlab/genericity/experiments.hpp"

using namespace shiftlab;

TEST(TestFamily, DefaultFamilyShape) {
  const auto fam = default_test_family(AlphabetSpec::unit_interval());
  EXPECT_EQ(fam.id, "shiftlab-default-v1");
  EXPECT_EQ(fam.functions.size(), 11u);
  const auto x = BilateralSequence::constant(AlphabetSpec::unit_interval(), 0.25);
  const auto v = fam.evaluate(x);
  ASSERT_EQ(v.size(), 11u);
  EXPECT_DOUBLE_EQ(v[0], 0.25);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_LE(std::fabs(v[i]), fam.functions[i].bound);
}

TEST(WeakDistance, FixedPointsDifferByCoordinate) {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const WeakDistance w = weak_distance(MeasureModel::periodic(unit, {0.2}), MeasureModel::periodic(unit, {0.7}),
                                       coordinate_identity_family(), 1000, 1);
  EXPECT_NEAR(w.value, 0.5, 1e-15);
  EXPECT_FALSE(w.in_neighborhood(0.4));
  EXPECT_TRUE(w.in_neighborhood(0.6));
}

TEST(WeakDistance, ExactCoinIntegrals) {
  // first coordinate under Bernoulli(p) integrates to p exactly
  const auto fam = default_test_family(AlphabetSpec::finite(2));
  const WeakDistance w = weak_distance(MeasureModel::bernoulli({0.7, 0.3}), MeasureModel::bernoulli({0.4, 0.6}), fam, 1000, 1);
  EXPECT_NEAR(w.deltas[0], 0.3, 1e-12);
  EXPECT_EQ(w.half_widths[0], 0.0);
}

TEST(WeakDistance, SelfDistanceBandContainsZero) {
  const MeasureModel uni = MeasureModel::bernoulli_uniform();
  const WeakDistance w = weak_distance(uni, uni, default_test_family(uni.alphabet()), 4000, 3);
  EXPECT_EQ(w.ci_low, 0.0);
  EXPECT_LT(w.value, 0.05);
}

TEST(Periodize, UnitIntervalBlockIsDistinct) {
  const MeasureModel uni = MeasureModel::bernoulli_uniform();
  for (std::size_t s : {1u, 4u, 32u}) {
    const PeriodizeResult p = periodize(uni, s, 5);
    const auto* orbit = p.model.as<PeriodicOrbit>();
    ASSERT_NE(orbit, nullptr);
    EXPECT_EQ(orbit->block.size(), s);
    EXPECT_TRUE(orbit->distinct);
    EXPECT_EQ(std::set<double>(orbit->block.begin(), orbit->block.end()).size(), s);
    EXPECT_EQ(*analytic_entropy(p.model), 0.0);
  }
}

TEST(Periodize, BlockIsTheSampledWord) {
  const MeasureModel fair = MeasureModel::bernoulli({0.5, 0.5});
  const PeriodizeResult p = periodize(fair, 6, 9);
  const auto x = sample_point(fair, derive_seed(9, stream::point, 0));
  const auto* orbit = p.model.as<PeriodicOrbit>();
  for (std::int64_t i = 0; i < 6; ++i) EXPECT_EQ(orbit->block[static_cast<std::size_t>(i)], x[i]);
}

TEST(Periodize, FiniteAlphabetWarnsWhenLongerThanAlphabet) {
  const PeriodizeResult p = periodize(MeasureModel::bernoulli({0.5, 0.5}), 5, 1);
  EXPECT_FALSE(p.model.as<PeriodicOrbit>()->distinct);
  EXPECT_FALSE(p.warnings.empty());
  EXPECT_THROW(periodize(MeasureModel::bernoulli({0.5, 0.5}), 0, 1), DomainError);
}

TEST(Experiments, HdCollapseSmall) {
  HdCollapseOptions o;
  o.periods = {4, 16};
  o.replicates = 5;
  o.weak_budget = 1000;
  const ExperimentReport r = run_hd_collapse(MeasureModel::bernoulli({0.5, 0.5}), o, 3);
  ASSERT_EQ(r.hd.size(), 2u);
  EXPECT_TRUE(r.failures.empty());
  for (const auto& st : r.hd) EXPECT_LE(st.dims.dimH_plus, 0.05);
}

TEST(Experiments, ReplicateSeedsDiffer) {
  EXPECT_NE(replicate_seed(1, 0, 0), replicate_seed(1, 0, 1));
  EXPECT_NE(replicate_seed(1, 0, 0), replicate_seed(1, 1, 0));
  EXPECT_EQ(replicate_seed(4, 2, 3), replicate_seed(4, 2, 3));
}
