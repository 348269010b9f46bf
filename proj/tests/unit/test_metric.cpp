#include <gtest/gtest.h>

#include <cmath>

#include "shiftlab/core/metric.hpp"
#include "shiftlab/measures/sampling.hpp"

using namespace shiftlab;

namespace {

// Direct sum over |n| <= W of 2^-|n| rho/(1+rho); no library metric code.
double window_sum(const BilateralSequence& x, const BilateralSequence& y, int W) {
  double s = 0.0;
  for (int n = -W; n <= W; ++n) {
    const double rho = x.alphabet().is_finite() ? (x[n] == y[n] ? 0.0 : 1.0) : std::fabs(x[n] - y[n]);
    s += std::ldexp(1.0, -std::abs(n)) * rho / (1.0 + rho);
  }
  return s;
}

}  // namespace

TEST(Metric, ConstructedValues) {
  const AlphabetSpec bin = AlphabetSpec::finite(2);
  const auto zero = BilateralSequence::constant(bin, 0);
  const auto one = BilateralSequence::constant(bin, 1);
  EXPECT_NEAR(product_metric(zero, zero.with_coordinate(0, 1), 1e-12), 0.5, 1e-12);
  EXPECT_NEAR(product_metric(zero, one, 1e-12), 1.5, 1e-12);
  EXPECT_NEAR(product_metric(zero, zero.with_coordinate(3, 1), 1e-12), 0.0625, 1e-12);
  EXPECT_DOUBLE_EQ(product_metric(zero, zero, 1e-12), 0.0);
}

TEST(Metric, ShiftMovesCoordinates) {
  const AlphabetSpec unit = AlphabetSpec::unit_interval();
  const auto x = BilateralSequence::from_function(unit, [](std::int64_t n) { return n >= 0 ? 0.5 : 0.25; });
  const auto tx = shift(x, 3);
  EXPECT_DOUBLE_EQ(tx[2], 0.25);
  EXPECT_DOUBLE_EQ(tx[3], 0.5);
  EXPECT_DOUBLE_EQ(shift(tx, -3)[-1], x[-1]);
}

TEST(Metric, ShiftDoublesAtMost) {
  const AlphabetSpec bin = AlphabetSpec::finite(2);
  const auto zero = BilateralSequence::constant(bin, 0);
  const auto y = zero.with_coordinate(-1, 1);
  EXPECT_NEAR(product_metric(zero, y, 1e-12), 0.25, 1e-12);
  EXPECT_NEAR(product_metric(shift(zero, 1), shift(y, 1), 1e-12), 0.5, 1e-12);
}

TEST(Metric, AgreesWithDirectWindowSum) {
  for (const auto& model : {MeasureModel::bernoulli({0.3, 0.7}), MeasureModel::bernoulli_uniform()}) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const auto x = sample_point(model, 2 * s), y = sample_point(model, 2 * s + 1);
      const double tol = 1e-9;
      // the tail beyond |n| = 40 weighs 2^-40 at most
      EXPECT_NEAR(product_metric(x, y, tol), window_sum(x, y, 40), tol + 1e-11);
    }
  }
}

TEST(Metric, AxiomsOnRandomTriples) {
  const double tol = 1e-9;
  const auto model = MeasureModel::bernoulli_uniform();
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto x = sample_point(model, 3 * s), y = sample_point(model, 3 * s + 1), z = sample_point(model, 3 * s + 2);
    const double dxy = product_metric(x, y, tol), dyz = product_metric(y, z, tol), dxz = product_metric(x, z, tol);
    EXPECT_LE(dxz, dxy + dyz + 3 * tol);
    EXPECT_LE(dxy, 3.0 + tol);
    EXPECT_NEAR(dxy, product_metric(y, x, tol), tol);
    EXPECT_LE(product_metric(shift(x, 1), shift(y, 1), tol), 2 * dxy + 3 * tol);
    EXPECT_LE(product_metric(shift(x, -1), shift(y, -1), tol), 2 * dxy + 3 * tol);
  }
}

TEST(Metric, TruncationDepth) {
  for (double tol : {0.5, 0.1, 1e-3, 1e-6, 1e-12}) {
    const int N = truncation_depth(tol);
    EXPECT_LE(tail_bound(N), tol / 4 * 1.0000001);
    EXPECT_GT(tail_bound(N - 1), tol / 4 * 0.9999999);
  }
}

TEST(Metric, RejectsMixedAlphabets) {
  const auto a = BilateralSequence::constant(AlphabetSpec::finite(2), 0);
  const auto b = BilateralSequence::constant(AlphabetSpec::unit_interval(), 0.0);
  EXPECT_THROW(product_metric(a, b, 1e-6), DomainError);
}
