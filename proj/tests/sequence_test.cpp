#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "lopart/errors.hpp"
#include "lopart/sequence.hpp"
#include "test_support.hpp"

namespace lopart {
namespace {

// Golden-section search for min over mu of sum (x_i - mu)^2 on [lo, hi].
double scalar_minimum(std::span<const double> xs, double lo, double hi) {
  const auto f = [&](double mu) {
    double total = 0.0;
    for (double x : xs) total += (x - mu) * (x - mu);
    return total;
  };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  for (int i = 0; i < 200; ++i) {
    const double c = b - ratio * (b - a);
    const double d = a + ratio * (b - a);
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return f((a + b) / 2.0);
}

TEST(DataSequence, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(DataSequence({}), InvalidInput);
  EXPECT_THROW(DataSequence({1.0, std::nan("")}), InvalidInput);
  EXPECT_THROW(DataSequence({std::numeric_limits<double>::infinity()}),
               InvalidInput);
}

TEST(DataSequence, PrefixSums) {
  const DataSequence seq({1.0, 2.0, 3.0});
  ASSERT_EQ(seq.cum_sum().size(), 4u);
  EXPECT_DOUBLE_EQ(seq.cum_sum()[3], 6.0);
  EXPECT_DOUBLE_EQ(seq.cum_sq()[3], 14.0);
  EXPECT_DOUBLE_EQ(seq.value(2), 2.0);
}

TEST(SegmentLoss, ConstantSegment) {
  const DataSequence seq({5.0, 5.0, 5.0});
  const SegmentFit fit = segment_loss(seq, 1, 3);
  EXPECT_DOUBLE_EQ(fit.loss, 0.0);
  EXPECT_DOUBLE_EQ(fit.mean, 5.0);
}

TEST(SegmentLoss, TwoPoints) {
  const DataSequence seq({1.0, 3.0});
  const SegmentFit fit = segment_loss(seq, 1, 2);
  EXPECT_DOUBLE_EQ(fit.loss, 2.0);
  EXPECT_DOUBLE_EQ(fit.mean, 2.0);
}

TEST(SegmentLoss, SinglePointIsExactlyZero) {
  const DataSequence seq({1e8 + 0.1, -3.7});
  EXPECT_EQ(segment_loss(seq, 1, 1).loss, 0.0);
  EXPECT_EQ(segment_loss(seq, 2, 2).loss, 0.0);
}

TEST(SegmentLoss, RejectsBadRanges) {
  const DataSequence seq({1.0, 2.0, 3.0});
  EXPECT_THROW(segment_loss(seq, 2, 1), InvalidInput);
  EXPECT_THROW(segment_loss(seq, 0, 2), InvalidInput);
  EXPECT_THROW(segment_loss(seq, 1, 4), InvalidInput);
}

TEST(SegmentLoss, MatchesScalarMinimization) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_int_distribution<Position> pos(1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> values(10);
    for (double& v : values) v = value(rng);
    const DataSequence seq(values);
    Position p = pos(rng);
    Position q = pos(rng);
    if (p > q) std::swap(p, q);
    const std::span<const double> window(values.data() + p - 1,
                                         static_cast<std::size_t>(q - p + 1));
    const double oracle = scalar_minimum(window, -10.0, 10.0);
    EXPECT_NEAR(segment_loss(seq, p, q).loss, oracle, 1e-9)
        << "p=" << p << " q=" << q;
  }
}

}  // namespace
}  // namespace lopart
