#include <gtest/gtest.h>

#include "cspan/cluster.hpp"
#include "cspan/exact.hpp"

using namespace cspan;

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("1/3"), Rational(1, 3));
  EXPECT_EQ(Rational::parse("0.34"), Rational(17, 50));
  EXPECT_EQ(Rational::parse("2"), Rational(2, 1));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  EXPECT_THROW(Rational::parse("abc"), ParameterError);
  EXPECT_THROW(Rational::parse("1/0"), ParameterError);
  EXPECT_THROW(Rational::parse(""), ParameterError);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational(1, 3), Rational::parse("0.34"));
  EXPECT_GT(Rational(1, 2), Rational::parse("0.45"));
  EXPECT_EQ(Rational(3, 1) * Rational(1, 3), Rational(1, 1));
}

TEST(Powers, ExactThresholds) {
  // sqrt(5) ≈ 2.236, sqrt(3) ≈ 1.732
  EXPECT_TRUE(at_least_power(4, 5, {1, 2}));
  EXPECT_FALSE(at_least_power(2, 5, {1, 2}));
  EXPECT_TRUE(at_least_power(2, 3, {1, 2}));
  EXPECT_FALSE(at_least_power(1, 3, {1, 2}));
  EXPECT_TRUE(at_least_power(2, 256, {1, 8}));   // exactly equal
  EXPECT_TRUE(at_most_power(2, 256, {1, 8}));
  EXPECT_EQ(ceil_power(256, {1, 4}), 4u);
  EXPECT_EQ(ceil_power(5, {1, 2}), 3u);
  EXPECT_EQ(floor_power(5, {1, 2}), 2u);
  EXPECT_EQ(floor_power(16, {3, 2}), 64u);
  EXPECT_EQ(ceil_power(256, {17, 50}), 7u);  // 256^0.34 ≈ 6.59
  EXPECT_TRUE(at_most_power(1, 16, {-1, 4}) == false);
  EXPECT_TRUE(at_most_power(0, 16, {-1, 4}));
}

TEST(Powers, Logs) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(16), 4u);
  EXPECT_EQ(ceil_log2(17), 5u);
  EXPECT_EQ(floor_log2(Rational(1, 1)), 0);
  EXPECT_EQ(floor_log2(Rational(2, 1)), 1);
  EXPECT_EQ(floor_log2(Rational::parse("3.06")), 1);
  EXPECT_EQ(floor_log2(Rational::parse("0.5")), -1);
  EXPECT_EQ(floor_log2(Rational(8, 1)), 3);
}

TEST(RadiusSequence, Examples) {
  auto r = radius_sequence(8, 3);
  EXPECT_EQ(r.values[0], 0u);
  EXPECT_EQ(r.values[1], 8u);
  EXPECT_EQ(r.values[2], 144u);
  EXPECT_EQ(r.at(3), 17u * 144 + 8);
}

TEST(RadiusSequence, ClosedFormAndHalfPowerBound) {
  for (std::uint64_t delta = 1; delta <= 64; ++delta) {
    auto r = radius_sequence(delta, 12);
    for (std::size_t i = 0; i <= 12; ++i) {
      EXPECT_EQ(r.values[i], r.closed_form(i)) << "delta " << delta << " i " << i;
      EXPECT_TRUE(r.within_half_power(i));
    }
  }
  EXPECT_THROW(radius_sequence(0, 2), ParameterError);
}

TEST(RadiusSequence, OverflowIsGuarded) {
  EXPECT_THROW(radius_sequence(1u << 20, 40), std::overflow_error);
}
