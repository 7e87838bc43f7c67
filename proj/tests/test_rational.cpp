#include "ncs/rational.hpp"

#include <gtest/gtest.h>

using namespace ncs;

TEST(Rational, ParsesIntegersFractionsAndDecimals)
{
  EXPECT_EQ(parse_rational("7"), rational(7));
  EXPECT_EQ(parse_rational("-3/4"), make_rational(-3, 4));
  EXPECT_EQ(parse_rational("0.125"), make_rational(1, 8));
  EXPECT_EQ(parse_rational(" +2 "), rational(2));
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
}

TEST(Rational, RejectsMalformedLiterals)
{
  EXPECT_THROW(parse_rational(""), invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), invalid_argument);
  EXPECT_THROW(parse_rational("abc"), invalid_argument);
  EXPECT_THROW(parse_rational("1/"), invalid_argument);
  EXPECT_THROW(make_rational(1, 0), invalid_argument);
}

TEST(Rational, FloorAndCeilRoundTowardInfinities)
{
  EXPECT_EQ(floor(make_rational(7, 2)), 3);
  EXPECT_EQ(ceil(make_rational(7, 2)), 4);
  EXPECT_EQ(floor(make_rational(-7, 2)), -4);
  EXPECT_EQ(ceil(make_rational(-7, 2)), -3);
  EXPECT_EQ(floor(rational(5)), 5);
  EXPECT_EQ(ceil(rational(-5)), -5);
}

TEST(Rational, FloorCeilBracketEveryFraction)
{
  for (int p = -40; p <= 40; ++p)
    for (int q = 1; q <= 9; ++q) {
      const rational r = make_rational(p, q);
      EXPECT_LE(rational(floor(r)), r);
      EXPECT_GT(rational(floor(r)) + 1, r);
      EXPECT_GE(rational(ceil(r)), r);
      EXPECT_LT(rational(ceil(r)) - 1, r);
    }
}

TEST(Rational, IntegerPowers)
{
  EXPECT_EQ(pow(make_rational(2, 3), 3), make_rational(8, 27));
  EXPECT_EQ(pow(make_rational(2, 3), -2), make_rational(9, 4));
  EXPECT_EQ(pow(rational(5), 0), rational(1));
  EXPECT_THROW(pow(rational(0), -1), invalid_argument);
}

TEST(Rational, Formatting)
{
  EXPECT_EQ(to_string(make_rational(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(rational(12)), "12");
  EXPECT_DOUBLE_EQ(to_double(make_rational(1, 4)), 0.25);
  EXPECT_THROW(to_int64(bigint(1) << 70), level_overflow);
}
