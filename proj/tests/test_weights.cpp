#include "ncs/weights.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ncs;

namespace {

rational exact(weight_kind k, index_t i, index_t j, level_t N, level_t n)
{
  return weight_eval({k}, i, j, N, n).exact();
}

}  // namespace

// Frozen values computed by hand from the defining formulas.
TEST(WeightEval, FrozenValues)
{
  EXPECT_EQ(exact(weight_kind::A, 2, 3, 1, 1), make_rational(3, 2));  // max(2/3, 3/2)
  EXPECT_EQ(exact(weight_kind::A, 5, 5, 2, 3), make_rational(1, 5));
  EXPECT_EQ(exact(weight_kind::B, 2, 3, 2, 1), make_rational(4, 3));
  EXPECT_EQ(exact(weight_kind::B_prime, 2, 3, 2, 1), make_rational(9, 2));
  EXPECT_EQ(exact(weight_kind::Kinf, 2, 3, 2, 7), rational(36));
  EXPECT_EQ(exact(weight_kind::SeqS, 3, 99, 0, 2), rational(9));
  EXPECT_EQ(exact(weight_kind::SeqSprime, 3, 99, 0, 2), make_rational(1, 9));
  // D(2,3;1,2) = max{3^{3/2}/4, 2^{3/2}/9}
  const auto d = weight_eval({weight_kind::D}, 2, 3, 1, 2);
  EXPECT_FALSE(d.is_exact());
  EXPECT_NEAR(static_cast<double>(d.approx()), std::pow(3.0, 1.5) / 4.0, 1e-15);
}

TEST(WeightEval, AIsMaxOfBAndBPrime)
{
  for (index_t i = 1; i <= 12; ++i)
    for (index_t j = 1; j <= 12; ++j)
      for (level_t N = 0; N <= 4; ++N)
        for (level_t n = 0; n <= 4; ++n)
          EXPECT_EQ(exact(weight_kind::A, i, j, N, n),
                    std::max(exact(weight_kind::B, i, j, N, n), exact(weight_kind::B_prime, i, j, N, n)));
}

TEST(WeightEval, AEqualsMaxPowerTimesMinPower)
{
  for (index_t i = 1; i <= 15; ++i)
    for (index_t j = 1; j <= 15; ++j)
      for (level_t N = 0; N <= 3; ++N)
        for (level_t n = 0; n <= 3; ++n)
          EXPECT_EQ(exact(weight_kind::A, i, j, N, n),
                    pow(rational(std::max(i, j)), N) * pow(rational(std::min(i, j)), -n));
}

TEST(WeightEval, ApproximationsAgreeWithExactValues)
{
  for (auto k : {weight_kind::A, weight_kind::B, weight_kind::B_prime, weight_kind::Kinf})
    for (index_t i = 1; i <= 20; i += 3)
      for (index_t j = 1; j <= 20; j += 4)
        for (level_t N = 0; N <= 3; ++N)
          for (level_t n = 0; n <= 3; ++n) {
            const double e = to_double(exact(k, i, j, N, n));
            EXPECT_NEAR(weight_approx(k, i, j, N, n), e, 1e-14 * e);
            EXPECT_NEAR(log_weight(k, i, j, N, n), std::log(e), 1e-12);
          }
}

TEST(WeightEval, InputErrors)
{
  EXPECT_THROW(weight_eval({weight_kind::A}, 0, 1, 0, 0), invalid_argument);
  EXPECT_THROW(weight_eval({weight_kind::A}, 1, 1, -1, 0), invalid_argument);
  EXPECT_THROW(weight_eval({weight_kind::A}, 1, 1, 65, 0), level_overflow);
  EXPECT_THROW(weight_eval({weight_kind::A, 3}, 1, 1, 4, 0), level_overflow);
  EXPECT_THROW(weight_eval({weight_kind::D}, 2, 2, 1, 0), invalid_argument);
}

TEST(WeightFamily, NamesRoundTrip)
{
  for (auto k : {weight_kind::B, weight_kind::B_prime, weight_kind::A, weight_kind::D, weight_kind::Kinf,
                 weight_kind::SeqS, weight_kind::SeqSprime})
    EXPECT_EQ(parse_weight_kind(to_string(k)), k);
  EXPECT_THROW(parse_weight_kind("nonsense"), invalid_argument);
}

TEST(KoetheAxioms, BuiltInFamiliesHaveNoViolations)
{
  const weight_grid g{40, 40, 5, 5};
  for (auto k : {weight_kind::B, weight_kind::B_prime, weight_kind::A, weight_kind::D, weight_kind::Kinf,
                 weight_kind::SeqS, weight_kind::SeqSprime}) {
    const auto rep = check_koethe_axioms({k}, g);
    EXPECT_TRUE(rep.pass()) << to_string(k) << " first violation: "
                            << (rep.violations.empty() ? "" : rep.violations.front().what);
    EXPECT_GT(rep.checked, 0u);
  }
}

TEST(KoetheAxioms, ScannerDetectsAnIncreasingInnerLevel)
{
  // w = i^n grows with n, violating the inner axiom wherever i > 1.
  const auto rep = scan_koethe_axioms(
      [](index_t i, index_t, level_t, level_t n) { return to_double(pow(rational(i), n)); }, {3, 1, 0, 2}, 0.0);
  ASSERT_FALSE(rep.pass());
  EXPECT_EQ(rep.violations.front().what, "inner");
  EXPECT_EQ(rep.violations.front().i, 2);
}

TEST(KoetheAxioms, ScannerDetectsNonPositivity)
{
  const auto rep =
      scan_koethe_axioms([](index_t i, index_t, level_t, level_t) { return i == 2 ? 0.0 : 1.0; }, {2, 1, 0, 0}, 0.0);
  ASSERT_EQ(rep.violations.size(), 1u);
  EXPECT_EQ(rep.violations.front().what, "positivity");
}

TEST(CompactnessRatios, InnerStepMatchesClosedForm)
{
  for (index_t i = 1; i <= 60; i += 7)
    for (index_t j = 1; j <= 60; j += 5)
      for (level_t N = 0; N <= 5; ++N)
        for (level_t n = 1; n <= 5; ++n) {
          const long double v  = compactness_ratio({weight_kind::D}, i, j, N, n, ratio_shift::inner_step).approx();
          const long double cf = compactness_ratio_closed_form(i, j, n, ratio_shift::inner_step).approx();
          EXPECT_LE(std::abs(v - cf), 1e-12L * cf);
        }
}

TEST(CompactnessRatios, CrossShiftIsExactlyInverseSquareProduct)
{
  for (index_t i = 1; i <= 30; i += 2)
    for (index_t j = 1; j <= 30; j += 3)
      for (level_t N = 0; N <= 4; ++N)
        for (level_t n = 0; n <= 4; ++n)
          EXPECT_EQ(compactness_ratio({weight_kind::A}, i, j, N, n, ratio_shift::cross_shift).exact(),
                    make_rational(1, i * i * j * j));
}

TEST(CompactnessRatios, RatiosAreTiedToTheirFamily)
{
  EXPECT_THROW(compactness_ratio({weight_kind::A}, 1, 1, 0, 1, ratio_shift::inner_step), invalid_argument);
  EXPECT_THROW(compactness_ratio({weight_kind::D}, 1, 1, 0, 1, ratio_shift::cross_shift), invalid_argument);
  EXPECT_THROW(compactness_ratio({weight_kind::D}, 1, 1, 0, 0, ratio_shift::inner_step), invalid_argument);
}

TEST(Nuclearity, ConstantIsPiToTheFourthOver36)
{
  EXPECT_NEAR(nuclearity_constant, 2.7058080842778454, 1e-15);
  EXPECT_DOUBLE_EQ(nuclearity_sum(1), 1.0);
  EXPECT_DOUBLE_EQ(nuclearity_sum(2), 1.5625);
}

// The square of the partial sum S_T of j^-2 misses pi^4/36 by
// (pi^2/6)^2 - S_T^2 = (pi^2/6 - S_T)(pi^2/6 + S_T), which lies in
// [ (pi^2/3 - 2/T)/(T+1)... , (pi^2/3)/T ].
TEST(Nuclearity, TailIsBoundedByPiSquaredOverThreeT)
{
  for (index_t T : {1, 2, 10, 100, 1000, 2000, 5000}) {
    const double gap = nuclearity_constant - nuclearity_sum(T);
    EXPECT_GT(gap, 0) << T;
    EXPECT_LE(gap, std::numbers::pi * std::numbers::pi / 3.0 / static_cast<double>(T)) << T;
    EXPECT_GE(gap, (std::numbers::pi * std::numbers::pi / 3.0 - 2.0 / static_cast<double>(T)) /
                       static_cast<double>(T + 1))
        << T;
  }
}

TEST(Nuclearity, GapAtTwoThousandExceedsOneThousandth)
{
  // The gap behaves like (pi^2/3)/T, so the 1e-3 tolerance needs T >= 3290;
  // at T = 2000 it is ~1.644e-3.
  EXPECT_NEAR(nuclearity_constant - nuclearity_sum(2000), 1.6443e-3, 1e-6);
  EXPECT_GT(nuclearity_constant - nuclearity_sum(3289), 1e-3);
  EXPECT_LE(nuclearity_constant - nuclearity_sum(3290), 1e-3);
}

TEST(Nuclearity, PartialSumsIncrease)
{
  double prev = 0;
  for (index_t T = 1; T <= 200; ++T) {
    const double s = nuclearity_sum(T);
    EXPECT_GT(s, prev);
    prev = s;
  }
  EXPECT_THROW(nuclearity_sum(0), invalid_argument);
}

TEST(Sandwich, ALeqDLeqANextLevel)
{
  const auto rep = sandwich_check({60, 60, 5, 5});
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.checked, 0u);
  const auto t = sandwich_values(7, 3, 2, 2);
  EXPECT_TRUE(t.ordered());
  EXPECT_EQ(t.lower, exact(weight_kind::A, 7, 3, 2, 2));
  EXPECT_EQ(t.upper, exact(weight_kind::A, 7, 3, 3, 2));
}

TEST(WeightTable, RowMajorLayout)
{
  const auto t = weight_table(weight_kind::B, 3, 1, 1);
  ASSERT_EQ(t.size(), 9u);
  EXPECT_DOUBLE_EQ(t[1], 0.5);        // (1,2): 1/2
  EXPECT_DOUBLE_EQ(t[3], 2.0);        // (2,1): 2/1
  EXPECT_DOUBLE_EQ(t[8], 1.0);        // (3,3)
  const auto big = weight_table(weight_kind::A, 13, 1, 0);
  EXPECT_DOUBLE_EQ(big[12 * 13 + 11], 13.0);
}
