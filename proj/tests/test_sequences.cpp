#include "ncs/suite.hpp"

#include <gtest/gtest.h>

using namespace ncs;

TEST(Sequence, StoresNoZerosAndStartsAtOne)
{
  sequence v;
  v.set(3, {2, 0});
  v.set(3, {0, 0});
  EXPECT_TRUE(v.empty());
  EXPECT_THROW(v.set(0, {1, 0}), invalid_argument);
  const auto d = sequence::from_dense({{1, 0}, {0, 0}, {3, 0}});
  EXPECT_EQ(d.entries().size(), 2u);
  EXPECT_EQ(d.support_end(), 3);
  EXPECT_EQ(d.dense(4)[2], complex(3, 0));
}

TEST(SequenceNorm, FrozenValues)
{
  // |(1, 1)|_1 = sqrt(1 + 4)
  const auto v = sequence::from_dense({{1, 0}, {1, 0}});
  EXPECT_DOUBLE_EQ(seq_norm(v, 1), std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(seq_norm(v, 0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(seq_norm(v, -1), std::sqrt(1.25));
  EXPECT_DOUBLE_EQ(seq_norm(sequence::unit(4), 3), 64.0);
}

TEST(SequenceNorm, IncreasesWithTheLevel)
{
  random_source rs(7);
  for (int s = 0; s < 100; ++s) {
    const auto v = rs.vector(50, 6);
    for (int n = -4; n < 4; ++n)
      EXPECT_LE(seq_norm(v, n), seq_norm(v, n + 1) * (1 + 1e-15));
  }
}

TEST(Pairing, SesquilinearWithConjugateSecondSlot)
{
  random_source rs(11);
  for (int s = 0; s < 100; ++s) {
    const auto a = rs.vector(20, 5), b = rs.vector(20, 5);
    const complex lambda = rs.disk();
    EXPECT_LT(std::abs(pairing(lambda * a, b) - lambda * pairing(a, b)), 1e-14);
    EXPECT_LT(std::abs(pairing(a, lambda * b) - std::conj(lambda) * pairing(a, b)), 1e-14);
    EXPECT_LT(std::abs(pairing(a, b) - std::conj(pairing(b, a))), 1e-14);
    EXPECT_NEAR(pairing(a, a).real(), seq_norm(a, 0) * seq_norm(a, 0), 1e-13);
  }
}

TEST(Pairing, FrozenValue)
{
  sequence a, b;
  a.set(1, {1, 1});
  a.set(2, {2, 0});
  b.set(1, {0, 1});
  b.set(3, {5, 0});
  // (1+i) * conj(i) = (1+i)(-i) = 1 - i
  EXPECT_EQ(pairing(a, b), complex(1, -1));
}

TEST(Hadamard, IsTheEntrywiseProduct)
{
  const auto a = basic_sequence<rational>::from_dense({1, 2, 3});
  const auto b = basic_sequence<rational>::from_dense({rational(1, 2), 0, 4});
  const auto h = hadamard(a, b);
  EXPECT_EQ(h[1], rational(1, 2));
  EXPECT_EQ(h[2], 0);
  EXPECT_EQ(h[3], 12);
  EXPECT_EQ(h.entries().size(), 2u);
}

TEST(DiagSandwich, HoldsOnRandomVectors)
{
  random_source rs(3);
  for (int s = 0; s < 300; ++s) {
    const auto v = rs.vector(200, rs.integer(1, 30));
    for (int m = 1; m <= 5; ++m) {
      const auto r = diag_sandwich_check(v, m);
      EXPECT_TRUE(r.ordered) << r.lhs << " " << r.mid << " " << r.rhs;
    }
  }
}

TEST(DiagSandwich, RequiresPositiveLevel)
{
  EXPECT_THROW(diag_sandwich_check(sequence::unit(1), 0), invalid_argument);
}
