#include "ncs/suite.hpp"

#include <gtest/gtest.h>

using namespace ncs;

namespace {

using rat_matrix = basic_matrix<rational>;

sequence to_double_sequence(const basic_sequence<rational>& xi)
{
  sequence out;
  for (const auto& [k, v] : xi.entries())
    out.set(k, to_double(v));
  return out;
}

sequence normalized(std::initializer_list<std::pair<index_t, complex>> entries)
{
  sequence e;
  double norm2 = 0;
  for (const auto& [k, v] : entries)
    norm2 += std::norm(v);
  for (const auto& [k, v] : entries)
    e.set(k, v / std::sqrt(norm2));
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Centralizers
// ---------------------------------------------------------------------------

TEST(Centralizer, ReconstructsTheUnitMatrixExample)
{
  // u = e_12: L(e_1 (x) e_1)(e_1) = 0 and L(e_2 (x) e_1)(e_1) = e_1.
  const auto u = rat_matrix::unit(3, 1, 2);
  const auto p = make_centralizer(u);
  EXPECT_EQ(reconstruct(p), u);
}

TEST(Centralizer, ReconstructionIsIndependentOfTheUnitVector)
{
  random_source rs(11);
  const index_t T = 12;
  for (int s = 0; s < 20; ++s) {
    const matrix u = rs.dense_matrix(T);
    const auto p   = make_centralizer(u);
    for (const auto& e : {sequence::unit(1), sequence::unit(T), normalized({{1, {1, 0}}, {2, {0, 1}}}),
                          normalized({{3, {1, 2}}, {5, {-1, 0.5}}, {7, {0.25, 0}}})}) {
      EXPECT_LE(max_abs_diff(reconstruct(p, e), u), 1e-12);
      const sequence eta = rs.vector(T, 4);
      const auto lhs     = reconstruct_adjoint_apply(p, e, eta);
      const auto rhs     = u.adjoint().apply(eta);
      for (index_t i = 1; i <= T; ++i)
        EXPECT_LE(std::abs(lhs[i] - rhs[i]), 1e-12);
    }
  }
}

TEST(Centralizer, ReconstructionRejectsNonUnitOrOversizedVectors)
{
  const auto p = make_centralizer(matrix::unit(4, 1, 1));
  sequence e;
  e.set(1, 2.0);
  EXPECT_THROW(reconstruct(p, e), invalid_argument);
  EXPECT_THROW(reconstruct(p, sequence::unit(5)), dimension_mismatch);
}

TEST(Centralizer, OperationsAreHomomorphic)
{
  random_source rs(12);
  const index_t T = 10;
  for (int s = 0; s < 20; ++s) {
    const matrix u = rs.dense_matrix(T), v = rs.dense_matrix(T);
    const complex lambda = rs.disk();
    const auto pu = make_centralizer(u), pv = make_centralizer(v);
    const std::vector<matrix> probes = {rs.dense_matrix(T), rs.dense_matrix(T), matrix::unit(T, 2, 3)};
    EXPECT_LE(centralizer_distance(make_centralizer(u + v), centralizer_ops(pu, pv, centralizer_op::add), probes), 1e-12);
    EXPECT_LE(centralizer_distance(make_centralizer(u * v), centralizer_ops(pu, pv, centralizer_op::mul), probes), 1e-12);
    EXPECT_LE(centralizer_distance(make_centralizer(u.adjoint()), centralizer_ops(pu, pv, centralizer_op::star), probes),
              1e-12);
    EXPECT_LE(centralizer_distance(make_centralizer(lambda * u),
                                   centralizer_ops(pu, pv, centralizer_op::scale, lambda), probes),
              1e-12);
    // Tags track the underlying matrix.
    EXPECT_LE(max_abs_diff(*(pu * pv).tag, u * v), 1e-12);
  }
}

TEST(Centralizer, LawHoldsForProductsAndFailsForMismatchedPairs)
{
  random_source rs(13);
  const index_t T = 8;
  const matrix u = rs.dense_matrix(T), v = rs.dense_matrix(T);
  const std::vector<std::pair<matrix, matrix>> tests = {{rs.dense_matrix(T), rs.dense_matrix(T)},
                                                        {matrix::unit(T, 1, 2), matrix::unit(T, 2, 1)}};
  EXPECT_LE(centralizer_law_residual(make_centralizer(u) * star(make_centralizer(v)), tests), 1e-12);
  auto broken = make_centralizer(u);
  broken.R    = make_centralizer(v).R;
  EXPECT_GT(centralizer_law_residual(broken, tests), 1e-6);
}

TEST(Centralizer, MatrixUnitsSpanAndMultiply)
{
  const auto units = matrix_units<rational>(3);
  ASSERT_EQ(units.size(), 9u);
  EXPECT_EQ(units[1], rat_matrix::unit(3, 1, 2));
  EXPECT_EQ(units[1] * units[3], rat_matrix::unit(3, 1, 1));  // e_12 e_21
  EXPECT_EQ(make_centralizer(units[4]).L(units[4]), units[4]);
}

TEST(Centralizer, DimensionMismatchIsReported)
{
  EXPECT_THROW(make_centralizer(matrix(3)) + make_centralizer(matrix(4)), dimension_mismatch);
}

TEST(Centralizer, OnlyZeroIsAnnihilatedByRankOnes)
{
  EXPECT_TRUE(annihilated_by_rank_ones(rat_matrix(5)));
  random_source rs(14);
  for (int s = 0; s < 20; ++s) {
    rat_matrix u(6);
    u(rs.integer(1, 6), rs.integer(1, 6)) = rational(rs.integer(1, 9), rs.integer(1, 9));
    EXPECT_FALSE(annihilated_by_rank_ones(u));
  }
}

// ---------------------------------------------------------------------------
// Diagonal subalgebra
// ---------------------------------------------------------------------------

TEST(Diagonal, ProjectionExample)
{
  rat_matrix x(3);
  x(1, 1) = 1;
  x(1, 2) = 7;
  x(2, 2) = rational(1, 2);
  x(3, 1) = -4;
  const auto d = diag_project(x);
  EXPECT_EQ(d.diag[1], rational(1));
  EXPECT_EQ(d.diag[2], rational(1, 2));
  EXPECT_EQ(d.diag[3], rational(0));
  const auto m = d.to_matrix();
  EXPECT_EQ(m(1, 2), rational(0));
  EXPECT_EQ(diag_project(m).to_matrix(), m);
}

TEST(Diagonal, ProjectionIsIdempotentAndContractive)
{
  random_source rs(21);
  const index_t T = 16;
  for (int s = 0; s < 50; ++s) {
    const matrix x = rs.dense_matrix(T, 1.5);
    const auto px  = diag_project(x).to_matrix();
    EXPECT_EQ(diag_project(px).to_matrix(), px);
    for (auto fam : {weight_kind::A, weight_kind::B, weight_kind::B_prime})
      for (level_t N = 0; N <= 3; ++N)
        for (level_t n = 0; n <= 3; ++n)
          for (auto p : {norm_p::one, norm_p::two, norm_p::inf})
            EXPECT_LE(matrix_norm_p(px, {fam}, N, n, p), matrix_norm_p(x, {fam}, N, n, p) * (1 + 1e-15));
  }
}

TEST(Diagonal, ProjectionIsAModuleMapOverDiagonals)
{
  // pi(d x d') = d pi(x) d' for diagonal d, d'.
  random_source rs(22);
  const index_t T = 8;
  for (int s = 0; s < 20; ++s) {
    const matrix x  = rs.dense_matrix(T);
    const matrix d1 = diag_embed(rs.vector(T, T), T).to_matrix();
    const matrix d2 = diag_embed(rs.vector(T, T), T).to_matrix();
    EXPECT_LE(max_abs_diff(diag_project(d1 * x * d2).to_matrix(), d1 * diag_project(x).to_matrix() * d2), 1e-12);
  }
}

TEST(Diagonal, EmbeddingNormIsExact)
{
  basic_sequence<rational> xi;
  xi.set(1, rational(1, 2));
  xi.set(3, rational(-2, 3));
  // N - n = 2: 1/2 + (2/3) * 9 = 13/2
  EXPECT_EQ(embedded_norm(xi, 3, 1), rational(13, 2));
  const auto phi = diag_embed(xi, 4).to_matrix();
  for (level_t N = 0; N <= 4; ++N)
    for (level_t n = 0; n <= 4; ++n) {
      EXPECT_EQ(embedded_norm(xi, N, n), matrix_norm_exact(phi, {weight_kind::A}, N, n, norm_p::one));
      EXPECT_NEAR(embedded_norm(to_double_sequence(xi), N, n), to_double(embedded_norm(xi, N, n)), 1e-12);
    }
  EXPECT_THROW(diag_embed(xi, 2), dimension_mismatch);
}

TEST(Diagonal, EmbeddingIsMultiplicative)
{
  random_source rs(23);
  for (int s = 0; s < 30; ++s) {
    basic_sequence<rational> a, b;
    for (index_t j = 1; j <= 6; ++j) {
      a.set(j, rs.small_rational());
      b.set(j, rs.small_rational());
    }
    EXPECT_EQ(diag_embed(a, 6).to_matrix() * diag_embed(b, 6).to_matrix(), diag_embed(hadamard(a, b), 6).to_matrix());
  }
}

TEST(Diagonal, EmbeddingCommutesWithConjugation)
{
  random_source rs(24);
  for (int s = 0; s < 20; ++s) {
    const sequence xi = rs.vector(8, 5);
    sequence conj_xi;
    for (const auto& [k, v] : xi.entries())
      conj_xi.set(k, std::conj(v));
    EXPECT_EQ(diag_embed(conj_xi, 8).to_matrix(), diag_embed(xi, 8).to_matrix().adjoint());
  }
}

TEST(Diagonal, ExactNormRejectsUnsupportedCases)
{
  rat_matrix x(2);
  EXPECT_THROW(matrix_norm_exact(x, {weight_kind::A}, 0, 0, norm_p::two), invalid_argument);
  EXPECT_THROW(matrix_norm_exact(x, {weight_kind::D}, 0, 0, norm_p::one), invalid_argument);
}

TEST(Diagonal, FiniteInversion)
{
  basic_sequence<rational> xi;
  xi.set(1, 2);
  xi.set(2, rational(-1, 3));
  const auto ok = diag_invert(xi, 2);
  ASSERT_TRUE(std::holds_alternative<diag_inverse<rational>>(ok));
  const auto& inv = std::get<diag_inverse<rational>>(ok).inverse;
  EXPECT_EQ(inv(1, 1), rational(1, 2));
  EXPECT_EQ(inv(2, 2), rational(-3));
  EXPECT_EQ(inv * diag_embed(xi, 2).to_matrix(), rat_matrix::identity(2));

  const auto bad = diag_invert(xi, 3);
  ASSERT_TRUE(std::holds_alternative<not_invertible>(bad));
  EXPECT_EQ(std::get<not_invertible>(bad).index, 3);
}

TEST(Diagonal, InverseOfDiagJLivesInTheAlgebra)
{
  const auto res = diag_invert(diagonal_envelope(1));
  ASSERT_TRUE(std::holds_alternative<envelope_inverse>(res));
  const auto& inv = std::get<envelope_inverse>(res);
  EXPECT_EQ(to_literal(inv.inverse), to_literal(diagonal_envelope(-1)));
  EXPECT_EQ(inv.element_certificate.witness, (affine_witness{1, 1}));
  EXPECT_EQ(inv.inverse_certificate.witness, (affine_witness{1, 0}));
  EXPECT_EQ(inv.joint, (affine_witness{1, 1}));
  for (level_t N = 0; N <= 5; ++N) {
    EXPECT_EQ(growth_oracle(inv.inverse, weight_kind::A, N, inv.joint.at(N)).verdict, growth_verdict::bounded);
    EXPECT_EQ(growth_oracle(diagonal_envelope(1), weight_kind::A, N, inv.joint.at(N)).verdict,
              growth_verdict::bounded);
  }
}

TEST(Diagonal, InversePreservesCoefficient)
{
  const auto res = diag_invert(diagonal_envelope(3, rational(4)));
  const auto& inv = std::get<envelope_inverse>(res).inverse;
  EXPECT_EQ(inv.terms[0].c, rational(1, 4));
  EXPECT_EQ(inv.terms[0].gamma + inv.terms[0].delta, -3);
  for (index_t j = 1; j <= 20; ++j)
    EXPECT_NEAR(inv.value(j, j) * diagonal_envelope(3, rational(4)).value(j, j), 1.0, 1e-12);
}

TEST(Diagonal, GeometricDiagonalIsNotInvertibleInTheAlgebra)
{
  const auto res = diag_invert(diagonal_envelope(0, 1, rational(1, 2)));
  ASSERT_TRUE(std::holds_alternative<not_invertible_in_algebra>(res));
  const auto& r = std::get<not_invertible_in_algebra>(res);
  EXPECT_TRUE(r.reason.exponential);
  EXPECT_EQ(r.reason.path, (ray{ray_kind::diagonal, 0}));
  EXPECT_NEAR(r.log_reciprocal(10, 10), 10 * std::log(2.0), 1e-12);
  for (level_t n : {0, 10, 40})
    EXPECT_GE(ray_oracle(r.log_reciprocal, weight_kind::A, 0, n, r.reason.path).slope, 1 - 0.1);
}

TEST(Diagonal, EnvelopeInversionRejectsNonDiagonals)
{
  EXPECT_THROW(diag_invert(parse_envelope("term(c=1, min^0, max^0, rho=1, band=1)")), invalid_argument);
  EXPECT_THROW(diag_invert(parse_envelope("diag:j^1 + patch(1,1,2)")), invalid_argument);
}

// ---------------------------------------------------------------------------
// Merge projection
// ---------------------------------------------------------------------------

TEST(Merge, TakesUpperFromFirstAndLowerFromSecond)
{
  rat_matrix x(2), y(2);
  x(1, 1) = 1;
  x(1, 2) = 2;
  x(2, 1) = 3;
  x(2, 2) = 4;
  y(1, 1) = 10;
  y(1, 2) = 20;
  y(2, 1) = 30;
  y(2, 2) = 40;
  const auto [a, b] = merge_projection(x, y);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a(1, 1), rational(1));
  EXPECT_EQ(a(1, 2), rational(2));
  EXPECT_EQ(a(2, 1), rational(30));
  EXPECT_EQ(a(2, 2), rational(4));
}

TEST(Merge, IsIdempotentOnEqualPairsAndContractive)
{
  random_source rs(31);
  const index_t T = 12;
  for (int s = 0; s < 30; ++s) {
    const matrix x = rs.dense_matrix(T, 1.0), y = rs.dense_matrix(T, 1.0);
    const auto [m, m2] = merge_projection(x, y);
    EXPECT_EQ(merge_projection(m, m2).first, m);
    EXPECT_EQ(merge_projection(x, x).first, x);
    for (level_t N = 0; N <= 3; ++N)
      for (level_t n = 0; n <= 3; ++n) {
        const double bound = std::max(matrix_norm_p(x, {weight_kind::A}, N, n, norm_p::inf),
                                      matrix_norm_p(y, {weight_kind::A}, N, n, norm_p::inf));
        EXPECT_LE(matrix_norm_p(m, {weight_kind::A}, N, n, norm_p::inf), bound);
      }
  }
  EXPECT_THROW(merge_projection(matrix(2), matrix(3)), dimension_mismatch);
}

// ---------------------------------------------------------------------------
// Non-Q-algebra probe
// ---------------------------------------------------------------------------

TEST(NonQ, SeminormShrinksWhileSingularityPersists)
{
  const auto r = q_algebra_probe(100, 0);
  EXPECT_EQ(r.seminorm, rational(1, 100));
  EXPECT_TRUE(r.singular);
  EXPECT_EQ(r.singular_witness, 100);
  for (level_t N = 0; N <= 4; ++N)
    EXPECT_EQ(q_algebra_probe(7, N).seminorm, rational(1, 7));
  EXPECT_EQ(q_algebra_probe(1, 2).seminorm, rational(1));
  EXPECT_THROW(q_algebra_probe(0, 0), invalid_argument);
}

TEST(NonQ, SeminormMatchesTheMatrixNorm)
{
  for (index_t k : {1, 5, 33})
    for (level_t N = 0; N <= 3; ++N)
      EXPECT_EQ(q_algebra_probe(k, N).seminorm,
                matrix_norm_exact(rat_matrix::unit(k, k, k), {weight_kind::A}, N, N + 1, norm_p::inf));
}
