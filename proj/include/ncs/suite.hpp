#ifndef NCS_SUITE_HPP
#define NCS_SUITE_HPP

// The acceptance battery: ten checks, each returning a pass flag and a JSON
// detail record. Randomized checks draw from a seeded mt19937_64 through a
// bit-level uniform map, so results are identical across platforms.

#include "ncs/interpolation.hpp"
#include "ncs/io.hpp"
#include "ncs/multiplier.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace ncs {

// ---------------------------------------------------------------------------
// Deterministic random inputs
// ---------------------------------------------------------------------------

class random_source {
public:
  explicit random_source(std::uint64_t seed) : rng_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi)
  {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  complex disk() { return {uniform(-1, 1), uniform(-1, 1)}; }

  /// Dense complex matrix with entries (u + iv) (ij)^-r, r uniform in [0, decay].
  matrix dense_matrix(index_t T, double decay = 0)
  {
    matrix x(T);
    const double r = decay > 0 ? uniform(0, decay) : 0.0;
    for (index_t i = 1; i <= T; ++i)
      for (index_t j = 1; j <= T; ++j)
        x(i, j) = disk() * std::pow(static_cast<double>(i * j), -r);
    return x;
  }

  sequence vector(index_t T, index_t nonzeros)
  {
    sequence v;
    for (index_t k = 0; k < nonzeros; ++k)
      v.set(integer(1, T), disk());
    return v;
  }

  rational small_rational() { return rational(integer(-9, 9), integer(1, 7)); }

private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Curated envelope corpus
// ---------------------------------------------------------------------------

/// Thirty envelopes, each attained (the bound is the exact modulus), with
/// decay bases <= 1/2, modest exponents, patches inside the smallest
/// oracle size and unit coefficients on every ray that can refute.
inline const std::vector<std::string>& curated_envelopes()
{
  static const std::vector<std::string> corpus = {
      "identity",
      "diag:j^5",
      "term(c=1, min^-3, max^-3, rho=1, full)",
      "term(c=1, min^0, max^0, rho=1/2, full)",
      "diag:j^-2",
      "term(c=1, min^0, max^0, rho=1, band=1)",
      "term(c=1, min^-2, max^0, rho=1, upper)",
      "term(c=1, min^0, max^-2, rho=1, lower)",
      "term(c=1, min^1, max^-1, rho=1, band=2)",
      "term(c=1, min^-1, max^-4, rho=1, full)",
      "term(c=3, min^2, max^-2, rho=1/2, full)",
      "term(c=1, min^0, max^-1, rho=1, full)",
      "term(c=1, min^-5, max^0, rho=1, full)",
      "term(c=1, min^3, max^-3, rho=1, full)",
      "diag:j^1/2",
      "term(c=1/2, min^0, max^0, rho=1/3, band=3)",
      "term(c=1, min^0, max^-2, rho=1, upper) + term(c=1, min^0, max^-3, rho=1, lower)",
      "identity + term(c=1, min^-3, max^-3, rho=1, full)",
      "diag:j^2 + patch(1,2,5) + patch(3,1,7)",
      "term(c=1, min^-2, max^-2, rho=1, full) + patch(15,15,100)",
      "term(c=1, min^-1, max^0, rho=1/2, upper)",
      "term(c=1, min^2, max^0, rho=1/2, band=0)",
      "term(c=1, min^0, max^3, rho=1, band=1)",
      "term(c=1, min^-3/2, max^-3/2, rho=1, full)",
      "term(c=1, min^0, max^-7/2, rho=1, full)",
      "term(c=1, min^4, max^-4, rho=1/2, full)",
      "term(c=1, min^-1, max^-1, rho=1, band=5)",
      "term(c=2, min^0, max^-1, rho=1, lower) + term(c=1, min^1, max^0, rho=1, band=0)",
      "term(c=1, min^-2, max^1, rho=1, upper)",
      "term(c=1, min^5, max^0, rho=1, full)",
  };
  return corpus;
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct check_result {
  int id = 0;
  std::string name;
  bool pass = true;
  json detail = json::object();
};

namespace detail {

inline json violation_json(const weight_violation& v)
{
  return json{{"i", v.i}, {"j", v.j}, {"N", v.N}, {"n", v.n}, {"what", v.what}};
}

}  // namespace detail

/// 1. sum_{i,j<=2000} (ij)^-2 within 1e-3 of pi^4/36.
inline check_result check_nuclearity(index_t T = 2000, double tol = 1e-3)
{
  check_result r{1, "nuclearity-constant"};
  const double sum = nuclearity_sum(T);
  const double gap = nuclearity_constant - sum;
  r.pass           = std::abs(gap) <= tol;
  r.detail         = {{"T", T}, {"sum", sum}, {"target", nuclearity_constant}, {"gap", gap}, {"tolerance", tol}};
  return r;
}

/// 2. ||x||_{N,n,inf} <= ||x||_{N,n,1} and ||x||_{N,n+2,1} <= (pi^4/36) ||x||_{N+2,n,inf}.
inline check_result check_lp_equivalence(std::uint64_t seed, int count = 1000, index_t T = 64, level_t L = 4,
                                         double rel_tol = 1e-10)
{
  check_result r{2, "lp-equivalence"};
  random_source rs(seed);
  std::vector<std::vector<double>> tables(static_cast<std::size_t>((L + 3) * (L + 3)));
  auto table = [&](level_t N, level_t n) -> const std::vector<double>& {
    auto& t = tables[static_cast<std::size_t>(N * (L + 3) + n)];
    if (t.empty())
      t = weight_table(weight_kind::A, T, N, n);
    return t;
  };
  double worst = 0;  // max of lhs / rhs over both inequalities
  json first_failure;
  for (int s = 0; s < count; ++s) {
    const matrix x = rs.dense_matrix(T, 4.0);
    for (level_t N = 0; N <= L; ++N)
      for (level_t n = 0; n <= L; ++n) {
        const double inf  = matrix_norm_p(x, std::span<const double>(table(N, n)), norm_p::inf);
        const double one  = matrix_norm_p(x, std::span<const double>(table(N, n)), norm_p::one);
        const double lhs2 = matrix_norm_p(x, std::span<const double>(table(N, n + 2)), norm_p::one);
        const double rhs2 = nuclearity_constant * matrix_norm_p(x, std::span<const double>(table(N + 2, n)), norm_p::inf);
        worst = std::max({worst, inf / one, lhs2 / rhs2});
        if ((inf > one * (1 + rel_tol) || lhs2 > rhs2 * (1 + rel_tol)) && r.pass) {
          r.pass        = false;
          first_failure = {{"sample", s}, {"N", N}, {"n", n}, {"inf", inf}, {"one", one}, {"lhs", lhs2}, {"rhs", rhs2}};
        }
      }
  }
  r.detail = {{"samples", count}, {"T", T}, {"levels", L}, {"maxRatio", worst}};
  if (!r.pass)
    r.detail["violation"] = first_failure;
  return r;
}

/// 3. p_{n,B}(x) = q_{n,B}(x).
inline check_result check_p_equals_q(std::uint64_t seed, int count = 200, index_t T = 16, double tol = 1e-10)
{
  check_result r{3, "p-equals-q"};
  random_source rs(seed ^ 0x9e3779b97f4a7c15ULL);
  double worst = 0;
  json first_failure;
  for (int s = 0; s < count; ++s) {
    const matrix x = rs.dense_matrix(T, 2.0);
    bounded_set<complex> B;
    const auto size = rs.integer(1, 4);
    for (std::int64_t b = 0; b < size; ++b)
      B.push_back(rs.vector(T, rs.integer(1, T)));
    const int n   = static_cast<int>(rs.integer(0, 4));
    const double p = seminorm_p(x, n, B);
    const double q = seminorm_q(x, n, B);
    const double e = std::abs(p - q) / (1 + std::max(p, q));
    worst          = std::max(worst, e);
    if (e > tol && r.pass) {
      r.pass        = false;
      first_failure = {{"sample", s}, {"n", n}, {"p", p}, {"q", q}};
    }
  }
  r.detail = {{"samples", count}, {"T", T}, {"maxScaledGap", worst}};
  if (!r.pass)
    r.detail["violation"] = first_failure;
  return r;
}

/// 4. Monotonicity of B, B', A, D; the two compactness ratios; A <= D <= A(N+1).
inline check_result check_koethe(index_t size = 200, level_t L = 6, double rel_tol = 1e-12)
{
  check_result r{4, "koethe-axioms"};
  const weight_grid g{size, size, L, L};
  json per_kind = json::object();
  for (auto k : {weight_kind::B, weight_kind::B_prime, weight_kind::A, weight_kind::D}) {
    const auto rep = check_koethe_axioms({k}, g);
    json o         = {{"checked", rep.checked}, {"violations", rep.violations.size()}};
    if (!rep.pass()) {
      r.pass         = false;
      o["violation"] = detail::violation_json(rep.violations.front());
    }
    per_kind[to_string(k)] = o;
  }

  // inner_step: D(N,n+1)/D(N,n) against its closed form.
  double inner_err = 0;
  for (index_t i = 1; i <= size; ++i)
    for (index_t j = 1; j <= size; ++j)
      for (level_t n = 1; n <= L; ++n) {
        const long double cf = compactness_ratio_closed_form(i, j, n, ratio_shift::inner_step).approx();
        for (level_t N = 0; N <= L; ++N) {
          const long double v = compactness_ratio({weight_kind::D}, i, j, N, n, ratio_shift::inner_step).approx();
          inner_err           = std::max(inner_err, static_cast<double>(std::abs(v - cf) / cf));
        }
      }

  // cross_shift: A(N,n+2)/A(N+2,n) = (ij)^-2, compared exactly.
  std::size_t cross_mismatch = 0;
  detail::power_table pi(L), pj(L);
  auto a_weight = [&](index_t i, index_t j, level_t N, level_t n) {
    const auto& I = pi.of(i);
    const auto& J = pj.of(j);
    detail::fraction b{I[N], J[n]}, bp{J[N], I[n]};
    return b < bp ? bp : b;
  };
  for (index_t i = 1; i <= size; ++i)
    for (index_t j = 1; j <= size; ++j)
      for (level_t N = 0; N + 2 <= L; ++N)
        for (level_t n = 0; n + 2 <= L; ++n) {
          const auto a = a_weight(i, j, N, n + 2);
          const auto b = a_weight(i, j, N + 2, n);
          // a / b == 1 / (i^2 j^2)  <=>  a.num * b.den * i^2 j^2 == a.den * b.num
          if (a.num * b.den * bigint(i * i * j * j) != a.den * b.num)
            ++cross_mismatch;
        }

  const auto sw = sandwich_check({size, size, L, L});
  r.pass        = r.pass && inner_err <= rel_tol && cross_mismatch == 0 && sw.pass();
  r.detail      = {{"grid", size},
                   {"levels", L},
                   {"kinds", per_kind},
                   {"innerStepMaxRelErr", inner_err},
                   {"crossShiftMismatches", cross_mismatch},
                   {"sandwichChecked", sw.checked},
                   {"sandwichViolations", sw.violations.size()}};
  return r;
}

/// 5. reconstruct(make_centralizer(u), e) = u, and rho is a *-homomorphism.
inline check_result check_centralizers(std::uint64_t seed, int count = 50, index_t T = 32, double tol = 1e-12)
{
  check_result r{5, "centralizer-roundtrip"};
  random_source rs(seed ^ 0x5851f42d4c957f2dULL);
  sequence e2;
  e2.set(1, 1 / std::sqrt(2.0));
  e2.set(2, 1 / std::sqrt(2.0));
  const std::vector<sequence> vectors = {sequence::unit(1), e2};

  double recon = 0, adj = 0, hom = 0, law = 0;
  for (int s = 0; s < count; ++s) {
    const matrix u = rs.dense_matrix(T);
    const matrix v = rs.dense_matrix(T);
    const complex lambda = rs.disk();
    const auto pu = make_centralizer(u), pv = make_centralizer(v);
    for (const auto& e : vectors) {
      recon = std::max(recon, max_abs_diff(reconstruct(pu, e), u));
      const sequence eta = rs.vector(T, 3);
      const auto lhs     = reconstruct_adjoint_apply(pu, e, eta);
      const auto rhs     = u.adjoint().apply(eta);
      for (index_t i = 1; i <= T; ++i)
        adj = std::max(adj, std::abs(lhs[i] - rhs[i]));
    }
    const std::vector<matrix> probes = {rs.dense_matrix(T), rs.dense_matrix(T)};
    hom = std::max({hom, centralizer_distance(make_centralizer(u + v), pu + pv, probes),
                    centralizer_distance(make_centralizer(u * v), pu * pv, probes),
                    centralizer_distance(make_centralizer(u.adjoint()), star(pu), probes),
                    centralizer_distance(make_centralizer(lambda * u), lambda * pu, probes)});
    law = std::max(law, centralizer_law_residual(pu, {{probes[0], probes[1]}}));
  }
  r.pass   = recon <= tol && adj <= tol && hom <= tol && law <= tol;
  r.detail = {{"samples", count},
              {"T", T},
              {"reconstructionResidual", recon},
              {"adjointResidual", adj},
              {"homomorphismResidual", hom},
              {"lawResidual", law}};
  return r;
}

/// 6. decide_membership agrees with the numeric oracle on the curated corpus.
inline check_result check_membership(const oracle_config& cfg = {}, level_t N_cap = 6, level_t n_cap = 16)
{
  check_result r{6, "membership-soundness"};
  json failures = json::array();
  auto fail     = [&](const std::string& env, const std::string& what) {
    r.pass = false;
    failures.push_back(json{{"envelope", env}, {"what", what}});
  };
  const matrix_space spaces[] = {matrix_space::MS, matrix_space::Ls, matrix_space::Lsprime, matrix_space::S};
  int certificates = 0, refutations = 0;
  for (const auto& lit : curated_envelopes()) {
    const auto x = parse_envelope(lit);
    std::map<matrix_space, membership_result> res;
    decide_options opt;
    opt.bound_cap = N_cap;
    for (auto sp : spaces) {
      res.emplace(sp, decide_membership(x, sp, opt));
      const auto kind = weight_of(sp);
      const auto& out = res.at(sp);
      if (const auto* c = std::get_if<certificate>(&out)) {
        ++certificates;
        for (level_t N = 0; N <= N_cap; ++N) {
          const auto g = growth_oracle(x, kind, N, c->witness.at(N), cfg);
          if (g.slope > cfg.bounded_slope)
            fail(lit, to_string(sp) + " certificate but slope " + std::to_string(g.slope) + " at N=" +
                          std::to_string(N));
          if (g.sup() > c->bound[static_cast<std::size_t>(N)] * (1 + 1e-9))
            fail(lit, to_string(sp) + " sup exceeds certified bound at N=" + std::to_string(N));
        }
      } else {
        ++refutations;
        const auto& f = std::get<refutation>(out);
        for (level_t n = 0; n <= n_cap; ++n) {
          const auto g = ray_oracle(x, kind, f.level, n, f.path, cfg);
          if (g.slope < to_double(f.exponent) - 0.1)
            fail(lit, to_string(sp) + " refutation but ray slope " + std::to_string(g.slope) + " at n=" +
                          std::to_string(n));
        }
      }
    }
    // Inclusion chain S in MS in Ls, Lsprime.
    if (is_certificate(res.at(matrix_space::S)) && !is_certificate(res.at(matrix_space::MS)))
      fail(lit, "certificate for S without certificate for MS");
    if (is_certificate(res.at(matrix_space::MS)) &&
        !(is_certificate(res.at(matrix_space::Ls)) && is_certificate(res.at(matrix_space::Lsprime))))
      fail(lit, "certificate for MS without certificates for Ls and Lsprime");
    // Transpose symmetry Ls <-> Lsprime.
    const auto t = decide_membership(envelope_adjoint(x), matrix_space::Lsprime, opt);
    const auto& l = res.at(matrix_space::Ls);
    if (is_certificate(l) != is_certificate(t) ||
        (is_certificate(l) && std::get<certificate>(l).witness != std::get<certificate>(t).witness))
      fail(lit, "Ls decision differs from Lsprime decision of the adjoint");
    // Patch irrelevance.
    auto patched = x;
    patched.patch[{2, 3}] = 1e6;
    for (auto sp : spaces) {
      const auto a = decide_membership(patched, sp, opt);
      const auto& b = res.at(sp);
      if (is_certificate(a) != is_certificate(b) ||
          (is_certificate(a) && std::get<certificate>(a).witness != std::get<certificate>(b).witness))
        fail(lit, "patch changed the " + to_string(sp) + " decision");
    }
  }
  r.detail = {{"envelopes", curated_envelopes().size()},
              {"certificates", certificates},
              {"refutations", refutations},
              {"failures", failures}};
  return r;
}

/// 7. Diagonal projection, embedding and inversion.
inline check_result check_diagonal(std::uint64_t seed, int count = 200, index_t T = 32, level_t L = 4)
{
  check_result r{7, "diagonal-subalgebra"};
  random_source rs(seed ^ 0xda942042e4dd58b5ULL);
  bool idempotent = true, contractive = true;
  for (int s = 0; s < count; ++s) {
    const matrix x  = rs.dense_matrix(T, 2.0);
    const auto px   = diag_project(x).to_matrix();
    const auto ppx  = diag_project(px).to_matrix();
    idempotent      = idempotent && ppx == px;
    for (level_t N = 0; N <= L; ++N)
      for (level_t n = 0; n <= L; ++n)
        contractive = contractive && matrix_norm_p(px, {weight_kind::A}, N, n, norm_p::one) <=
                                         matrix_norm_p(x, {weight_kind::A}, N, n, norm_p::one);
  }

  bool embed_exact = true;
  for (int s = 0; s < 50; ++s) {
    basic_sequence<rational> xi;
    for (index_t j = 1; j <= T; ++j)
      if (rs.unit() < 0.5)
        xi.set(j, rs.small_rational());
    const auto phi = diag_embed(xi, T).to_matrix();
    for (level_t N = 0; N <= L; ++N)
      for (level_t n = 0; n <= L; ++n)
        embed_exact = embed_exact && embedded_norm(xi, N, n) == matrix_norm_exact(phi, {weight_kind::A}, N, n, norm_p::one);
  }

  // diag(j): certified inverse in the algebra with one witness for both.
  json inv_detail;
  bool inv_ok = false;
  {
    const auto res = diag_invert(diagonal_envelope(1));
    if (const auto* ok = std::get_if<envelope_inverse>(&res)) {
      inv_ok     = ok->joint == affine_witness{1, 1};
      inv_detail = {{"inverse", to_literal(ok->inverse)},
                    {"inverseWitness", to_string(ok->inverse_certificate.witness)},
                    {"elementWitness", to_string(ok->element_certificate.witness)},
                    {"jointWitness", to_string(ok->joint)}};
      for (level_t N = 0; N <= 6; ++N) {
        inv_ok = inv_ok && growth_oracle(ok->inverse, weight_kind::A, N, ok->joint.at(N)).verdict ==
                               growth_verdict::bounded;
        inv_ok = inv_ok && growth_oracle(diagonal_envelope(1), weight_kind::A, N, ok->joint.at(N)).verdict ==
                               growth_verdict::bounded;
      }
    }
    // The truncated inverse is exact.
    basic_sequence<rational> j_seq;
    for (index_t j = 1; j <= T; ++j)
      j_seq.set(j, rational(j));
    const auto fin = diag_invert(j_seq, T);
    inv_ok = inv_ok && std::holds_alternative<diag_inverse<rational>>(fin) &&
             std::get<diag_inverse<rational>>(fin).inverse * diag_embed(j_seq, T).to_matrix() ==
                 basic_matrix<rational>::identity(T);
  }

  // diag(2^-j): rejected, with the reciprocal blowing up along the diagonal.
  bool reject_ok = false;
  double min_slope = std::numeric_limits<double>::infinity();
  {
    const auto res = diag_invert(diagonal_envelope(0, 1, rational(1, 2)));
    if (const auto* no = std::get_if<not_invertible_in_algebra>(&res)) {
      reject_ok = no->reason.exponential;
      for (level_t n = 0; n <= 16; ++n) {
        const auto g = ray_oracle(no->log_reciprocal, weight_kind::A, no->reason.level, n, no->reason.path);
        min_slope    = std::min(min_slope, g.slope);
      }
      reject_ok = reject_ok && min_slope >= to_double(no->reason.exponent) - 0.1;
    }
  }

  r.pass   = idempotent && contractive && embed_exact && inv_ok && reject_ok;
  r.detail = {{"samples", count},
              {"idempotent", idempotent},
              {"contractive", contractive},
              {"embedNormExact", embed_exact},
              {"invertDiagJ", inv_detail},
              {"invertDiagJOk", inv_ok},
              {"rejectDecay", reject_ok},
              {"rejectMinSlope", min_slope}};
  return r;
}

/// The 20 parameter tuples (N, K, m, theta) fed to choose_params.
inline std::vector<std::tuple<level_t, level_t, level_t, rational>> interpolation_tuples()
{
  return {{0, 3, 5, rational(3, 4)},  {0, 3, 5, rational(2, 3)},  {0, 3, 1, rational(9, 10)},
          {1, 5, 4, rational(3, 4)},  {1, 2, 3, rational(1, 2)},  {2, 1, 6, rational(1, 2)},
          {2, 8, 2, rational(5, 6)},  {3, 4, 7, rational(3, 5)},  {0, 1, 0, rational(1, 2)},
          {0, 10, 9, rational(9, 10)}, {4, 9, 3, rational(4, 5)}, {1, 6, 10, rational(4, 5)},
          {2, 3, 2, rational(2, 3)},  {5, 12, 8, rational(7, 8)}, {0, 2, 4, rational(1, 2)},
          {3, 20, 5, rational(17, 18)}, {1, 1, 1, rational(3, 5)}, {6, 7, 12, rational(5, 9)},
          {2, 6, 0, rational(3, 4)},  {0, 5, 11, rational(5, 6)}};
}

/// 8. Interpolation estimate on the grid and the small-theta probe.
inline check_result check_interpolation(index_t T = 10000)
{
  check_result r{8, "interpolation-estimate"};
  json tuples = json::array();
  for (const auto& [N, K, m, theta] : interpolation_tuples()) {
    const auto p   = choose_params(N, K, m, theta);
    const auto rep = verify_estimate(p, T);
    r.pass         = r.pass && rep.pass && rep.factorization_error <= 1e-9;
    tuples.push_back(json{{"N", p.N}, {"K", p.K}, {"m", p.m}, {"theta", to_string(p.theta)}, {"k", p.k},
                          {"maxRatio", rep.max_ratio}, {"argmax", json::array({rep.arg_i, rep.arg_j})}});
  }
  json probes = json::array();
  const std::tuple<level_t, level_t, level_t, rational> cases[] = {
      {0, 1, 3, rational(1, 4)}, {0, 1, 3, rational(2, 3)}, {1, 2, 10, rational(1, 10)}};
  for (const auto& [N, M, K, theta] : cases) {
    const auto pr = small_theta_probe(N, M, K, theta);
    r.pass        = r.pass && pr.pass;
    probes.push_back(json{{"N", N}, {"M", M}, {"K", K}, {"theta", to_string(theta)},
                          {"exponent", to_string(pr.exponent)}, {"slope", pr.slope}});
  }
  r.detail = {{"T", T}, {"tuples", tuples}, {"probes", probes}};
  return r;
}

/// 9. ||e_kk||_{N,N+1,inf} = 1/k exactly and (I - e_kk) e_k = 0.
inline check_result check_non_q(index_t k_max = 1000, level_t N_max = 4)
{
  check_result r{9, "non-q-algebra"};
  index_t bad = 0;
  for (index_t k = 1; k <= k_max; ++k)
    for (level_t N = 0; N <= N_max; ++N) {
      const auto rep = q_algebra_probe(k, N);
      if (rep.seminorm != rational(1, k) || !rep.singular)
        ++bad;
    }
  r.pass   = bad == 0;
  r.detail = {{"kMax", k_max}, {"NMax", N_max}, {"failures", bad}};
  return r;
}

inline json to_json(const check_result& c)
{
  return json{{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
}

/// Criteria 1-9 in order.
inline std::vector<check_result> run_core_checks(std::uint64_t seed)
{
  return {check_nuclearity(),     check_lp_equivalence(seed), check_p_equals_q(seed),
          check_koethe(),         check_centralizers(seed),   check_membership(),
          check_diagonal(seed),   check_interpolation(),      check_non_q()};
}

inline json suite_document(const std::vector<check_result>& checks)
{
  json arr  = json::array();
  bool pass = true;
  for (const auto& c : checks) {
    arr.push_back(to_json(c));
    pass = pass && c.pass;
  }
  return json{{"checks", arr}, {"pass", pass}};
}

/// 10. The serialized core battery is byte-identical across two runs.
inline check_result check_determinism(std::uint64_t seed, const std::string& first)
{
  check_result r{10, "determinism"};
  const std::string second = emit_report(suite_document(run_core_checks(seed)));
  r.pass                   = first == second;
  r.detail                 = {{"seed", seed}, {"bytes", first.size()}};
  return r;
}

/// All ten checks; the determinism check reruns the core battery.
inline json run_suite(std::uint64_t seed)
{
  auto checks             = run_core_checks(seed);
  const std::string first = emit_report(suite_document(checks));
  checks.push_back(check_determinism(seed, first));
  return suite_document(checks);
}

}  // namespace ncs

#endif
