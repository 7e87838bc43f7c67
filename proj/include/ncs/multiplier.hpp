#ifndef NCS_MULTIPLIER_HPP
#define NCS_MULTIPLIER_HPP

// Double centralizers on truncations, the reconstruction u xi = L(xi (x) e)(e),
// the diagonal subalgebra (projection, embedding, inversion), the merge
// projection onto equal pairs, and the non-Q-algebra probe.

#include "ncs/matrices.hpp"
#include "ncs/membership.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <variant>

namespace ncs {

// ---------------------------------------------------------------------------
// Double centralizers
// ---------------------------------------------------------------------------

/// A pair (L, R) of maps on T x T matrices. Maps are held extensionally;
/// `tag` remembers u when the pair came from make_centralizer(u).
template <class Scalar>
struct centralizer_pair {
  using matrix_type = basic_matrix<Scalar>;
  using map_type    = std::function<matrix_type(const matrix_type&)>;

  map_type L, R;
  index_t dim = 0;
  std::optional<matrix_type> tag;
};

/// rho(u) = (L_u, R_u) with L_u(y) = u y and R_u(y) = y u.
template <class Scalar>
centralizer_pair<Scalar> make_centralizer(const basic_matrix<Scalar>& u)
{
  centralizer_pair<Scalar> p;
  p.dim = u.dim();
  p.tag = u;
  p.L   = [u](const basic_matrix<Scalar>& y) { return u * y; };
  p.R   = [u](const basic_matrix<Scalar>& y) { return y * u; };
  return p;
}

namespace detail {

template <class Scalar>
void require_same_dim(const centralizer_pair<Scalar>& a, const centralizer_pair<Scalar>& b)
{
  if (a.dim != b.dim)
    throw dimension_mismatch("centralizer dimensions differ");
}

}  // namespace detail

template <class Scalar>
centralizer_pair<Scalar> operator+(const centralizer_pair<Scalar>& a, const centralizer_pair<Scalar>& b)
{
  detail::require_same_dim(a, b);
  centralizer_pair<Scalar> p;
  p.dim = a.dim;
  p.L   = [a, b](const auto& x) { return a.L(x) + b.L(x); };
  p.R   = [a, b](const auto& x) { return a.R(x) + b.R(x); };
  if (a.tag && b.tag)
    p.tag = *a.tag + *b.tag;
  return p;
}

template <class Scalar>
centralizer_pair<Scalar> operator*(const Scalar& lambda, const centralizer_pair<Scalar>& a)
{
  centralizer_pair<Scalar> p;
  p.dim = a.dim;
  p.L   = [a, lambda](const auto& x) { return lambda * a.L(x); };
  p.R   = [a, lambda](const auto& x) { return lambda * a.R(x); };
  if (a.tag)
    p.tag = lambda * *a.tag;
  return p;
}

/// (L1, R1)(L2, R2) = (L1 L2, R2 R1).
template <class Scalar>
centralizer_pair<Scalar> operator*(const centralizer_pair<Scalar>& a, const centralizer_pair<Scalar>& b)
{
  detail::require_same_dim(a, b);
  centralizer_pair<Scalar> p;
  p.dim = a.dim;
  p.L   = [a, b](const auto& x) { return a.L(b.L(x)); };
  p.R   = [a, b](const auto& x) { return b.R(a.R(x)); };
  if (a.tag && b.tag)
    p.tag = *a.tag * *b.tag;
  return p;
}

/// (L, R)* = (R*, L*) with T*(x) = (T(x*))*.
template <class Scalar>
centralizer_pair<Scalar> star(const centralizer_pair<Scalar>& a)
{
  centralizer_pair<Scalar> p;
  p.dim = a.dim;
  p.L   = [a](const auto& x) { return a.R(x.adjoint()).adjoint(); };
  p.R   = [a](const auto& x) { return a.L(x.adjoint()).adjoint(); };
  if (a.tag)
    p.tag = a.tag->adjoint();
  return p;
}

enum class centralizer_op { add, scale, mul, star };

template <class Scalar>
centralizer_pair<Scalar> centralizer_ops(const centralizer_pair<Scalar>& p1, const centralizer_pair<Scalar>& p2,
                                         centralizer_op op, const Scalar& lambda = Scalar(1))
{
  switch (op) {
    case centralizer_op::add: return p1 + p2;
    case centralizer_op::scale: return lambda * p1;
    case centralizer_op::mul: return p1 * p2;
    case centralizer_op::star: return star(p1);
  }
  return p1;
}

/// max over the given pairs of max_ij |x L(y) - R(x) y|.
template <class Scalar>
double centralizer_law_residual(const centralizer_pair<Scalar>& p,
                                const std::vector<std::pair<basic_matrix<Scalar>, basic_matrix<Scalar>>>& tests)
{
  double worst = 0;
  for (const auto& [x, y] : tests)
    worst = std::max(worst, max_abs_diff(x * p.L(y), p.R(x) * y));
  return worst;
}

/// Largest disagreement of the L and R maps of two pairs on the probes.
template <class Scalar>
double centralizer_distance(const centralizer_pair<Scalar>& a, const centralizer_pair<Scalar>& b,
                            const std::vector<basic_matrix<Scalar>>& probes)
{
  detail::require_same_dim(a, b);
  double worst = 0;
  for (const auto& x : probes) {
    worst = std::max(worst, max_abs_diff(a.L(x), b.L(x)));
    worst = std::max(worst, max_abs_diff(a.R(x), b.R(x)));
  }
  return worst;
}

/// All T^2 matrix units e_ij; they span the truncated algebra.
template <class Scalar>
std::vector<basic_matrix<Scalar>> matrix_units(index_t T)
{
  std::vector<basic_matrix<Scalar>> out;
  out.reserve(static_cast<std::size_t>(T * T));
  for (index_t i = 1; i <= T; ++i)
    for (index_t j = 1; j <= T; ++j)
      out.push_back(basic_matrix<Scalar>::unit(T, i, j));
  return out;
}

namespace detail {

template <class Scalar>
void require_unit_vector(const basic_sequence<Scalar>& e, index_t T)
{
  if (e.support_end() > T)
    throw dimension_mismatch("reconstruction vector support exceeds dimension");
  if (std::abs(seq_norm(e, 0) - 1.0) > 1e-10)
    throw invalid_argument("reconstruction vector must have unit l2 norm");
}

}  // namespace detail

/// u with columns u e_j = L(e_j (x) e)(e).
template <class Scalar>
basic_matrix<Scalar> reconstruct(const centralizer_pair<Scalar>& p, const basic_sequence<Scalar>& e)
{
  const index_t T = p.dim;
  detail::require_unit_vector(e, T);
  basic_matrix<Scalar> u(T);
  for (index_t j = 1; j <= T; ++j) {
    const auto column = p.L(rank_one(basic_sequence<Scalar>::unit(j), e, T)).apply(e);
    for (const auto& [i, v] : column.entries())
      u(i, j) = v;
  }
  return u;
}

template <class Scalar>
basic_matrix<Scalar> reconstruct(const centralizer_pair<Scalar>& p)
{
  return reconstruct(p, basic_sequence<Scalar>::unit(1));
}

/// u* eta = (R(e (x) eta))*(e), evaluated from R alone.
template <class Scalar>
basic_sequence<Scalar> reconstruct_adjoint_apply(const centralizer_pair<Scalar>& p, const basic_sequence<Scalar>& e,
                                                 const basic_sequence<Scalar>& eta)
{
  detail::require_unit_vector(e, p.dim);
  return p.R(rank_one(e, eta, p.dim)).adjoint().apply(e);
}

/// True when u (e_j (x) e_j) = 0 for every basis vector e_j.
template <class Scalar>
bool annihilated_by_rank_ones(const basic_matrix<Scalar>& u)
{
  const index_t T = u.dim();
  for (index_t j = 1; j <= T; ++j) {
    const auto e  = basic_sequence<Scalar>::unit(j);
    const auto uv = u * rank_one(e, e, T);
    for (const auto& v : uv.data())
      if (!is_zero(v))
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Diagonal subalgebra
// ---------------------------------------------------------------------------

template <class Scalar>
struct diagonal_element {
  basic_sequence<Scalar> diag;
  index_t dim = 0;

  basic_matrix<Scalar> to_matrix() const
  {
    basic_matrix<Scalar> m(dim);
    for (const auto& [j, v] : diag.entries())
      m(j, j) = v;
    return m;
  }

  basic_sequence<Scalar> apply(const basic_sequence<Scalar>& xi) const { return hadamard(diag, xi); }
};

/// pi x = sum_j e_jj x e_jj.
template <class Scalar>
diagonal_element<Scalar> diag_project(const basic_matrix<Scalar>& x)
{
  diagonal_element<Scalar> d;
  d.dim = x.dim();
  d.diag.set_ambient(ambient_space::s_prime);
  for (index_t j = 1; j <= x.dim(); ++j)
    d.diag.set(j, x(j, j));
  return d;
}

/// phi xi = sum_j xi_j e_jj.
template <class Scalar>
diagonal_element<Scalar> diag_embed(const basic_sequence<Scalar>& xi, index_t T)
{
  if (xi.support_end() > T)
    throw dimension_mismatch("sequence support exceeds truncation size");
  return {xi, T};
}

/// sum_j |xi_j| j^(N-n), the A-weighted l1 norm of phi xi.
inline rational embedded_norm(const basic_sequence<rational>& xi, level_t N, level_t n)
{
  rational sum = 0;
  for (const auto& [j, v] : xi.entries())
    sum += abs(v) * pow(rational(j), N - n);
  return sum;
}

inline double embedded_norm(const sequence& xi, level_t N, level_t n)
{
  long double sum = 0;
  for (const auto& [j, v] : xi.entries())
    sum += std::abs(v) * std::pow(static_cast<long double>(j), N - n);
  return static_cast<double>(sum);
}

/// Exact weighted l1 / sup norm of a rational matrix.
inline rational matrix_norm_exact(const basic_matrix<rational>& x, const weight_family& family, level_t N, level_t n,
                                  norm_p p)
{
  if (p == norm_p::two || !is_exact_kind(family.kind) || !is_matrix_family(family.kind))
    throw invalid_argument("exact matrix norms cover p in {1, inf} and integer-exponent families");
  rational acc = 0;
  for (index_t i = 1; i <= x.dim(); ++i)
    for (index_t j = 1; j <= x.dim(); ++j) {
      if (x(i, j) == 0)
        continue;
      const rational term = abs(x(i, j)) * weight_eval(family, i, j, N, n).exact();
      if (p == norm_p::one)
        acc += term;
      else if (term > acc)
        acc = term;
    }
  return acc;
}

struct not_invertible {
  index_t index = 0;  // a vanishing diagonal entry
};

template <class Scalar>
struct diag_inverse {
  basic_matrix<Scalar> inverse;
};

template <class Scalar>
using finite_inversion = std::variant<diag_inverse<Scalar>, not_invertible>;

/// Inverse of a finite diagonal on 1..T.
template <class Scalar>
finite_inversion<Scalar> diag_invert(const basic_sequence<Scalar>& xi, index_t T)
{
  if (xi.support_end() > T)
    throw dimension_mismatch("sequence support exceeds truncation size");
  basic_matrix<Scalar> inv(T);
  for (index_t j = 1; j <= T; ++j) {
    const Scalar v = xi[j];
    if (is_zero(v))
      return not_invertible{j};
    inv(j, j) = Scalar(1) / v;
  }
  return diag_inverse<Scalar>{std::move(inv)};
}

struct envelope_inverse {
  envelope_matrix inverse;
  certificate inverse_certificate;  // the inverse lies in MS
  certificate element_certificate;  // the element itself lies in MS
  affine_witness joint;             // one n(N) serving both
};

struct not_invertible_in_algebra {
  refutation reason;
  std::function<double(index_t, index_t)> log_reciprocal;  // log |1/x_jj| on the diagonal, -inf elsewhere
};

using envelope_inversion = std::variant<envelope_inverse, not_invertible_in_algebra>;

/// Inversion of a diagonal given exactly by one band(0) term c j^p rho^j.
/// The reciprocal lies in the algebra iff it grows at most polynomially,
/// i.e. iff rho = 1.
inline envelope_inversion diag_invert(const envelope_matrix& d)
{
  d.validate();
  if (d.terms.size() != 1 || d.terms[0].reg != region::band(0) || !d.patch.empty())
    throw invalid_argument("diagonal inversion expects a single band=0 term without patch");
  const auto& t    = d.terms[0];
  const rational p = t.gamma + t.delta;
  if (t.rho < 1) {
    not_invertible_in_algebra out;
    out.reason = refutation{matrix_space::MS, 0, ray{ray_kind::diagonal, 0}, 1, true};
    out.log_reciprocal = [c = to_double(t.c), pd = to_double(p), lr = std::log(to_double(t.rho))](index_t i,
                                                                                                  index_t j) {
      if (i != j)
        return -std::numeric_limits<double>::infinity();
      return -std::log(c) - pd * std::log(static_cast<double>(j)) - static_cast<double>(j) * lr;
    };
    return out;
  }
  envelope_inverse out;
  out.inverse = diagonal_envelope(-p, rational(1) / t.c, 1);
  out.inverse_certificate = std::get<certificate>(decide_membership(out.inverse, matrix_space::MS));
  out.element_certificate = std::get<certificate>(decide_membership(d, matrix_space::MS));
  out.joint = {std::max(out.inverse_certificate.witness.slope, out.element_certificate.witness.slope),
               std::max(out.inverse_certificate.witness.intercept, out.element_certificate.witness.intercept)};
  return out;
}

// ---------------------------------------------------------------------------
// Merge projection onto equal pairs
// ---------------------------------------------------------------------------

/// x on and above the diagonal, y strictly below it.
template <class Scalar>
basic_matrix<Scalar> merge_upper_lower(const basic_matrix<Scalar>& x, const basic_matrix<Scalar>& y)
{
  require_same_dim(x, y);
  basic_matrix<Scalar> m(x.dim());
  for (index_t i = 1; i <= x.dim(); ++i)
    for (index_t j = 1; j <= x.dim(); ++j)
      m(i, j) = i <= j ? x(i, j) : y(i, j);
  return m;
}

template <class Scalar>
std::pair<basic_matrix<Scalar>, basic_matrix<Scalar>> merge_projection(const basic_matrix<Scalar>& x,
                                                                      const basic_matrix<Scalar>& y)
{
  auto m = merge_upper_lower(x, y);
  return {m, m};
}

// ---------------------------------------------------------------------------
// Non-Q-algebra probe
// ---------------------------------------------------------------------------

struct q_algebra_report {
  index_t k = 1;
  level_t N = 0;
  rational seminorm;          // ||e_kk||_{N,N+1,inf} = 1/k
  bool singular = false;      // (I - e_kk) e_k = 0
  index_t singular_witness;   // the k of e_k
};

/// I - e_kk is not invertible, yet its distance to I in the (N, N+1) sup
/// norm is 1/k. The product (I - e_kk) e_k is formed as a diagonal action.
inline q_algebra_report q_algebra_probe(index_t k, level_t N, weight_kind family = weight_kind::A)
{
  if (k < 1)
    throw invalid_argument("probe index must be >= 1");
  q_algebra_report r;
  r.k        = k;
  r.N        = N;
  r.seminorm = weight_eval({family}, k, k, N, N + 1).exact();

  basic_sequence<rational> ones;
  for (index_t j = 1; j <= k; ++j)
    ones.set(j, rational(1));
  ones.set(k, rational(0));
  const auto image   = diag_embed(ones, k).apply(basic_sequence<rational>::unit(k));
  r.singular         = image.empty();
  r.singular_witness = k;
  return r;
}

}  // namespace ncs

#endif
