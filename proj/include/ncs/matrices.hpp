#ifndef NCS_MATRICES_HPP
#define NCS_MATRICES_HPP

// Dense T x T truncations (<x e_j, e_i>)_{i,j<=T} of operators on s, the
// weighted entrywise norms ||x||_{N,n,p}, and the seminorm families
//
//   p_{n,B}(x) = max{ sup_B |x xi|_n , sup_B |x* xi|_n }
//   q_{n,B}(x) = max{ sup_B |x xi|_n , sup_{|xi|_{-n}<=1} sup_{eta in B} |<eta, x xi>| }
//
// Bounded sets B are finite lists of finitely supported vectors.

#include "ncs/sequences.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace ncs {

/// Square matrix with 1-based element access.
template <class Scalar>
class basic_matrix {
public:
  using scalar_type = Scalar;

  basic_matrix() = default;
  explicit basic_matrix(index_t dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim * dim), Scalar(0))
  {
    if (dim < 0)
      throw invalid_argument("negative matrix dimension");
  }

  static basic_matrix identity(index_t dim)
  {
    basic_matrix m(dim);
    for (index_t k = 1; k <= dim; ++k)
      m(k, k) = Scalar(1);
    return m;
  }

  /// Matrix unit e_{ij}.
  static basic_matrix unit(index_t dim, index_t i, index_t j)
  {
    basic_matrix m(dim);
    m.check_index(i, j);
    m(i, j) = Scalar(1);
    return m;
  }

  index_t dim() const { return dim_; }

  Scalar& operator()(index_t i, index_t j) { return data_[offset(i, j)]; }
  const Scalar& operator()(index_t i, index_t j) const { return data_[offset(i, j)]; }

  std::span<const Scalar> data() const { return data_; }

  basic_matrix adjoint() const
  {
    basic_matrix out(dim_);
    for (index_t i = 1; i <= dim_; ++i)
      for (index_t j = 1; j <= dim_; ++j)
        out(j, i) = conj_of((*this)(i, j));
    return out;
  }

  /// x xi, truncated to 1..dim.
  basic_sequence<Scalar> apply(const basic_sequence<Scalar>& xi) const
  {
    if (xi.support_end() > dim_)
      throw dimension_mismatch("vector support exceeds matrix dimension");
    basic_sequence<Scalar> out;
    for (index_t i = 1; i <= dim_; ++i) {
      Scalar acc(0);
      for (const auto& [j, v] : xi.entries())
        acc += (*this)(i, j) * v;
      out.set(i, acc);
    }
    return out;
  }

  friend basic_matrix operator*(const basic_matrix& x, const basic_matrix& y)
  {
    require_same_dim(x, y);
    basic_matrix out(x.dim_);
    const index_t T = x.dim_;
    for (index_t i = 1; i <= T; ++i)
      for (index_t k = 1; k <= T; ++k) {
        const Scalar& xik = x(i, k);
        if (is_zero(xik))
          continue;
        for (index_t j = 1; j <= T; ++j)
          out(i, j) += xik * y(k, j);
      }
    return out;
  }

  friend basic_matrix operator+(basic_matrix x, const basic_matrix& y)
  {
    require_same_dim(x, y);
    for (std::size_t k = 0; k < x.data_.size(); ++k)
      x.data_[k] += y.data_[k];
    return x;
  }

  friend basic_matrix operator-(basic_matrix x, const basic_matrix& y)
  {
    require_same_dim(x, y);
    for (std::size_t k = 0; k < x.data_.size(); ++k)
      x.data_[k] -= y.data_[k];
    return x;
  }

  friend basic_matrix operator*(const Scalar& c, basic_matrix x)
  {
    for (auto& v : x.data_)
      v *= c;
    return x;
  }

  friend bool operator==(const basic_matrix& a, const basic_matrix& b)
  {
    return a.dim_ == b.dim_ && a.data_ == b.data_;
  }

  friend void require_same_dim(const basic_matrix& x, const basic_matrix& y)
  {
    if (x.dim_ != y.dim_)
      throw dimension_mismatch("matrix dimensions differ: " + std::to_string(x.dim_) + " vs " +
                               std::to_string(y.dim_));
  }

private:
  void check_index(index_t i, index_t j) const
  {
    if (i < 1 || j < 1 || i > dim_ || j > dim_)
      throw invalid_argument("matrix index out of range");
  }
  std::size_t offset(index_t i, index_t j) const { return static_cast<std::size_t>((i - 1) * dim_ + (j - 1)); }

  index_t dim_ = 0;
  std::vector<Scalar> data_;
};

using matrix = basic_matrix<complex>;

template <class Scalar>
basic_matrix<Scalar> mat_mul(const basic_matrix<Scalar>& x, const basic_matrix<Scalar>& y)
{
  return x * y;
}

template <class Scalar>
basic_matrix<Scalar> adjoint(const basic_matrix<Scalar>& x)
{
  return x.adjoint();
}

/// Largest entrywise modulus of x - y.
template <class Scalar>
double max_abs_diff(const basic_matrix<Scalar>& x, const basic_matrix<Scalar>& y)
{
  require_same_dim(x, y);
  double worst = 0;
  auto a = x.data(), b = y.data();
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, magnitude(a[k] - b[k]));
  return worst;
}

template <class Scalar>
double max_abs(const basic_matrix<Scalar>& x)
{
  double worst = 0;
  for (const auto& v : x.data())
    worst = std::max(worst, magnitude(v));
  return worst;
}

/// The operator zeta -> <zeta, eta> xi, with entries xi_i conj(eta_j).
template <class Scalar>
basic_matrix<Scalar> rank_one(const basic_sequence<Scalar>& xi, const basic_sequence<Scalar>& eta, index_t T)
{
  if (xi.support_end() > T || eta.support_end() > T)
    throw dimension_mismatch("rank-one factor support exceeds truncation size");
  basic_matrix<Scalar> out(T);
  for (const auto& [i, a] : xi.entries())
    for (const auto& [j, b] : eta.entries())
      out(i, j) = a * conj_of(b);
  return out;
}

// ---------------------------------------------------------------------------
// Weighted entrywise norms
// ---------------------------------------------------------------------------

enum class norm_p { one, two, inf };

inline bool is_matrix_family(weight_kind k)
{
  return k == weight_kind::A || k == weight_kind::B || k == weight_kind::B_prime || k == weight_kind::D ||
         k == weight_kind::Kinf;
}

/// ||x||_{N,n,p} against a precomputed row-major weight table of size dim^2.
template <class Scalar>
double matrix_norm_p(const basic_matrix<Scalar>& x, std::span<const double> weights, norm_p p)
{
  const auto data = x.data();
  if (weights.size() != data.size())
    throw dimension_mismatch("weight table does not match matrix size");
  long double acc = 0;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const long double term = static_cast<long double>(magnitude(data[k])) * weights[k];
    switch (p) {
      case norm_p::one: acc += term; break;
      case norm_p::two: acc += term * term; break;
      case norm_p::inf: acc = std::max(acc, term); break;
    }
  }
  return static_cast<double>(p == norm_p::two ? std::sqrt(acc) : acc);
}

template <class Scalar>
double matrix_norm_p(const basic_matrix<Scalar>& x, const weight_family& family, level_t N, level_t n, norm_p p)
{
  if (!is_matrix_family(family.kind))
    throw invalid_argument("family " + to_string(family.kind) + " is not a matrix weight");
  detail::check_levels(family, N, n);
  const auto table = weight_table(family.kind, x.dim(), N, n);
  return matrix_norm_p(x, std::span<const double>(table), p);
}

// ---------------------------------------------------------------------------
// Seminorms over finite bounded sets
// ---------------------------------------------------------------------------

template <class Scalar>
using bounded_set = std::vector<basic_sequence<Scalar>>;

template <class Scalar>
double seminorm_p(const basic_matrix<Scalar>& x, int n, const bounded_set<Scalar>& B)
{
  if (B.empty())
    throw invalid_argument("bounded set must be nonempty");
  const auto xs = x.adjoint();
  double best = 0;
  for (const auto& xi : B) {
    best = std::max(best, seq_norm(x.apply(xi), n));
    best = std::max(best, seq_norm(xs.apply(xi), n));
  }
  return best;
}

/// A unit vector of |.|_{-n} maximizing |<z, xi>|: xi_j = j^{2n} z_j / |z|_n.
/// Zero when z is zero.
inline sequence dual_maximizer(const sequence& z, int n)
{
  const double nz = seq_norm(z, n);
  sequence out(ambient_space::s_prime);
  if (nz == 0)
    return out;
  for (const auto& [j, v] : z.entries())
    out.set(j, v * (std::pow(static_cast<double>(j), 2.0 * n) / nz));
  return out;
}

/// q_{n,B}: the polar branch is evaluated at the explicit maximizer of each
/// eta in B, then |<eta, x xi*>| is computed as a pairing.
inline double seminorm_q(const matrix& x, int n, const bounded_set<complex>& B)
{
  if (B.empty())
    throw invalid_argument("bounded set must be nonempty");
  const auto xs = x.adjoint();
  double best = 0;
  for (const auto& xi : B)
    best = std::max(best, seq_norm(x.apply(xi), n));
  for (const auto& eta : B) {
    const sequence star = dual_maximizer(xs.apply(eta), n);
    if (star.empty())
      continue;
    best = std::max(best, std::abs(pairing(eta, x.apply(star))));
  }
  return best;
}

}  // namespace ncs

#endif
