#ifndef NCS_SEQUENCES_HPP
#define NCS_SEQUENCES_HPP

// Finitely supported sequences as elements of s or s', the graded norms
//
//   |xi|_n = ( sum_j |xi_j|^2 j^(2n) )^(1/2),   n any integer,
//
// and the sesquilinear pairing <eta, xi> = sum_j eta_j conj(xi_j).

#include "ncs/scalar.hpp"
#include "ncs/weights.hpp"

#include <map>
#include <numbers>
#include <vector>

namespace ncs {

enum class ambient_space { s, s_prime };

/// A finitely supported sequence indexed from 1. Zero entries are not stored.
template <class Scalar>
class basic_sequence {
public:
  using scalar_type = Scalar;
  using storage     = std::map<index_t, Scalar>;

  basic_sequence() = default;
  explicit basic_sequence(ambient_space a) : ambient_(a) {}

  /// The canonical unit vector e_k.
  static basic_sequence unit(index_t k)
  {
    basic_sequence v;
    v.set(k, Scalar(1));
    return v;
  }

  /// Sequence (values[0], values[1], ...) placed at indices 1, 2, ...
  static basic_sequence from_dense(const std::vector<Scalar>& values)
  {
    basic_sequence v;
    for (std::size_t k = 0; k < values.size(); ++k)
      v.set(static_cast<index_t>(k + 1), values[k]);
    return v;
  }

  Scalar operator[](index_t j) const
  {
    auto it = entries_.find(j);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  void set(index_t j, const Scalar& value)
  {
    if (j < 1)
      throw invalid_argument("sequence indices start at 1");
    if (is_zero(value))
      entries_.erase(j);
    else
      entries_[j] = value;
  }

  const storage& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Largest index in the support, 0 for the zero sequence.
  index_t support_end() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  ambient_space ambient() const { return ambient_; }
  void set_ambient(ambient_space a) { ambient_ = a; }

  /// Dense values at 1..T.
  std::vector<Scalar> dense(index_t T) const
  {
    std::vector<Scalar> out(static_cast<std::size_t>(T), Scalar(0));
    for (const auto& [j, v] : entries_)
      if (j <= T)
        out[static_cast<std::size_t>(j - 1)] = v;
    return out;
  }

  basic_sequence conj() const
  {
    basic_sequence out(ambient_);
    for (const auto& [j, v] : entries_)
      out.entries_[j] = conj_of(v);
    return out;
  }

  friend basic_sequence operator+(const basic_sequence& a, const basic_sequence& b)
  {
    basic_sequence out = a;
    for (const auto& [j, v] : b.entries_)
      out.set(j, out[j] + v);
    return out;
  }

  friend basic_sequence operator*(const Scalar& c, const basic_sequence& a)
  {
    basic_sequence out(a.ambient_);
    for (const auto& [j, v] : a.entries_)
      out.set(j, c * v);
    return out;
  }

  /// Entrywise (pointwise) product, the multiplication of s'.
  friend basic_sequence hadamard(const basic_sequence& a, const basic_sequence& b)
  {
    basic_sequence out(a.ambient_);
    for (const auto& [j, v] : a.entries_)
      if (auto it = b.entries_.find(j); it != b.entries_.end())
        out.set(j, v * it->second);
    return out;
  }

  friend bool operator==(const basic_sequence& a, const basic_sequence& b) { return a.entries_ == b.entries_; }

private:
  storage entries_;
  ambient_space ambient_ = ambient_space::s;
};

using sequence = basic_sequence<complex>;

/// |xi|_n for any integer n.
template <class Scalar>
double seq_norm(const basic_sequence<Scalar>& xi, int n)
{
  long double sum = 0;
  for (const auto& [j, v] : xi.entries()) {
    const long double term = static_cast<long double>(magnitude(v)) * std::pow(static_cast<long double>(j), n);
    sum += term * term;
  }
  return static_cast<double>(std::sqrt(sum));
}

/// <eta, xi> = sum_j eta_j conj(xi_j); conjugate-linear in the second slot.
template <class Scalar>
Scalar pairing(const basic_sequence<Scalar>& eta, const basic_sequence<Scalar>& xi)
{
  Scalar sum(0);
  const auto& small = eta.entries().size() <= xi.entries().size() ? eta.entries() : xi.entries();
  for (const auto& [j, unused] : small) {
    (void)unused;
    sum += eta[j] * conj_of(xi[j]);
  }
  return sum;
}

struct diag_sandwich {
  double lhs = 0;  // |xi|_{-m}
  double mid = 0;  // sum_j |xi_j| j^-m
  double rhs = 0;  // (pi / sqrt 6) |xi|_{-m+1}
  bool ordered = true;
};

/// |xi|_{-m} <= sum_j |xi_j| j^{-m} <= (pi/sqrt 6) |xi|_{-m+1}.
template <class Scalar>
diag_sandwich diag_sandwich_check(const basic_sequence<Scalar>& xi, int m, double rel_tol = 1e-12)
{
  if (m < 1)
    throw invalid_argument("diag sandwich requires m >= 1");
  diag_sandwich out;
  long double mid = 0;
  for (const auto& [j, v] : xi.entries())
    mid += static_cast<long double>(magnitude(v)) * std::pow(static_cast<long double>(j), -m);
  out.lhs     = seq_norm(xi, -m);
  out.mid     = static_cast<double>(mid);
  out.rhs     = std::numbers::pi / std::sqrt(6.0) * seq_norm(xi, -m + 1);
  out.ordered = out.lhs <= out.mid * (1 + rel_tol) && out.mid <= out.rhs * (1 + rel_tol);
  return out;
}

}  // namespace ncs

#endif
