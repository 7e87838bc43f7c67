#ifndef NCS_WEIGHTS_HPP
#define NCS_WEIGHTS_HPP

// Four-indexed Koethe weight families w(i,j;N,n) and the verifiers for
// their structural properties.
//
//   A(i,j;N,n)  = max{ i^N / j^n , j^N / i^n } = max(i,j)^N min(i,j)^-n
//   B(i,j;N,n)  = i^N / j^n
//   B'(i,j;N,n) = j^N / i^n
//   D(i,j;N,n)  = max{ j^(N+1/n) / i^n , i^(N+1/n) / j^n }     (n >= 1)
//   Kinf(i,j;N) = i^N j^N
//   SeqS(i;n)   = i^n,   SeqSprime(i;n) = i^-n                 (one index)
//
// Integer-exponent kinds are evaluated exactly; D carries a fractional
// exponent and is evaluated in long double.

#include "ncs/rational.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ncs {

using index_t = std::int64_t;
using level_t = int;

inline constexpr level_t default_level_cap = 64;

enum class weight_kind { B, B_prime, A, D, Kinf, SeqS, SeqSprime };

inline std::string to_string(weight_kind k)
{
  switch (k) {
    case weight_kind::B: return "B";
    case weight_kind::B_prime: return "B_prime";
    case weight_kind::A: return "A";
    case weight_kind::D: return "D";
    case weight_kind::Kinf: return "Kinf";
    case weight_kind::SeqS: return "SeqS";
    case weight_kind::SeqSprime: return "SeqSprime";
  }
  return "?";
}

inline weight_kind parse_weight_kind(std::string_view s)
{
  if (s == "B") return weight_kind::B;
  if (s == "B_prime" || s == "Bprime" || s == "B'") return weight_kind::B_prime;
  if (s == "A") return weight_kind::A;
  if (s == "D") return weight_kind::D;
  if (s == "Kinf" || s == "K") return weight_kind::Kinf;
  if (s == "SeqS" || s == "s") return weight_kind::SeqS;
  if (s == "SeqSprime" || s == "s_prime") return weight_kind::SeqSprime;
  throw invalid_argument("unknown weight family '" + std::string(s) + "'");
}

inline bool is_one_index(weight_kind k) { return k == weight_kind::SeqS || k == weight_kind::SeqSprime; }
inline bool is_exact_kind(weight_kind k) { return k != weight_kind::D; }

struct weight_family {
  weight_kind kind = weight_kind::A;
  level_t level_cap = default_level_cap;
};

/// Result of a weight evaluation: an exact rational, or a long double for D.
class weight_value {
public:
  weight_value(rational r) : value_(std::move(r)) {}
  weight_value(long double x) : value_(x) {}

  bool is_exact() const { return std::holds_alternative<rational>(value_); }
  const rational& exact() const { return std::get<rational>(value_); }
  long double approx() const
  {
    return is_exact() ? to_long_double(exact()) : std::get<long double>(value_);
  }
  std::string str() const;

private:
  std::variant<rational, long double> value_;
};

inline std::string weight_value::str() const
{
  if (is_exact())
    return to_string(exact());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", std::get<long double>(value_));
  return buf;
}

namespace detail {

inline void check_levels(const weight_family& f, level_t N, level_t n)
{
  if (N < 0 || n < 0)
    throw invalid_argument("levels must be nonnegative");
  if (N > f.level_cap || n > f.level_cap)
    throw level_overflow("level exceeds cap " + std::to_string(f.level_cap));
}

inline void check_indices(index_t i, index_t j)
{
  if (i < 1 || j < 1)
    throw invalid_argument("indices must be positive");
}

/// Unnormalized positive fraction; comparisons by cross multiplication.
struct fraction {
  bigint num, den;
  friend bool operator<=(const fraction& a, const fraction& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator<(const fraction& a, const fraction& b) { return a.num * b.den < b.num * a.den; }
  bool positive() const { return num > 0 && den > 0; }
  rational value() const { return rational(num, den); }
  long double approx() const { return num.convert_to<long double>() / den.convert_to<long double>(); }
};

inline bigint ipow(index_t base, level_t e)
{
  bigint r = 1, b = base;
  while (e > 0) {
    if (e & 1)
      r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// base^0 .. base^top for the most recently requested base.
class power_table {
public:
  explicit power_table(level_t top) : powers_(static_cast<std::size_t>(top) + 1) {}
  const std::vector<bigint>& of(index_t base)
  {
    if (base != base_) {
      base_ = base;
      bigint p = 1;
      for (auto& v : powers_) {
        v = p;
        p *= base;
      }
    }
    return powers_;
  }

private:
  index_t base_ = 0;
  std::vector<bigint> powers_;
};

inline fraction exact_fraction(weight_kind kind, index_t i, index_t j, level_t N, level_t n)
{
  switch (kind) {
    case weight_kind::B: return {ipow(i, N), ipow(j, n)};
    case weight_kind::B_prime: return {ipow(j, N), ipow(i, n)};
    case weight_kind::A: {
      fraction b{ipow(i, N), ipow(j, n)};
      fraction bp{ipow(j, N), ipow(i, n)};
      return b < bp ? bp : b;
    }
    case weight_kind::Kinf: return {ipow(i, N) * ipow(j, N), 1};
    case weight_kind::SeqS: return {ipow(i, n), 1};
    case weight_kind::SeqSprime: return {1, ipow(i, n)};
    case weight_kind::D: break;
  }
  throw invalid_argument("kind D has no exact evaluation");
}

/// b^e by repeated squaring; exact while the result fits the mantissa.
inline long double lpow(long double b, level_t e)
{
  long double r = 1;
  while (e > 0) {
    if (e & 1)
      r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// max{ j^(N+1/n) / i^n, i^(N+1/n) / j^n }; only the n-th roots are inexact.
inline long double d_weight(index_t i, index_t j, level_t N, level_t n)
{
  const long double frac = 1.0L / n;
  const long double li = static_cast<long double>(i), lj = static_cast<long double>(j);
  const long double x = lpow(lj, N) * std::pow(lj, frac) / lpow(li, n);
  const long double y = lpow(li, N) * std::pow(li, frac) / lpow(lj, n);
  return std::max(x, y);
}

}  // namespace detail

/// Exact for integer-exponent kinds, long double for D.
inline weight_value weight_eval(const weight_family& f, index_t i, index_t j, level_t N, level_t n)
{
  if (is_one_index(f.kind))
    j = 1;
  detail::check_indices(i, j);
  detail::check_levels(f, N, n);
  if (f.kind == weight_kind::D) {
    if (n == 0)
      throw invalid_argument("weight D requires n >= 1");
    return weight_value(detail::d_weight(i, j, N, n));
  }
  return weight_value(detail::exact_fraction(f.kind, i, j, N, n).value());
}

/// Natural logarithm of the weight, in double precision. Used by the norm
/// kernels and oracles where exactness is not needed.
inline double log_weight(weight_kind kind, index_t i, index_t j, level_t N, level_t n)
{
  const double li = std::log(static_cast<double>(i));
  const double lj = std::log(static_cast<double>(j));
  switch (kind) {
    case weight_kind::B: return N * li - n * lj;
    case weight_kind::B_prime: return N * lj - n * li;
    case weight_kind::A: return std::max(N * li - n * lj, N * lj - n * li);
    case weight_kind::D: {
      const double e = N + 1.0 / n;
      return std::max(e * lj - n * li, e * li - n * lj);
    }
    case weight_kind::Kinf: return N * (li + lj);
    case weight_kind::SeqS: return n * li;
    case weight_kind::SeqSprime: return -n * li;
  }
  return 0.0;
}

/// Double-precision weight via pow; exact whenever the powers are
/// representable.
inline double weight_approx(weight_kind kind, index_t i, index_t j, level_t N, level_t n)
{
  const double di = static_cast<double>(i), dj = static_cast<double>(j);
  switch (kind) {
    case weight_kind::B: return std::pow(di, N) / std::pow(dj, n);
    case weight_kind::B_prime: return std::pow(dj, N) / std::pow(di, n);
    case weight_kind::A: return std::max(std::pow(di, N) / std::pow(dj, n), std::pow(dj, N) / std::pow(di, n));
    case weight_kind::D: return static_cast<double>(detail::d_weight(i, j, N, n));
    case weight_kind::Kinf: return std::pow(di * dj, N);
    case weight_kind::SeqS: return std::pow(di, n);
    case weight_kind::SeqSprime: return 1.0 / std::pow(di, n);
  }
  return 0.0;
}

/// Row-major T x T table of w(i,j;N,n), for the dense matrix kernels.
inline std::vector<double> weight_table(weight_kind kind, index_t T, level_t N, level_t n)
{
  if (kind == weight_kind::D && n == 0)
    throw invalid_argument("weight D requires n >= 1");
  std::vector<double> table(static_cast<std::size_t>(T * T));
  for (index_t i = 1; i <= T; ++i)
    for (index_t j = 1; j <= T; ++j)
      table[static_cast<std::size_t>((i - 1) * T + (j - 1))] = weight_approx(kind, i, j, N, n);
  return table;
}

// ---------------------------------------------------------------------------
// Structural verification
// ---------------------------------------------------------------------------

struct weight_grid {
  index_t i_max = 1, j_max = 1;
  level_t N_max = 0, n_max = 0;
};

struct weight_violation {
  index_t i, j;
  level_t N, n;
  std::string what;  // "positivity" | "inner" | "outer" | "sandwich-lower" | ...
  friend bool operator==(const weight_violation&, const weight_violation&) = default;
};

struct verification_report {
  std::vector<weight_violation> violations;
  std::size_t checked = 0;
  bool pass() const { return violations.empty(); }
};

/// Scans a grid for positivity and the two monotonicity axioms of a
/// four-indexed weight: inner level non-increasing, outer level
/// non-decreasing. `w(i,j,N,n)` must return a totally ordered value with
/// `<=`, `<` and `> 0` against a zero of the same type (`zero`).
///
/// Tuples are visited in (i, j, N, n) lexicographic order so reports are
/// deterministic.
template <class Weight, class Value>
verification_report scan_koethe_axioms(Weight&& w, const weight_grid& g, const Value& zero,
                                       level_t n_min = 0)
{
  if (g.i_max < 1 || g.j_max < 1 || g.N_max < 0 || g.n_max < n_min)
    throw invalid_argument("invalid grid");
  verification_report rep;
  const level_t Ncount = g.N_max + 2, ncount = g.n_max - n_min + 2;
  std::vector<Value> cache(static_cast<std::size_t>(Ncount * ncount));
  auto at = [&](level_t N, level_t n) -> Value& {
    return cache[static_cast<std::size_t>(N * ncount + (n - n_min))];
  };
  for (index_t i = 1; i <= g.i_max; ++i)
    for (index_t j = 1; j <= g.j_max; ++j) {
      for (level_t N = 0; N < Ncount; ++N)
        for (level_t n = n_min; n < n_min + ncount; ++n)
          at(N, n) = w(i, j, N, n);
      for (level_t N = 0; N <= g.N_max; ++N)
        for (level_t n = n_min; n <= g.n_max; ++n) {
          ++rep.checked;
          const Value& here = at(N, n);
          if (!(zero < here))
            rep.violations.push_back({i, j, N, n, "positivity"});
          if (!(at(N, n + 1) <= here))
            rep.violations.push_back({i, j, N, n, "inner"});
          if (!(here <= at(N + 1, n)))
            rep.violations.push_back({i, j, N, n, "outer"});
        }
    }
  return rep;
}

namespace detail {

/// long double with a relative comparison slack of a few ulps.
struct approx_value {
  long double v = 0;
  static constexpr long double slack = 64 * LDBL_EPSILON;
  friend bool operator<=(const approx_value& a, const approx_value& b)
  {
    return a.v <= b.v * (1 + slack);
  }
  friend bool operator<(const approx_value& a, const approx_value& b) { return a.v < b.v; }
};

}  // namespace detail

/// Positivity and monotonicity of a built-in family on a finite grid.
/// One-index kinds are checked against their one-index analogue
/// (SeqSprime: c_{n+1} <= c_n; SeqS: c_n <= c_{n+1}).
inline verification_report check_koethe_axioms(const weight_family& f, const weight_grid& g)
{
  if (g.N_max + 1 > f.level_cap || g.n_max + 1 > f.level_cap)
    throw level_overflow("grid levels exceed cap");
  switch (f.kind) {
    case weight_kind::D:
      return scan_koethe_axioms(
          [](index_t i, index_t j, level_t N, level_t n) {
            return detail::approx_value{detail::d_weight(i, j, N, n)};
          },
          g, detail::approx_value{0}, 1);
    case weight_kind::SeqS:
    case weight_kind::SeqSprime: {
      weight_grid one = g;
      one.j_max = 1;
      one.N_max = 0;
      // The scanner tests "inner non-increasing". SeqSprime is i^-n directly;
      // SeqS = i^n grows, which is the same statement about its reciprocal.
      return scan_koethe_axioms(
          [](index_t i, index_t, level_t, level_t n) { return detail::fraction{1, detail::ipow(i, n)}; },
          one, detail::fraction{0, 1});
    }
    default: {
      // Powers of the current i and j are cached across the level sweep.
      const level_t top = std::max(g.N_max, g.n_max) + 1;
      detail::power_table pi(top), pj(top);
      return scan_koethe_axioms(
          [k = f.kind, &pi, &pj](index_t i, index_t j, level_t N, level_t n) {
            const auto& I = pi.of(i);
            const auto& J = pj.of(j);
            switch (k) {
              case weight_kind::B: return detail::fraction{I[N], J[n]};
              case weight_kind::B_prime: return detail::fraction{J[N], I[n]};
              case weight_kind::A: {
                detail::fraction b{I[N], J[n]}, bp{J[N], I[n]};
                return b < bp ? bp : b;
              }
              default: return detail::exact_fraction(k, i, j, N, n);
            }
          },
          g, detail::fraction{0, 1});
    }
  }
}

// ---------------------------------------------------------------------------
// Compactness ratios
// ---------------------------------------------------------------------------

/// inner_step: D(i,j;N,n+1) / D(i,j;N,n)       (kind D only)
/// cross_shift: A(i,j;N,n+2) / A(i,j;N+2,n)     (kind A only)
enum class ratio_shift { inner_step, cross_shift };

inline weight_value compactness_ratio(const weight_family& f, index_t i, index_t j, level_t N, level_t n,
                                      ratio_shift shift)
{
  detail::check_indices(i, j);
  if (shift == ratio_shift::inner_step) {
    if (f.kind != weight_kind::D)
      throw invalid_argument("inner_step ratio is defined for kind D only");
    if (n < 1)
      throw invalid_argument("inner_step ratio requires n >= 1");
    detail::check_levels(f, N, n + 1);
    return weight_value(detail::d_weight(i, j, N, n + 1) / detail::d_weight(i, j, N, n));
  }
  if (f.kind != weight_kind::A)
    throw invalid_argument("cross_shift ratio is defined for kind A only");
  detail::check_levels(f, N + 2, n + 2);
  return weight_value(rational(weight_eval(f, i, j, N, n + 2).exact() / weight_eval(f, i, j, N + 2, n).exact()));
}

/// Closed forms of the two ratios: (min * max^(1/(n(n+1))))^-1 and (ij)^-2.
inline weight_value compactness_ratio_closed_form(index_t i, index_t j, level_t n, ratio_shift shift)
{
  detail::check_indices(i, j);
  if (shift == ratio_shift::inner_step) {
    if (n < 1)
      throw invalid_argument("inner_step ratio requires n >= 1");
    const long double lo = static_cast<long double>(std::min(i, j));
    const long double hi = static_cast<long double>(std::max(i, j));
    return weight_value(1.0L / (lo * std::pow(hi, 1.0L / (static_cast<long double>(n) * (n + 1)))));
  }
  return weight_value(rational(bigint(1), bigint(i) * i * j * j));
}

// ---------------------------------------------------------------------------
// Nuclearity constant and the A <= D <= A(N+1) sandwich
// ---------------------------------------------------------------------------

inline constexpr double nuclearity_constant = std::numbers::pi * std::numbers::pi * std::numbers::pi *
                                              std::numbers::pi / 36.0;

/// sum_{i,j<=T} (ij)^-2. The double sum factors as the square of the
/// one-index sum, which is accumulated from the smallest term upward.
inline double nuclearity_sum(index_t T)
{
  if (T < 1)
    throw invalid_argument("truncation size must be >= 1");
  long double s = 0;
  for (index_t j = T; j >= 1; --j) {
    const long double jj = static_cast<long double>(j);
    s += 1.0L / (jj * jj);
  }
  return static_cast<double>(s * s);
}

struct sandwich_triple {
  rational lower;    // A(i,j;N,n)
  long double mid;   // D(i,j;N,n)
  rational upper;    // A(i,j;N+1,n)
  bool ordered() const
  {
    const long double slack = 64 * LDBL_EPSILON;
    return to_long_double(lower) <= mid * (1 + slack) && mid <= to_long_double(upper) * (1 + slack);
  }
};

inline sandwich_triple sandwich_values(index_t i, index_t j, level_t N, level_t n)
{
  if (n < 1)
    throw invalid_argument("sandwich requires n >= 1");
  weight_family a{weight_kind::A};
  return {weight_eval(a, i, j, N, n).exact(), detail::d_weight(i, j, N, n),
          weight_eval(a, i, j, N + 1, n).exact()};
}

/// A <= D <= A(N+1) over the grid, n ranging over [1, n_max].
inline verification_report sandwich_check(const weight_grid& g)
{
  if (g.n_max < 1 || g.i_max < 1 || g.j_max < 1 || g.N_max < 0)
    throw invalid_argument("invalid grid");
  verification_report rep;
  for (index_t i = 1; i <= g.i_max; ++i)
    for (index_t j = 1; j <= g.j_max; ++j)
      for (level_t N = 0; N <= g.N_max; ++N)
        for (level_t n = 1; n <= g.n_max; ++n) {
          ++rep.checked;
          const long double slack = 64 * LDBL_EPSILON;
          const auto lo = detail::exact_fraction(weight_kind::A, i, j, N, n);
          const auto hi = detail::exact_fraction(weight_kind::A, i, j, N + 1, n);
          const long double d = detail::d_weight(i, j, N, n);
          if (!(lo.approx() <= d * (1 + slack)))
            rep.violations.push_back({i, j, N, n, "sandwich-lower"});
          if (!(d <= hi.approx() * (1 + slack)))
            rep.violations.push_back({i, j, N, n, "sandwich-upper"});
        }
  return rep;
}

}  // namespace ncs

#endif
