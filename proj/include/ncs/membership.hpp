#ifndef NCS_MEMBERSHIP_HPP
#define NCS_MEMBERSHIP_HPP

// Growth envelopes for infinite matrices and the decision procedure for
// membership in the four matrix algebras
//
//   MS      = Lambda(A):  for all N exists n: sup |x_ij| max(i,j)^N min(i,j)^-n < inf
//   Ls      = Lambda(B):  for all N exists n: sup |x_ij| i^N j^-n < inf
//   Lsprime = Lambda(B'): for all N exists n: sup |x_ij| j^N i^-n < inf
//   S       = Kinf:       for all N:          sup |x_ij| i^N j^N  < inf
//
// An envelope bounds |x_ij| by a finite sum of terms
//   c * min(i,j)^gamma * max(i,j)^delta * rho^max(i,j)
// restricted to a region, plus a finite patch. The decision reduces
// finiteness of each supremum to linear inequalities in (N, n) along the
// extremal rays m = 1 and m = M of the region (m = min, M = max).
//
// growth_oracle() is an independent numeric check: it evaluates the envelope
// times the weight on truncation grids and fits the log-log slope of the sup.

#include "ncs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ncs {

// ---------------------------------------------------------------------------
// Envelope language
// ---------------------------------------------------------------------------

enum class region_kind { full, upper, lower, band };

struct region {
  region_kind kind = region_kind::full;
  index_t width    = 0;  // band only

  static region full() { return {region_kind::full, 0}; }
  static region upper() { return {region_kind::upper, 0}; }
  static region lower() { return {region_kind::lower, 0}; }
  static region band(index_t w) { return {region_kind::band, w}; }

  bool contains(index_t i, index_t j) const
  {
    switch (kind) {
      case region_kind::full: return true;
      case region_kind::upper: return j >= i;
      case region_kind::lower: return i >= j;
      case region_kind::band: return (i > j ? i - j : j - i) <= width;
    }
    return false;
  }
  bool touches_upper() const { return kind != region_kind::lower; }
  bool touches_lower() const { return kind != region_kind::upper; }
  friend bool operator==(const region&, const region&) = default;
};

inline std::string to_string(const region& r)
{
  switch (r.kind) {
    case region_kind::full: return "full";
    case region_kind::upper: return "upper";
    case region_kind::lower: return "lower";
    case region_kind::band: return "band=" + std::to_string(r.width);
  }
  return "?";
}

struct envelope_term {
  rational c     = 1;
  rational gamma = 0;  // exponent of min(i,j)
  rational delta = 0;  // exponent of max(i,j)
  rational rho   = 1;  // decay base in (0, 1]
  region reg     = region::full();

  void validate() const
  {
    if (c <= 0)
      throw invalid_argument("envelope coefficient must be positive");
    if (rho <= 0 || rho > 1)
      throw invalid_argument("envelope decay base must lie in (0, 1]");
    if (reg.kind == region_kind::band && reg.width < 0)
      throw invalid_argument("band width must be nonnegative");
  }

  /// log of the term at (i,j); -inf outside the region.
  double log_value(index_t i, index_t j) const
  {
    if (!reg.contains(i, j))
      return -std::numeric_limits<double>::infinity();
    const double m = static_cast<double>(std::min(i, j));
    const double M = static_cast<double>(std::max(i, j));
    double v = std::log(to_double(c)) + to_double(gamma) * std::log(m) + to_double(delta) * std::log(M);
    if (rho != 1)
      v += M * std::log(to_double(rho));
    return v;
  }

  friend bool operator==(const envelope_term&, const envelope_term&) = default;
};

struct envelope_matrix {
  std::vector<envelope_term> terms;
  std::map<std::pair<index_t, index_t>, double> patch;

  void validate() const
  {
    for (const auto& t : terms)
      t.validate();
    for (const auto& [ij, v] : patch) {
      if (ij.first < 1 || ij.second < 1)
        throw invalid_argument("patch indices must be positive");
      if (!(v >= 0) || !std::isfinite(v))
        throw invalid_argument("patch values must be finite and nonnegative");
    }
  }

  /// log of the term sum at (i,j), ignoring the patch; -inf if no term applies.
  double log_terms(index_t i, index_t j) const
  {
    double best = -std::numeric_limits<double>::infinity();
    double acc  = 0;  // sum of exp(v - best)
    for (const auto& t : terms) {
      const double v = t.log_value(i, j);
      if (v == -std::numeric_limits<double>::infinity())
        continue;
      if (v > best) {
        acc  = acc * std::exp(best - v) + 1.0;
        best = v;
      } else {
        acc += std::exp(v - best);
      }
    }
    return best == -std::numeric_limits<double>::infinity() ? best : best + std::log(acc);
  }

  /// log of the envelope bound max(patch, sum of terms) at (i,j).
  double log_value(index_t i, index_t j) const
  {
    double v = log_terms(i, j);
    if (auto it = patch.find({i, j}); it != patch.end() && it->second > 0)
      v = std::max(v, std::log(it->second));
    return v;
  }

  double value(index_t i, index_t j) const { return std::exp(log_value(i, j)); }

  /// Largest band width among band terms, -1 when there are none.
  index_t max_band_width() const
  {
    index_t w = -1;
    for (const auto& t : terms)
      if (t.reg.kind == region_kind::band)
        w = std::max(w, t.reg.width);
    return w;
  }
};

/// Single band(0) term c * j^power * rho^j on the diagonal.
inline envelope_matrix diagonal_envelope(const rational& power, const rational& c = 1, const rational& rho = 1)
{
  envelope_matrix e;
  e.terms.push_back({c, power, 0, rho, region::band(0)});
  return e;
}

/// Swap the roles of i and j: upper and lower regions exchange, the
/// min/max monomial is unchanged.
inline envelope_matrix envelope_adjoint(const envelope_matrix& x)
{
  envelope_matrix out;
  for (auto t : x.terms) {
    if (t.reg.kind == region_kind::upper)
      t.reg = region::lower();
    else if (t.reg.kind == region_kind::lower)
      t.reg = region::upper();
    out.terms.push_back(t);
  }
  for (const auto& [ij, v] : x.patch)
    out.patch[{ij.second, ij.first}] = v;
  return out;
}

// ---------------------------------------------------------------------------
// Spaces, certificates, refutations
// ---------------------------------------------------------------------------

enum class matrix_space { MS, Ls, Lsprime, S };

inline std::string to_string(matrix_space s)
{
  switch (s) {
    case matrix_space::MS: return "MS";
    case matrix_space::Ls: return "Ls";
    case matrix_space::Lsprime: return "Lsprime";
    case matrix_space::S: return "S";
  }
  return "?";
}

inline matrix_space parse_matrix_space(std::string_view s)
{
  if (s == "MS") return matrix_space::MS;
  if (s == "Ls") return matrix_space::Ls;
  if (s == "Lsprime" || s == "Ls'") return matrix_space::Lsprime;
  if (s == "S") return matrix_space::S;
  throw invalid_argument("unknown space '" + std::string(s) + "'");
}

inline weight_kind weight_of(matrix_space s)
{
  switch (s) {
    case matrix_space::MS: return weight_kind::A;
    case matrix_space::Ls: return weight_kind::B;
    case matrix_space::Lsprime: return weight_kind::B_prime;
    case matrix_space::S: return weight_kind::Kinf;
  }
  return weight_kind::A;
}

/// n(N) = slope * N + intercept.
struct affine_witness {
  std::int64_t slope = 0, intercept = 0;
  level_t at(level_t N) const { return static_cast<level_t>(slope * N + intercept); }
  friend bool operator==(const affine_witness&, const affine_witness&) = default;
};

inline std::string to_string(const affine_witness& w)
{
  std::string out = "n(N)=";
  if (w.slope == 0)
    return out + std::to_string(w.intercept);
  out += w.slope == 1 ? "N" : std::to_string(w.slope) + "N";
  if (w.intercept != 0)
    out += "+" + std::to_string(w.intercept);
  return out;
}

struct certificate {
  matrix_space space = matrix_space::MS;
  affine_witness witness;
  std::vector<double> bound;  // bound[N] for N = 0..cap
};

/// Index paths: row_one = (t, 1), column_one = (1, t), diagonal = (t, t + offset).
enum class ray_kind { row_one, column_one, diagonal };

struct ray {
  ray_kind kind  = ray_kind::diagonal;
  index_t offset = 0;
  std::pair<index_t, index_t> at(index_t t) const
  {
    switch (kind) {
      case ray_kind::row_one: return {t, 1};
      case ray_kind::column_one: return {1, t};
      case ray_kind::diagonal: return {t, t + offset};
    }
    return {t, t};
  }
  friend bool operator==(const ray&, const ray&) = default;
};

inline std::string to_string(const ray& r)
{
  switch (r.kind) {
    case ray_kind::row_one: return "(t,1)";
    case ray_kind::column_one: return "(1,t)";
    case ray_kind::diagonal: return r.offset == 0 ? "(t,t)" : "(t,t+" + std::to_string(r.offset) + ")";
  }
  return "?";
}

inline ray transpose(ray r)
{
  if (r.kind == ray_kind::row_one)
    r.kind = ray_kind::column_one;
  else if (r.kind == ray_kind::column_one)
    r.kind = ray_kind::row_one;
  return r;
}

struct refutation {
  matrix_space space = matrix_space::MS;
  level_t level      = 0;
  ray path;
  rational exponent = 0;     // growth exponent along the ray, independent of n
  bool exponential  = false; // growth beats every power; exponent is then a lower bound
};

using membership_result = std::variant<certificate, refutation>;

inline bool is_certificate(const membership_result& r) { return std::holds_alternative<certificate>(r); }

struct decide_options {
  level_t bound_cap = 6;  // certificate bounds are tabulated for N = 0..bound_cap
};

namespace detail {

/// k0 + kN * N + kn * n
struct linear_form {
  rational k0 = 0;
  int kN = 0, kn = 0;
  rational at(level_t N, level_t n) const { return k0 + rational(kN) * N + rational(kn) * n; }
  linear_form operator+(const linear_form& o) const { return {k0 + o.k0, kN + o.kN, kn + o.kn}; }
};

/// Exponents of min(i,j) and max(i,j) contributed by the weight on one half
/// of the plane. upper: i <= j (i = min), lower: i >= j (i = max).
struct half_exponents {
  linear_form m, M;
};

inline half_exponents weight_exponents(weight_kind kind, bool upper_half)
{
  const linear_form grow{0, 1, 0};   // +N
  const linear_form decay{0, 0, -1}; // -n
  switch (kind) {
    case weight_kind::A: return {decay, grow};
    case weight_kind::B: return upper_half ? half_exponents{grow, decay} : half_exponents{decay, grow};
    case weight_kind::B_prime: return upper_half ? half_exponents{decay, grow} : half_exponents{grow, decay};
    case weight_kind::Kinf: return {grow, grow};
    default: break;
  }
  throw invalid_argument("no membership weight for family " + to_string(kind));
}

/// One finiteness constraint form <= 0 together with the ray along which
/// it is violated.
struct constraint {
  linear_form form;
  ray path;
};

struct term_half {
  const envelope_term* term;
  bool upper;
  linear_form a, b;  // total exponents of min and max
};

inline std::vector<term_half> term_halves(const envelope_matrix& x, weight_kind kind)
{
  std::vector<term_half> out;
  // Lower halves first, so that of two equally strong refutations the one
  // along (t, 1) is reported.
  for (const auto& t : x.terms)
    for (bool upper : {false, true}) {
      if (upper ? !t.reg.touches_upper() : !t.reg.touches_lower())
        continue;
      const auto w = weight_exponents(kind, upper);
      out.push_back({&t, upper, linear_form{t.gamma, 0, 0} + w.m, linear_form{t.delta, 0, 0} + w.M});
    }
  return out;
}

inline std::vector<constraint> finiteness_constraints(const envelope_matrix& x, weight_kind kind)
{
  std::vector<constraint> out;
  for (const auto& h : term_halves(x, kind)) {
    if (h.term->rho < 1)
      continue;  // geometric decay dominates every power
    const ray diag{ray_kind::diagonal, 0};
    if (h.term->reg.kind == region_kind::band) {
      out.push_back({h.a + h.b, diag});
    } else {
      out.push_back({h.b, {h.upper ? ray_kind::column_one : ray_kind::row_one, 0}});
      out.push_back({h.a + h.b, diag});
    }
  }
  return out;
}

/// sup_{M >= 1} M^e rho^M for integer M.
inline double sup_power_decay(double e, double rho)
{
  if (rho >= 1)
    return e <= 0 ? 1.0 : std::numeric_limits<double>::infinity();
  if (e <= 0)
    return rho;
  const double peak = e / std::log(1.0 / rho);
  double best       = rho;
  for (double M : {std::floor(peak), std::ceil(peak)})
    if (M >= 1)
      best = std::max(best, std::exp(e * std::log(M) + M * std::log(rho)));
  return best;
}

/// Analytic sup of one term-half times the weight at (N, n).
inline double term_half_sup(const term_half& h, level_t N, level_t n)
{
  const double a   = to_double(h.a.at(N, n));
  const double b   = to_double(h.b.at(N, n));
  const double c   = to_double(h.term->c);
  const double rho = to_double(h.term->rho);
  if (h.term->reg.kind == region_kind::band) {
    const double spread = std::pow(1.0 + static_cast<double>(h.term->reg.width), std::max(-a, 0.0));
    return c * spread * sup_power_decay(a + b, rho);
  }
  return c * sup_power_decay(b + std::max(a, 0.0), rho);
}

}  // namespace detail

/// Exact decision by exponent arithmetic. Patches never affect the outcome.
inline membership_result decide_membership(const envelope_matrix& x, matrix_space space,
                                           const decide_options& opt = {})
{
  x.validate();
  const weight_kind kind = weight_of(space);
  const auto cons        = detail::finiteness_constraints(x, kind);

  // Constraints free of n must hold for every N; the first N that breaks
  // one is the refutation level.
  std::optional<refutation> worst;
  for (const auto& c : cons) {
    if (c.form.kn != 0)
      continue;
    level_t fail_at;
    if (c.form.kN <= 0) {
      if (c.form.k0 <= 0)
        continue;
      fail_at = 0;
    } else {
      // smallest N >= 0 with k0 + kN N > 0
      const bigint lo = floor(rational(-c.form.k0) / c.form.kN) + 1;
      fail_at         = static_cast<level_t>(std::max<std::int64_t>(0, to_int64(lo)));
    }
    const rational exponent = c.form.at(fail_at, 0);
    if (!worst || fail_at < worst->level || (fail_at == worst->level && exponent > worst->exponent))
      worst = refutation{space, fail_at, c.path, exponent, false};
  }
  if (worst)
    return *worst;

  // Every remaining constraint reads n >= k0 + kN N (kn = -1); the witness
  // is the least affine majorant of their pointwise max, clamped at 0.
  certificate cert;
  cert.space = space;
  if (space != matrix_space::S) {
    std::int64_t slope = 0, intercept = 0;
    for (const auto& c : cons) {
      if (c.form.kn == 0)
        continue;  // already known to hold for every N
      if (c.form.kn != -1)
        throw invalid_argument("unexpected constraint shape");
      slope     = std::max<std::int64_t>(slope, c.form.kN);
      intercept = std::max(intercept, to_int64(ceil(c.form.k0)));
    }
    cert.witness = {slope, intercept};
  }

  const auto halves = detail::term_halves(x, kind);
  for (level_t N = 0; N <= opt.bound_cap; ++N) {
    const level_t n = cert.witness.at(N);
    double total    = 0;
    for (const auto& t : x.terms) {
      double term_sup = 0;
      for (const auto& h : halves)
        if (h.term == &t)
          term_sup = std::max(term_sup, detail::term_half_sup(h, N, n));
      total += term_sup;
    }
    double patch_sup = 0;
    for (const auto& [ij, v] : x.patch)
      patch_sup = std::max(patch_sup, v * weight_approx(kind, ij.first, ij.second, N, n));
    cert.bound.push_back(std::max(total, patch_sup) * (1 + 1e-12));
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Numeric growth oracle
// ---------------------------------------------------------------------------

struct oracle_config {
  std::vector<index_t> grid = {16, 64, 256, 1024, 4096};
  double bounded_slope      = 0.1;
  double unbounded_slope    = 0.25;
};

enum class growth_verdict { bounded, unbounded, inconclusive };

inline std::string to_string(growth_verdict v)
{
  switch (v) {
    case growth_verdict::bounded: return "bounded";
    case growth_verdict::unbounded: return "unbounded";
    case growth_verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct growth_report {
  std::vector<index_t> sizes;
  std::vector<double> log_sup;  // log of sup over the truncation, per size
  double slope = 0;
  growth_verdict verdict = growth_verdict::bounded;
  std::pair<index_t, index_t> argmax{1, 1};  // at the largest size
  double sup() const { return log_sup.empty() ? 0.0 : std::exp(log_sup.back()); }
};

/// Least-squares slope of y against log(x), skipping -inf samples.
inline double loglog_slope(const std::vector<index_t>& xs, const std::vector<double>& ys)
{
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < xs.size(); ++k)
    if (std::isfinite(ys[k]))
      pts.emplace_back(std::log(static_cast<double>(xs[k])), ys[k]);
  if (pts.size() < 2)
    return 0.0;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

namespace detail {

inline void check_grid(const oracle_config& cfg)
{
  if (cfg.grid.size() < 4)
    throw invalid_argument("growth oracle needs at least 4 grid sizes");
  for (std::size_t k = 0; k < cfg.grid.size(); ++k)
    if (cfg.grid[k] < 1 || (k > 0 && cfg.grid[k] <= cfg.grid[k - 1]))
      throw invalid_argument("growth oracle grid must be positive and increasing");
}

inline growth_report finish(const oracle_config& cfg, std::vector<double> log_sup, std::pair<index_t, index_t> arg)
{
  growth_report rep;
  rep.sizes   = cfg.grid;
  rep.log_sup = std::move(log_sup);
  rep.slope   = loglog_slope(rep.sizes, rep.log_sup);
  rep.argmax  = arg;
  if (rep.slope <= cfg.bounded_slope)
    rep.verdict = growth_verdict::bounded;
  else if (rep.slope >= cfg.unbounded_slope)
    rep.verdict = growth_verdict::unbounded;
  else
    rep.verdict = growth_verdict::inconclusive;
  return rep;
}

}  // namespace detail

/// Sup over i,j <= T of envelope x weight for every T in the grid, and the
/// log-log slope of those sups.
///
/// For a fixed M = max(i,j) and a fixed side of the diagonal, the product
/// is a positive combination of powers of m = min(i,j) (times a max of two
/// such for the weight A), hence convex in log m on any stretch where the
/// set of active terms does not change. The active set only changes inside
/// the widest band, so it suffices to visit m in {1, M - w - 1} and the
/// band itself, plus the patch cells. growth_oracle_exhaustive() visits
/// every cell and is kept for cross-checking.
inline growth_report growth_oracle(const envelope_matrix& x, weight_kind family, level_t N, level_t n,
                                   const oracle_config& cfg = {})
{
  detail::check_grid(cfg);
  const index_t T = cfg.grid.back();
  const index_t w = x.max_band_width();
  double best     = -std::numeric_limits<double>::infinity();
  std::pair<index_t, index_t> arg{1, 1};
  std::vector<double> out;
  std::size_t next = 0;

  auto visit = [&](index_t i, index_t j) {
    const double v = x.log_value(i, j);
    if (v == -std::numeric_limits<double>::infinity())
      return;
    const double total = v + log_weight(family, i, j, N, n);
    if (total > best) {
      best = total;
      arg  = {i, j};
    }
  };

  for (index_t M = 1; M <= T; ++M) {
    auto visit_pair = [&](index_t m) {
      if (m < 1 || m > M)
        return;
      visit(m, M);
      visit(M, m);
    };
    visit_pair(1);
    visit_pair(M - w - 1);
    visit_pair(M - 1);
    for (index_t m = std::max<index_t>(1, M - w); m <= M; ++m)
      visit_pair(m);
    for (const auto& [ij, v] : x.patch)
      if (std::max(ij.first, ij.second) == M)
        visit(ij.first, ij.second);
    while (next < cfg.grid.size() && cfg.grid[next] == M) {
      out.push_back(best);
      ++next;
    }
  }
  return detail::finish(cfg, std::move(out), arg);
}

/// Same report as growth_oracle(), visiting every cell. O(T^2).
inline growth_report growth_oracle_exhaustive(const envelope_matrix& x, weight_kind family, level_t N, level_t n,
                                              const oracle_config& cfg = {})
{
  detail::check_grid(cfg);
  const index_t T = cfg.grid.back();
  double best     = -std::numeric_limits<double>::infinity();
  std::pair<index_t, index_t> arg{1, 1};
  std::vector<double> out;
  std::size_t next = 0;
  for (index_t M = 1; M <= T; ++M) {
    for (index_t m = 1; m <= M; ++m)
      for (auto [i, j] : {std::pair{m, M}, std::pair{M, m}}) {
        const double v = x.log_value(i, j);
        if (v == -std::numeric_limits<double>::infinity())
          continue;
        const double total = v + log_weight(family, i, j, N, n);
        if (total > best) {
          best = total;
          arg  = {i, j};
        }
      }
    while (next < cfg.grid.size() && cfg.grid[next] == M) {
      out.push_back(best);
      ++next;
    }
  }
  return detail::finish(cfg, std::move(out), arg);
}

/// Sup along a ray t -> (i(t), j(t)), t <= T, of an arbitrary log-valued
/// entry function times the weight.
inline growth_report ray_oracle(const std::function<double(index_t, index_t)>& log_entry, weight_kind family,
                                level_t N, level_t n, const ray& path, const oracle_config& cfg = {})
{
  detail::check_grid(cfg);
  double best = -std::numeric_limits<double>::infinity();
  std::pair<index_t, index_t> arg{1, 1};
  std::vector<double> out;
  std::size_t next = 0;
  for (index_t t = 1; t <= cfg.grid.back(); ++t) {
    const auto [i, j] = path.at(t);
    const double v    = log_entry(i, j);
    if (v != -std::numeric_limits<double>::infinity()) {
      const double total = v + log_weight(family, i, j, N, n);
      if (total > best) {
        best = total;
        arg  = {i, j};
      }
    }
    while (next < cfg.grid.size() && cfg.grid[next] == t) {
      out.push_back(best);
      ++next;
    }
  }
  return detail::finish(cfg, std::move(out), arg);
}

/// Envelope version. Growth is a property of the tail of the ray, so cells
/// inside the square [1, P]^2 holding the patch are skipped: a large finite
/// patch would otherwise dominate the running sup over the whole grid.
inline growth_report ray_oracle(const envelope_matrix& x, weight_kind family, level_t N, level_t n, const ray& path,
                                const oracle_config& cfg = {})
{
  index_t P = 0;
  for (const auto& [ij, v] : x.patch)
    P = std::max({P, ij.first, ij.second});
  return ray_oracle(
      [&x, P](index_t i, index_t j) {
        return i <= P && j <= P ? -std::numeric_limits<double>::infinity() : x.log_value(i, j);
      },
      family, N, n, path, cfg);
}

// ---------------------------------------------------------------------------
// Closure under products
// ---------------------------------------------------------------------------

struct product_failure {
  std::string reason;
};

using product_result = std::variant<envelope_matrix, product_failure>;

namespace detail {

/// Smallest "nice" rational >= sqrt(r), exact when r is a square of a rational.
inline rational sqrt_upper(const rational& r)
{
  const bigint p = numerator(r), q = denominator(r);
  const bigint sp = boost::multiprecision::sqrt(p), sq = boost::multiprecision::sqrt(q);
  if (sp * sp == p && sq * sq == q)
    return rational(sp, sq);
  const bigint scale = bigint(1) << 40;
  bigint k           = bigint(static_cast<long long>(std::ceil(std::sqrt(to_double(r)) * std::ldexp(1.0, 40))));
  rational s(k, scale);
  while (s * s < r)
    s += rational(1, scale);
  return s > 1 ? rational(1) : s;
}

/// Rational >= x for a finite positive double.
inline rational rational_above(double x)
{
  rational r(x);  // exact binary value
  return r * rational(1000000000001, 1000000000000);
}

/// Upper bound on sum_{k>=1} k^s r^k, or nullopt when divergent.
inline std::optional<rational> inner_sum_bound(const rational& s, const rational& r)
{
  if (r >= 1) {
    if (s >= -1)
      return std::nullopt;
    // sum k^-p <= 1 + 1/(p-1) for p > 1
    const rational p = -s;
    return rational(1) + rational(1) / (p - 1);
  }
  if (s <= 0)
    return r / (1 - r);
  const double sd = to_double(s), rd = to_double(r);
  const double peak = sd / std::log(1.0 / rd);
  const index_t K0  = static_cast<index_t>(std::ceil(2 * peak)) + 2;
  long double acc   = 0;
  for (index_t k = 1; k <= K0; ++k)
    acc += std::exp(static_cast<long double>(sd) * std::log(static_cast<long double>(k)) +
                    k * std::log(static_cast<long double>(rd)));
  const long double q = std::pow(1.0L + 1.0L / K0, sd) * rd;
  const long double next =
      std::exp(static_cast<long double>(sd) * std::log(static_cast<long double>(K0 + 1)) + (K0 + 1) * std::log(static_cast<long double>(rd)));
  acc += next / (1 - q);
  return rational_above(static_cast<double>(acc) * (1 + 1e-9));
}

/// Coefficient absorbing the patch: terms scaled by it dominate the patch.
inline std::optional<rational> patch_scale(const envelope_matrix& x)
{
  double lambda = 1;
  for (const auto& [ij, v] : x.patch) {
    if (v == 0)
      continue;
    const double lt = x.log_terms(ij.first, ij.second);
    if (lt == -std::numeric_limits<double>::infinity())
      return std::nullopt;
    lambda = std::max(lambda, v / std::exp(lt));
  }
  return lambda == 1 ? rational(1) : rational_above(lambda);
}

/// x_ii y_ij with x a band(0) term; `left` selects whether the diagonal
/// factor multiplies from the left (rows) or the right (columns).
inline void diagonal_times(const envelope_term& d, const envelope_term& g, bool left, std::vector<envelope_term>& out)
{
  const rational s = d.gamma + d.delta;
  const rational c = d.c * g.c;
  if (g.reg.kind == region_kind::band && g.reg.width == 0) {
    out.push_back({c, d.gamma + g.gamma, d.delta + g.delta, d.rho * g.rho, region::band(0)});
    return;
  }
  if (g.reg.kind == region_kind::band) {
    // the diagonal index lies within w of both i and j
    const rational cw = c * pow(rational(1) / d.rho, g.reg.width);
    out.push_back({cw, g.gamma + (s < 0 ? s : rational(0)), g.delta + (s >= 0 ? s : rational(0)), d.rho * g.rho,
                   g.reg});
    return;
  }
  // Left factor: the diagonal index is i, which is min on the upper side and
  // max on the lower side. Right factor: j, the other way round.
  const bool diag_is_min_on_upper = left;
  if (g.reg.touches_upper()) {
    if (diag_is_min_on_upper)
      out.push_back({c, g.gamma + s, g.delta, g.rho, region::upper()});
    else
      out.push_back({c, g.gamma, g.delta + s, g.rho * d.rho, region::upper()});
  }
  if (g.reg.touches_lower()) {
    if (diag_is_min_on_upper)
      out.push_back({c, g.gamma, g.delta + s, g.rho * d.rho, region::lower()});
    else
      out.push_back({c, g.gamma + s, g.delta, g.rho, region::lower()});
  }
}

/// Separable majorant c (ik)^g sigma^i sigma^k of a term.
struct separable {
  rational c, g, sigma;
};

inline separable separate(const envelope_term& t)
{
  const rational g = t.delta <= t.gamma ? rational((t.gamma + t.delta) / 2) : t.delta;
  return {t.c, g, sqrt_upper(t.rho)};
}

}  // namespace detail

/// Envelope E with sum_k xbar_ik ybar_kj <= E_ij for all i, j, or a failure
/// when an inner sum cannot be bounded.
inline product_result envelope_product_bound(const envelope_matrix& x, const envelope_matrix& y)
{
  x.validate();
  y.validate();
  const auto sx = detail::patch_scale(x);
  const auto sy = detail::patch_scale(y);
  if (!sx || !sy)
    return product_failure{"patch entry outside the support of every term"};

  envelope_matrix out;
  for (auto tx : x.terms) {
    tx.c *= *sx;
    for (auto ty : y.terms) {
      ty.c *= *sy;
      const bool dx = tx.reg.kind == region_kind::band && tx.reg.width == 0;
      const bool dy = ty.reg.kind == region_kind::band && ty.reg.width == 0;
      if (dx) {
        detail::diagonal_times(tx, ty, true, out.terms);
        continue;
      }
      if (dy) {
        detail::diagonal_times(ty, tx, false, out.terms);
        continue;
      }
      const auto a = detail::separate(tx);
      const auto b = detail::separate(ty);
      const auto inner = detail::inner_sum_bound(a.g + b.g, a.sigma * b.sigma);
      if (!inner)
        return product_failure{"inner sum over k diverges: exponent " + to_string(rational(a.g + b.g)) +
                               " with decay " + to_string(rational(a.sigma * b.sigma))};
      const rational c = a.c * b.c * *inner;
      // i^{g1} j^{g2} sigma1^i sigma2^j split by which index is the max
      out.terms.push_back({c, a.g, b.g, b.sigma, region::upper()});
      out.terms.push_back({c, b.g, a.g, a.sigma, region::lower()});
    }
  }
  return out;
}

}  // namespace ncs

#endif
