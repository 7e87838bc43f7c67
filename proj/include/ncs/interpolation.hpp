#ifndef NCS_INTERPOLATION_HPP
#define NCS_INTERPOLATION_HPP

// The dual interpolation estimate for large theta at the level of the weights
// a_{ij;N,n} = max(i,j)^N min(i,j)^-n:
//
//   a_{ij;K,k}^(1-theta) a_{ij;N,n}^theta <= C a_{ij;M,m},
//
// with the parameter choice M = N + 1, n = 1, and a constructive probe showing
// that no choice of (k, C) works when theta is below the threshold.

#include "ncs/membership.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace ncs {

struct interp_params {
  level_t N = 0, M = 0, K = 0, n = 0, m = 0, k = 0;
  rational theta0, theta;
  double C = 1;

  /// Exponent of max(i,j) in the ratio: (1-theta)K + theta N - M (<= 0 when valid).
  rational max_exponent() const { return (1 - theta) * K + theta * N - M; }
  /// Exponent of min(i,j)^-1 in the ratio: (1-theta)k + theta n - m (>= 0 when valid).
  rational min_exponent() const { return (1 - theta) * k + theta * n - m; }
};

namespace detail {

inline void require_open_unit(const rational& theta)
{
  if (theta <= 0 || theta >= 1)
    throw invalid_argument("theta must lie in (0,1), got " + to_string(theta));
}

inline void require_level(level_t v, const char* name)
{
  if (v < 0)
    throw invalid_argument(std::string("level ") + name + " must be nonnegative");
}

}  // namespace detail

/// M = N+1, n = 1, theta0 = max((K-M)/(K-N), 1/2) if K > M else 1/2,
/// k the least integer with (1-theta)k + theta >= m, C = 1.
inline interp_params choose_params(level_t N, level_t K, level_t m, const rational& theta)
{
  detail::require_level(N, "N");
  detail::require_level(K, "K");
  detail::require_level(m, "m");
  detail::require_open_unit(theta);
  interp_params p;
  p.N     = N;
  p.K     = K;
  p.m     = m;
  p.M     = N + 1;
  p.n     = 1;
  p.theta = theta;
  const rational half(1, 2);
  p.theta0 = half;
  if (K > p.M) {
    const rational t0 = rational(K - p.M) / rational(K - N);
    if (t0 > half)
      p.theta0 = t0;
  }
  if (theta < p.theta0) {
    std::ostringstream os;
    os << "theta = " << to_string(theta) << " is below theta0 = " << to_string(p.theta0)
       << ": (1-theta)K + theta N = " << to_string((1 - theta) * K + theta * N) << " exceeds M = " << p.M;
    throw invalid_argument(os.str());
  }
  const rational need = (rational(m) - theta * p.n) / (1 - theta);
  const bigint k      = ceil(need);
  p.k                 = k > 0 ? static_cast<level_t>(to_int64(k)) : 0;
  p.C                 = 1;
  return p;
}

/// Checks the parameter invariants; throws invalid_argument on failure.
inline void validate(const interp_params& p)
{
  for (auto [v, name] : {std::pair{p.N, "N"}, {p.M, "M"}, {p.K, "K"}, {p.n, "n"}, {p.m, "m"}, {p.k, "k"}})
    detail::require_level(v, name);
  detail::require_open_unit(p.theta);
  detail::require_open_unit(p.theta0);
  if ((1 - p.theta0) * p.K + p.N * p.theta0 > p.M)
    throw invalid_argument("(1-theta0)K + N theta0 <= M violated");
  if (p.theta < p.theta0)
    throw invalid_argument("theta >= theta0 violated");
  if (p.min_exponent() < 0)
    throw invalid_argument("(1-theta)k + n theta >= m violated");
  if (!(p.C > 0))
    throw invalid_argument("constant C must be positive");
}

struct interp_report {
  interp_params params;
  index_t T = 0;
  double max_ratio = 0;
  index_t arg_i = 1, arg_j = 1;
  double factorization_error = 0;  // max |log ratio - closed-form exponent log| over the grid
  bool pass = false;
};

/// Brute force over 1 <= i, j <= T (by symmetry i <= j) in the log domain.
/// The ratio is computed from the three weights and cross-checked against
/// max^{E1} min^{-E2} pointwise.
inline interp_report verify_estimate(const interp_params& p, index_t T)
{
  validate(p);
  if (T < 1)
    throw invalid_argument("grid bound T must be >= 1");
  std::vector<double> lg(static_cast<std::size_t>(T) + 1, 0.0);
  for (index_t t = 1; t <= T; ++t)
    lg[static_cast<std::size_t>(t)] = std::log(static_cast<double>(t));

  const double th = to_double(p.theta);
  const double e1 = to_double(p.max_exponent());
  const double e2 = to_double(p.min_exponent());
  auto log_a      = [](double lmax, double lmin, level_t N, level_t n) { return N * lmax - n * lmin; };

  interp_report r;
  r.params     = p;
  r.T          = T;
  double best  = -std::numeric_limits<double>::infinity();
  double ferr  = 0;
  for (index_t i = 1; i <= T; ++i) {
    const double li = lg[static_cast<std::size_t>(i)];
    for (index_t j = i; j <= T; ++j) {
      const double lj = lg[static_cast<std::size_t>(j)];
      const double v  = (1 - th) * log_a(lj, li, p.K, p.k) + th * log_a(lj, li, p.N, p.n) - log_a(lj, li, p.M, p.m);
      const double f  = e1 * lj - e2 * li;
      ferr            = std::max(ferr, std::abs(v - f));
      if (v > best) {
        best    = v;
        r.arg_i = i;
        r.arg_j = j;
      }
    }
  }
  r.max_ratio           = std::exp(best);
  r.factorization_error = ferr;
  r.pass                = r.max_ratio <= p.C * (1 + 1e-10);
  return r;
}

struct probe_report {
  level_t N = 0, M = 0, K = 0;
  rational theta;
  rational exponent;  // (1-theta)K + theta N - M
  double slope = 0;
  std::vector<index_t> sizes;
  std::vector<double> log_ratio;
  bool pass = false;  // |slope - exponent| <= 0.05
};

/// Along (i, j) = (1, t) the ratio is t^{(1-theta)K + theta N - M}, whatever
/// the inner levels are: no k or C can repair it when the exponent is positive.
inline probe_report small_theta_probe(level_t N, level_t M, level_t K, const rational& theta,
                                      const std::vector<index_t>& sizes = {16, 64, 256, 1024, 4096, 10000})
{
  detail::require_level(N, "N");
  detail::require_open_unit(theta);
  if (!(K > M && M >= N))
    throw invalid_argument("small-theta probe requires K > M >= N");
  if (theta > rational(K - M) / rational(K - N))
    throw invalid_argument("small-theta probe requires theta <= (K-M)/(K-N)");
  if (sizes.size() < 2)
    throw invalid_argument("probe grid needs at least two sizes");

  probe_report r;
  r.N        = N;
  r.M        = M;
  r.K        = K;
  r.theta    = theta;
  r.exponent = (1 - theta) * K + theta * N - M;
  r.sizes    = sizes;
  const double th = to_double(theta);
  // Inner levels are arbitrary on this ray; fixed values show they are inert.
  const level_t k = 7, n = 1, m = 3;
  for (index_t t : sizes) {
    const double v = (1 - th) * log_weight(weight_kind::A, 1, t, K, k) + th * log_weight(weight_kind::A, 1, t, N, n) -
                     log_weight(weight_kind::A, 1, t, M, m);
    r.log_ratio.push_back(v);
  }
  r.slope = loglog_slope(sizes, r.log_ratio);
  r.pass  = std::abs(r.slope - to_double(r.exponent)) <= 0.05;
  return r;
}

}  // namespace ncs

#endif
