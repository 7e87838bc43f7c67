#ifndef NCS_SCALAR_HPP
#define NCS_SCALAR_HPP

#include "ncs/rational.hpp"

#include <cmath>
#include <complex>

namespace ncs {

using complex = std::complex<double>;

// Scalar field hooks. The library runs over std::complex<double> by default
// and over `rational` where exact algebra is wanted (real entries only).

inline complex conj_of(const complex& z) { return std::conj(z); }
inline double conj_of(double x) { return x; }
inline rational conj_of(const rational& r) { return r; }

inline double magnitude(const complex& z) { return std::abs(z); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const rational& r) { return std::abs(to_double(r)); }

inline bool is_zero(const complex& z) { return z == complex{}; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const rational& r) { return r == 0; }

}  // namespace ncs

#endif
