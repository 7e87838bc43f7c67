#ifndef NCS_RATIONAL_HPP
#define NCS_RATIONAL_HPP

// Exact arithmetic helpers shared by the weight evaluator and the envelope
// calculus. Everything here is a thin layer over Boost.Multiprecision.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ncs {

using bigint   = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad index, wrong kind, ...).
class invalid_argument : public error {
public:
  using error::error;
};

class dimension_mismatch : public error {
public:
  using error::error;
};

/// A level exceeded the configured cap.
class level_overflow : public error {
public:
  using error::error;
};

inline rational make_rational(std::int64_t num, std::int64_t den = 1)
{
  if (den == 0)
    throw invalid_argument("rational with zero denominator");
  return rational(bigint(num), bigint(den));
}

inline bigint numerator(const rational& r) { return boost::multiprecision::numerator(r); }
inline bigint denominator(const rational& r) { return boost::multiprecision::denominator(r); }

inline bigint floor(const rational& r)
{
  bigint q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && q * denominator(r) != numerator(r))
    q -= 1;
  return q;
}

inline bigint ceil(const rational& r)
{
  bigint q = numerator(r) / denominator(r);
  if (r > 0 && q * denominator(r) != numerator(r))
    q += 1;
  return q;
}

inline bool is_integer(const rational& r) { return denominator(r) == 1; }

/// r^e for an integer exponent (e may be negative; r must then be nonzero).
inline rational pow(const rational& r, std::int64_t e)
{
  if (e < 0) {
    if (r == 0)
      throw invalid_argument("zero raised to a negative power");
    return pow(rational(1) / r, -e);
  }
  rational result = 1;
  rational base   = r;
  while (e > 0) {
    if (e & 1)
      result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

inline double to_double(const rational& r) { return r.convert_to<double>(); }
inline long double to_long_double(const rational& r) { return r.convert_to<long double>(); }

inline std::int64_t to_int64(const bigint& v)
{
  if (v > bigint(INT64_MAX) || v < bigint(INT64_MIN))
    throw level_overflow("integer does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

/// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const rational& r)
{
  if (is_integer(r))
    return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "7", "-3/4", "0.125", "+2".
inline rational parse_rational(std::string_view text)
{
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
      s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty())
    throw invalid_argument("empty rational literal");

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto parse_digits = [&](std::string_view digits) {
    if (digits.empty())
      throw invalid_argument("malformed rational literal");
    bigint v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9')
        throw invalid_argument("malformed rational literal: '" + std::string(digits) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  };

  rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    bigint den = parse_digits(trim(text.substr(slash + 1)));
    if (den == 0)
      throw invalid_argument("rational with zero denominator");
    value = rational(parse_digits(trim(text.substr(0, slash))), den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac  = text.substr(dot + 1);
    bigint scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k)
      scale *= 10;
    bigint w = whole.empty() ? bigint(0) : parse_digits(whole);
    bigint f = frac.empty() ? bigint(0) : parse_digits(frac);
    value = rational(w * scale + f, scale);
  } else {
    value = rational(parse_digits(text));
  }
  return negative ? rational(-value) : value;
}

}  // namespace ncs

#endif
