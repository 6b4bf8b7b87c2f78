#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

namespace knotrec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

/// Least non-negative residue of a modulo m (m > 0).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Inverse of a modulo m, if gcd(a, m) = 1. For m = 1 the inverse is 0.
inline std::optional<std::int64_t> mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, m);
}

/// Fractional part in [0, 1).
inline Rational frac_part(const Rational& x) {
  std::int64_t n = x.numerator(), d = x.denominator();
  return Rational(mod(n, d), d);
}

inline bool is_integer(const Rational& x) { return x.denominator() == 1; }

inline std::string to_string(const Rational& x) {
  if (x.denominator() == 1) return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

}  // namespace knotrec
