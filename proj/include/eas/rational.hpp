#pragma once

#include <cstdint>
#include <string>

#include "eas/util.hpp"

namespace eas {

// 128-bit signed integers cover every quantity this library produces exactly
// (largest in scope ~1e28, vs 1.7e38 capacity); all arithmetic is
// overflow-checked and throws instead of wrapping.
using Int128 = __int128;

std::string int128_to_string(Int128 v);

Int128 checked_add(Int128 a, Int128 b);
Int128 checked_sub(Int128 a, Int128 b);
Int128 checked_mul(Int128 a, Int128 b);
Int128 checked_pow(Int128 base, int exp);

Int128 int128_gcd(Int128 a, Int128 b);

// Nearest integer of a long double (must be finite, |x| < 2^126).
Int128 int128_nearest(long double x);

// Exact rational in lowest terms, positive denominator.
struct Rational {
  Int128 num = 0;
  Int128 den = 1;

  static Rational make(Int128 n, Int128 d);

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

  double to_double() const;
  long double to_long_double() const;
  std::string str() const;  // "num/den" ("0/1" for zero)
};

}  // namespace eas
