#include "eas/rational.hpp"

#include <cmath>

namespace eas {

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw ResidualError("128-bit integer overflow in add");
  return r;
}

Int128 checked_sub(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ResidualError("128-bit integer overflow in sub");
  return r;
}

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResidualError("128-bit integer overflow in mul");
  return r;
}

Int128 checked_pow(Int128 base, int exp) {
  if (exp < 0) throw ValidationError("checked_pow: negative exponent");
  Int128 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

Int128 int128_gcd(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int128 int128_nearest(long double x) {
  if (!std::isfinite(static_cast<double>(x))) throw ResidualError("int128_nearest: non-finite input");
  const bool neg = x < 0.0L;
  long double a = std::fabs(x) + 0.5L;
  if (a >= 0x1p126L) throw ResidualError("int128_nearest: magnitude too large");
  a = std::floor(a);
  constexpr long double kTwo64 = 18446744073709551616.0L;
  const long double hi = std::floor(a / kTwo64);
  const long double lo = a - hi * kTwo64;
  Int128 r = static_cast<Int128>(static_cast<std::uint64_t>(hi));
  r <<= 64;
  r += static_cast<Int128>(static_cast<std::uint64_t>(lo));
  return neg ? -r : r;
}

Rational Rational::make(Int128 n, Int128 d) {
  if (d == 0) throw ValidationError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const Int128 g = int128_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational{n, d};
}

Rational Rational::operator+(const Rational& o) const {
  return make(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
              checked_mul(den, o.den));
}

Rational Rational::operator-(const Rational& o) const {
  return make(checked_sub(checked_mul(num, o.den), checked_mul(o.num, den)),
              checked_mul(den, o.den));
}

Rational Rational::operator*(const Rational& o) const {
  return make(checked_mul(num, o.num), checked_mul(den, o.den));
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

long double Rational::to_long_double() const {
  return static_cast<long double>(num) / static_cast<long double>(den);
}

std::string Rational::str() const {
  return int128_to_string(num) + "/" + int128_to_string(den);
}

}  // namespace eas
