#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "eas/gf.hpp"
#include "eas/rational.hpp"

namespace eas::charsums {

using gf::Field;
using gf::FieldElement;

// Absolute tolerance for character sums, scaled with the term count.
inline double tol_sum(std::int64_t q) { return 1e-9 * static_cast<double>(q - 1); }

// Additive character chi(x) = e^{2 pi i Tr(x) / p}.
std::complex<double> chi(const FieldElement& x);
// chi composed with the Galois automorphism xi -> xi^c of Q[xi_p]:
// x -> e^{2 pi i c Tr(x) / p}.
std::complex<double> chi_scaled(std::int64_t c, const FieldElement& x);

// epsilon(q): 1 for q = 1 mod 4, i for q = 3 mod 4.
std::complex<double> gauss_epsilon(std::int64_t q);

// G(1)/sqrt(q) by Davenport-Hasse: (-1)^{ell-1} epsilon(p)^ell for
// q = p^ell. Equals epsilon(q) when q is prime (and its even powers always
// match epsilon(q)'s), but differs by a sign for prime powers like 25 or 27.
std::complex<double> gauss_sign(const Field& field);

// G(s) = sum_y chi(s y^2). Verified internally against the closed form
// legendre(s) * gauss_sign * sqrt(q); throws ResidualError on disagreement
// and ValidationError for s = 0 (the sum degenerates to q).
std::complex<double> gauss_sum(const FieldElement& s);

enum class Realness { kReal, kPurelyImaginary };

// A (twisted) Kloosterman sum together with the parity data that determines
// which component must vanish.
struct KloostermanValue {
  std::complex<double> value;
  bool d_even = true;
  int q_mod_4 = 1;
  Realness realness = Realness::kReal;

  double real_part() const { return value.real(); }
};

// K(a,b) = sum_{x != 0} chi(a x + b / x); direct (q-1)-term evaluation.
KloostermanValue kloosterman(const FieldElement& a, const FieldElement& b);

// K~_d(a,b) = sum_{x != 0} legendre(x)^d chi(a x + b / x); d >= 2. Direct
// evaluation; depends on d only through its parity.
KloostermanValue twisted_kloosterman(int d, const FieldElement& a, const FieldElement& b);

struct KloostermanAngle {
  std::int64_t a_code = 0;
  double theta = 0.0;  // in [0, pi]
};

// arccos(K / (2 sqrt q)) with clamping; |K|/(2 sqrt q) > 1 + tol is treated
// as an arithmetic bug (would falsify the Weil bound) and throws.
double angle_from_value(double k_value, std::int64_t q);
KloostermanAngle kloosterman_angle(const FieldElement& a);

// Kloosterman moments M_{q,l} = sum_{a != 0} K(1,a)^l for l = 1..max_ell.
// The sums are rational integers; entries carry the rounded integer, the raw
// long double, and the rounding residual.
struct MomentTable {
  std::int64_t q = 0;
  int max_ell = 0;
  std::vector<Int128> nearest;
  std::vector<long double> raw;
  std::vector<double> residual;

  Int128 value(int ell) const;  // 1-based ell
};

MomentTable moments(const Field& field, int max_ell);

// Checks psi_c(K~_d(a,b)) = K~_d(ca, cb) for c in Z_p^*: recomputes the sum
// with the scaled character and compares within tol_sum.
bool galois_action_check(std::int64_t c, int d, const FieldElement& a, const FieldElement& b);

// Memoized per-field vectors of K(1,b) (plain) and K~_odd(1,b) (twisted),
// indexed by enc(b) with b = 0 included at slot 0. Computed once per field,
// thread-safe to read afterwards; every entry is Weil-bound checked.
const std::vector<double>& k1_values(const Field& field);
const std::vector<long double>& k1_values_ld(const Field& field);
const std::vector<std::complex<double>>& k1_twisted_values(const Field& field);

// O(1) evaluation of K~_d(a,b) from the cached K(1,.) vectors via the
// symmetry and scaling identities.
std::complex<double> twisted_lookup(const Field& field, int d, std::int64_t a_code,
                                    std::int64_t b_code);

}  // namespace eas::charsums
