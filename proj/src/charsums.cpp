#include "eas/charsums.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace eas::charsums {

namespace {

constexpr std::int64_t kKahanThreshold = 10'000;

// Unit roots e^{2 pi i k / p} for k in [0, p), in long double; memoized per
// characteristic (they are shared by every sum over fields of that p).
const std::vector<std::complex<long double>>& unit_roots(std::int64_t p) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<std::vector<std::complex<long double>>>> table;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = table[p];
  if (!slot) {
    slot = std::make_unique<std::vector<std::complex<long double>>>(
        static_cast<std::size_t>(p));
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (std::int64_t k = 0; k < p; ++k) {
      const long double a =
          two_pi * static_cast<long double>(k) / static_cast<long double>(p);
      (*slot)[k] = {std::cos(a), std::sin(a)};
    }
  }
  return *slot;
}

struct K1Cache {
  std::vector<double> plain;
  std::vector<long double> plain_ld;
  std::vector<std::complex<double>> twisted;
  bool twisted_built = false;
};

// Direct sum over x != 0 of legendre(x)^d chi(c(ax + b/x)). The workhorse
// behind the public kloosterman/twisted/galois entry points; O(q). Indices
// into the exp table advance incrementally (no modulo in the hot loop).
std::complex<long double> raw_sum(const Field& f, bool twist_odd, std::int64_t c,
                                  std::uint32_t a, std::uint32_t b) {
  const std::int64_t q = f.q();
  const std::int64_t p = f.p();
  const auto& w = unit_roots(p);
  const std::int64_t la = a == 0 ? -1 : f.log_code(a);
  const std::int64_t lb = b == 0 ? -1 : f.log_code(b);
  const bool kahan = q - 1 > kKahanThreshold;
  const bool plain_char = c % p == 1;
  KahanAccumulator re, im;
  long double sre = 0.0L, sim = 0.0L;
  std::int64_t ia = la;           // (la + lx) mod (q-1)
  std::int64_t ib = lb;           // (lb - lx) mod (q-1)
  for (std::int64_t lx = 0; lx < q - 1; ++lx) {
    std::int64_t t = 0;
    if (la >= 0) {
      t += f.trace_code(f.exp_at(ia));
      if (++ia == q - 1) ia = 0;
    }
    if (lb >= 0) {
      t += f.trace_code(f.exp_at(ib));
      if (--ib < 0) ib = q - 2;
    }
    if (plain_char) {
      if (t >= p) t -= p;
    } else {
      t = t * c % p;
    }
    const auto& u = w[static_cast<std::size_t>(t)];
    const long double sign = (twist_odd && (lx & 1)) ? -1.0L : 1.0L;
    if (kahan) {
      re.add(sign * u.real());
      im.add(sign * u.imag());
    } else {
      sre += sign * u.real();
      sim += sign * u.imag();
    }
  }
  if (kahan) return {re.sum, im.sum};
  return {sre, sim};
}

Realness classify(bool d_even, int q_mod_4) {
  if (!d_even && q_mod_4 == 3) return Realness::kPurelyImaginary;
  return Realness::kReal;
}

void check_realness(const std::complex<double>& v, Realness r, std::int64_t q,
                    const char* what) {
  const double bad = r == Realness::kReal ? std::fabs(v.imag()) : std::fabs(v.real());
  if (bad > tol_sum(q))
    throw ResidualError(std::string(what) + ": realness classification violated");
}

KloostermanValue make_value(const Field& f, bool d_even, std::complex<double> v) {
  KloostermanValue out;
  out.value = v;
  out.d_even = d_even;
  out.q_mod_4 = static_cast<int>(f.q() % 4);
  out.realness = classify(d_even, out.q_mod_4);
  check_realness(out.value, out.realness, f.q(), "kloosterman sum");
  return out;
}

const K1Cache& cache_for(const Field& f, bool need_twisted) {
  static std::mutex mu;
  static std::map<std::int64_t, std::unique_ptr<K1Cache>> caches;

  std::unique_lock<std::mutex> lock(mu);
  auto& slot = caches[f.q()];
  if (!slot) slot = std::make_unique<K1Cache>();
  K1Cache& c = *slot;

  if (c.plain.empty()) {
    const std::int64_t q = f.q();
    c.plain.assign(static_cast<std::size_t>(q), 0.0);
    c.plain_ld.assign(static_cast<std::size_t>(q), 0.0L);
    const double weil = 2.0 * std::sqrt(static_cast<double>(q)) + tol_sum(q);
    parallel_for(q, [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t b = begin; b < end; ++b) {
        const auto v = raw_sum(f, false, 1, 1, static_cast<std::uint32_t>(b));
        if (std::fabs(static_cast<double>(v.imag())) > tol_sum(q))
          throw ResidualError("K(1,b) has a nonreal residue");
        c.plain_ld[b] = v.real();
        c.plain[b] = static_cast<double>(v.real());
        if (b != 0 && std::fabs(c.plain[b]) > weil)
          throw ResidualError("Weil bound violated by K(1,b): arithmetic bug");
      }
    });
  }
  if (need_twisted && !c.twisted_built) {
    const std::int64_t q = f.q();
    c.twisted.assign(static_cast<std::size_t>(q), {0.0, 0.0});
    parallel_for(q, [&](std::int64_t begin, std::int64_t end) {
      for (std::int64_t b = begin; b < end; ++b) {
        const auto v = raw_sum(f, true, 1, 1, static_cast<std::uint32_t>(b));
        c.twisted[b] = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
        check_realness(c.twisted[b], classify(false, static_cast<int>(q % 4)), q,
                       "twisted K(1,b)");
      }
    });
    c.twisted_built = true;
  }
  return c;
}

}  // namespace

std::complex<double> chi(const FieldElement& x) { return chi_scaled(1, x); }

std::complex<double> chi_scaled(std::int64_t c, const FieldElement& x) {
  const std::int64_t p = x.field().p();
  const std::int64_t t = ((x.trace() * c) % p + p) % p;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p);
  return {std::cos(a), std::sin(a)};
}

std::complex<double> gauss_epsilon(std::int64_t q) {
  return q % 4 == 1 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 1.0};
}

std::complex<double> gauss_sign(const Field& field) {
  std::complex<double> r{1.0, 0.0};
  const std::complex<double> ep = gauss_epsilon(field.p());
  for (int i = 0; i < field.ext_degree(); ++i) r *= ep;
  return field.ext_degree() % 2 == 0 ? -r : r;
}

std::complex<double> gauss_sum(const FieldElement& s) {
  if (s.is_zero()) throw ValidationError("gauss_sum: s = 0 degenerates to q");
  const Field& f = s.field();
  const std::int64_t q = f.q();
  const bool kahan = q > kKahanThreshold;
  KahanAccumulator kre, kim;
  double sre = 0.0, sim = 0.0;
  for (std::int64_t y = 0; y < q; ++y) {
    const auto ycode = static_cast<std::uint32_t>(y);
    const auto term =
        chi(f.element(f.mul_code(s.field().mul_code(ycode, ycode), static_cast<std::uint32_t>(s.code()))));
    if (kahan) {
      kre.add(term.real());
      kim.add(term.imag());
    } else {
      sre += term.real();
      sim += term.imag();
    }
  }
  const std::complex<double> value =
      kahan ? std::complex<double>{static_cast<double>(kre.sum), static_cast<double>(kim.sum)}
            : std::complex<double>{sre, sim};
  const std::complex<double> closed =
      static_cast<double>(s.legendre()) * gauss_sign(f) * std::sqrt(static_cast<double>(q));
  if (std::abs(value - closed) > tol_sum(q) + 1e-12)
    throw ResidualError("Gauss sum disagrees with the closed form: arithmetic bug");
  return value;
}

KloostermanValue kloosterman(const FieldElement& a, const FieldElement& b) {
  const Field& f = a.field();
  const auto v = raw_sum(f, false, 1, static_cast<std::uint32_t>(a.code()),
                         static_cast<std::uint32_t>(b.code()));
  return make_value(f, true,
                    {static_cast<double>(v.real()), static_cast<double>(v.imag())});
}

KloostermanValue twisted_kloosterman(int d, const FieldElement& a, const FieldElement& b) {
  if (d < 2) throw ValidationError("twisted_kloosterman: d >= 2 required");
  const Field& f = a.field();
  const bool d_even = d % 2 == 0;
  const auto v = raw_sum(f, !d_even, 1, static_cast<std::uint32_t>(a.code()),
                         static_cast<std::uint32_t>(b.code()));
  return make_value(f, d_even,
                    {static_cast<double>(v.real()), static_cast<double>(v.imag())});
}

double angle_from_value(double k_value, std::int64_t q) {
  const double half = k_value / (2.0 * std::sqrt(static_cast<double>(q)));
  if (std::fabs(half) > 1.0 + tol_sum(q))
    throw ResidualError("|K|/(2 sqrt q) > 1: Weil bound falsified, arithmetic bug");
  const double clamped = std::fmin(1.0, std::fmax(-1.0, half));
  return std::acos(clamped);
}

KloostermanAngle kloosterman_angle(const FieldElement& a) {
  if (a.is_zero()) throw ValidationError("kloosterman_angle: a must be nonzero");
  const double k = k1_values(a.field())[static_cast<std::size_t>(a.code())];
  return KloostermanAngle{a.code(), angle_from_value(k, a.field().q())};
}

Int128 MomentTable::value(int ell) const {
  if (ell < 1 || ell > max_ell) throw ValidationError("moment index out of range");
  return nearest[static_cast<std::size_t>(ell - 1)];
}

MomentTable moments(const Field& field, int max_ell) {
  if (max_ell < 1) throw ValidationError("moments: max_ell >= 1 required");
  const std::int64_t q = field.q();
  const auto& k1 = k1_values_ld(field);

  std::vector<KahanAccumulator> acc(static_cast<std::size_t>(max_ell));
  for (std::int64_t a = 1; a < q; ++a) {
    long double pw = 1.0L;
    for (int ell = 1; ell <= max_ell; ++ell) {
      pw *= k1[static_cast<std::size_t>(a)];
      acc[ell - 1].add(pw);
    }
  }

  MomentTable t;
  t.q = q;
  t.max_ell = max_ell;
  for (int ell = 1; ell <= max_ell; ++ell) {
    const long double raw = acc[ell - 1].sum;
    const Int128 nearest = int128_nearest(raw);
    const double residual =
        std::fabs(static_cast<double>(raw - static_cast<long double>(nearest)));
    const double margin =
        1e-3 * std::pow(static_cast<double>(q), static_cast<double>(ell) / 2.0);
    if (!(residual < margin))
      throw ResidualError("Kloosterman moment failed the integrality margin");
    t.raw.push_back(raw);
    t.nearest.push_back(nearest);
    t.residual.push_back(residual);
  }
  return t;
}

bool galois_action_check(std::int64_t c, int d, const FieldElement& a, const FieldElement& b) {
  const Field& f = a.field();
  const std::int64_t p = f.p();
  c = (c % p + p) % p;
  if (c == 0) throw ValidationError("galois_action_check: c must be a unit of Z_p");
  const bool twist_odd = d % 2 != 0;
  const auto lhs = raw_sum(f, twist_odd, c, static_cast<std::uint32_t>(a.code()),
                           static_cast<std::uint32_t>(b.code()));
  const FieldElement cf = f.from_int(c);
  const auto rhs = twisted_kloosterman(d, cf * a, cf * b).value;
  const std::complex<double> l{static_cast<double>(lhs.real()), static_cast<double>(lhs.imag())};
  return std::abs(l - rhs) <= tol_sum(f.q());
}

const std::vector<double>& k1_values(const Field& field) {
  return cache_for(field, false).plain;
}

const std::vector<long double>& k1_values_ld(const Field& field) {
  return cache_for(field, false).plain_ld;
}

const std::vector<std::complex<double>>& k1_twisted_values(const Field& field) {
  return cache_for(field, true).twisted;
}

std::complex<double> twisted_lookup(const Field& field, int d, std::int64_t a_code,
                                    std::int64_t b_code) {
  if (d < 2) throw ValidationError("twisted_lookup: d >= 2 required");
  const bool d_even = d % 2 == 0;
  const std::int64_t q = field.q();

  if (a_code == 0 && b_code == 0) {
    // K~_d(0,0) = (q-1) for even d, 0 for odd d.
    return {d_even ? static_cast<double>(q - 1) : 0.0, 0.0};
  }
  // By symmetry K~(0,b) = K~(b,0), so reduce to a nonzero first argument.
  if (a_code == 0) std::swap(a_code, b_code);

  const auto ua = static_cast<std::uint32_t>(a_code);
  const std::int64_t ab = field.mul_code(ua, static_cast<std::uint32_t>(b_code));
  const int sign = d_even ? 1 : field.legendre_code(ua);
  if (d_even) {
    const double v = k1_values(field)[static_cast<std::size_t>(ab)];
    return {v * sign, 0.0};
  }
  const auto v = k1_twisted_values(field)[static_cast<std::size_t>(ab)];
  return {v.real() * sign, v.imag() * sign};
}

}  // namespace eas::charsums
