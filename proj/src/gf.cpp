#include "eas/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <memory>

namespace eas::gf {

namespace {

// Dense coefficient vectors over Z_p, constant term first. Leading zeros are
// allowed; deg() ignores them.
using Poly = std::vector<std::int64_t>;

int deg(const Poly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

void trim(Poly& f) { f.resize(static_cast<std::size_t>(deg(f) + 1)); }

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (deg(a) < 0 || deg(b) < 0) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

// Remainder of a by monic m.
Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  const int dm = deg(m);
  for (int i = deg(a); i >= dm; --i) {
    const std::int64_t c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) {
      a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
    }
  }
  trim(a);
  return a;
}

Poly poly_pow_mod(Poly base, std::int64_t e, const Poly& m, std::int64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), m, p);
    base = poly_mod(poly_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  auto make_monic = [p](Poly& f) {
    const int d = deg(f);
    if (d < 0) return;
    std::int64_t lead = f[d] % p;
    // inverse of lead mod p by Fermat
    std::int64_t inv = 1, base = lead, e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (auto& c : f) c = c * inv % p;
  };
  trim(a);
  trim(b);
  while (deg(b) >= 0) {
    make_monic(b);
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

// f monic of degree ell is irreducible over Z_p iff it shares no factor with
// x^{p^k} - x for any k <= ell/2 (that product collects all irreducibles of
// degree dividing k).
bool is_irreducible(const Poly& f, std::int64_t p) {
  const int ell = deg(f);
  if (ell < 1) return false;
  Poly x{0, 1};
  Poly frob = x;  // x^{p^k} mod f, starting at k=0
  for (int k = 1; k <= ell / 2; ++k) {
    frob = poly_pow_mod(frob, p, f, p);
    Poly diff = frob;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    trim(diff);
    const Poly g = poly_gcd(f, diff, p);
    if (deg(g) != 0) return false;
  }
  return true;
}

std::vector<std::int64_t> decode_base_p(std::int64_t code, std::int64_t p, int len) {
  std::vector<std::int64_t> digits(len);
  for (int i = 0; i < len; ++i) {
    digits[i] = code % p;
    code /= p;
  }
  return digits;
}

std::int64_t encode_base_p(const std::vector<std::int64_t>& digits, std::int64_t p, int len) {
  std::int64_t code = 0;
  for (int i = len - 1; i >= 0; --i) code = code * p + digits[i];
  return code;
}

}  // namespace

Field::Field(std::int64_t p, int ext_degree) : p_(p), ell_(ext_degree) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw ValidationError("field characteristic must be an odd prime, got " + std::to_string(p));
  if (ext_degree < 1) throw ValidationError("extension degree must be >= 1");
  q_ = 1;
  for (int i = 0; i < ell_; ++i) {
    q_ *= p_;
    if (q_ > kMaxFieldOrder)
      throw ValidationError("field order p^ell exceeds the configured cap 2^20");
  }

  // Modulus: the monic irreducible of degree ell with the smallest integer
  // encoding of its lower coefficient vector.
  if (ell_ == 1) {
    modulus_ = {0, 1};  // x: plain Z_p arithmetic
  } else {
    for (std::int64_t c = 0;; ++c) {
      if (c >= q_) throw ResidualError("no irreducible polynomial found (impossible)");
      Poly f = decode_base_p(c, p_, ell_);
      f.push_back(1);
      if (is_irreducible(f, p_)) {
        modulus_ = f;
        break;
      }
    }
  }

  // Polynomial-level arithmetic used only to bootstrap the tables.
  auto mul_poly_codes = [this](std::int64_t a, std::int64_t b) -> std::int64_t {
    if (ell_ == 1) return a * b % p_;
    const Poly pa = decode_base_p(a, p_, ell_);
    const Poly pb = decode_base_p(b, p_, ell_);
    Poly r = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
    r.resize(ell_, 0);
    return encode_base_p(r, p_, ell_);
  };
  auto pow_poly_codes = [&](std::int64_t a, std::int64_t e) -> std::int64_t {
    std::int64_t r = 1;
    while (e > 0) {
      if (e & 1) r = mul_poly_codes(r, a);
      a = mul_poly_codes(a, a);
      e >>= 1;
    }
    return r;
  };

  // Primitive generator: smallest encoding of multiplicative order q-1.
  const auto factors = distinct_prime_factors(q_ - 1);
  gen_ = 0;
  for (std::int64_t cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (const std::int64_t r : factors) {
      if (pow_poly_codes(cand, (q_ - 1) / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen_ = static_cast<std::uint32_t>(cand);
      break;
    }
  }
  if (gen_ == 0) throw ResidualError("no primitive generator found (impossible)");

  // Discrete exp/log tables over the generator.
  exp_.assign(static_cast<std::size_t>(q_ - 1), 0);
  log_.assign(static_cast<std::size_t>(q_), -1);
  std::int64_t cur = 1;
  for (std::int64_t j = 0; j < q_ - 1; ++j) {
    exp_[j] = static_cast<std::uint32_t>(cur);
    if (log_[cur] != -1) throw ResidualError("generator order defect while building tables");
    log_[cur] = j;
    cur = mul_poly_codes(cur, gen_);
  }
  if (cur != 1) throw ResidualError("generator does not have order q-1");

  // Galois trace table: Tr(x) = sum_k x^{p^k}; lands in the prime subfield.
  trace_.assign(static_cast<std::size_t>(q_), 0);
  if (ell_ == 1) {
    for (std::int64_t x = 0; x < q_; ++x) trace_[x] = static_cast<std::int32_t>(x);
  } else {
    for (std::int64_t x = 1; x < q_; ++x) {
      const std::int64_t lx = log_[x];
      std::uint32_t acc = 0;
      std::int64_t pk = 1;
      for (int k = 0; k < ell_; ++k) {
        acc = add_code(acc, exp_[mod_order(lx * pk)]);
        pk *= p_;
      }
      if (acc >= static_cast<std::uint32_t>(p_))
        throw ResidualError("trace left the prime subfield (table bug)");
      trace_[x] = static_cast<std::int32_t>(acc);
    }
  }
}

const Field& Field::of(std::int64_t q) {
  const auto pp = factor_prime_power(q);
  if (!pp) throw ValidationError(std::to_string(q) + " is not a prime power");
  return of(pp->p, pp->ell);
}

const Field& Field::of(std::int64_t p, int ext_degree) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::unique_ptr<Field>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{p, ext_degree}];
  if (!slot) slot = std::make_unique<Field>(p, ext_degree);
  return *slot;
}

FieldElement Field::element(std::int64_t code) const {
  if (code < 0 || code >= q_)
    throw ValidationError("element code " + std::to_string(code) + " outside [0, q)");
  return FieldElement(*this, code);
}

FieldElement Field::from_int(std::int64_t n) const {
  return FieldElement(*this, ((n % p_) + p_) % p_);
}

std::uint32_t Field::add_code(std::uint32_t a, std::uint32_t b) const {
  if (ell_ == 1) {
    const std::uint32_t s = a + b;
    return s >= static_cast<std::uint32_t>(p_) ? s - static_cast<std::uint32_t>(p_) : s;
  }
  std::uint32_t out = 0;
  std::uint32_t mult = 1;
  const auto up = static_cast<std::uint32_t>(p_);
  while (a != 0 || b != 0) {
    const std::uint32_t da = a % up;
    const std::uint32_t db = b % up;
    std::uint32_t ds = da + db;
    if (ds >= up) ds -= up;
    out += ds * mult;
    mult *= up;
    a /= up;
    b /= up;
  }
  return out;
}

std::uint32_t Field::neg_code(std::uint32_t a) const {
  if (ell_ == 1) return a == 0 ? 0 : static_cast<std::uint32_t>(p_) - a;
  std::uint32_t out = 0;
  std::uint32_t mult = 1;
  const auto up = static_cast<std::uint32_t>(p_);
  while (a != 0) {
    const std::uint32_t da = a % up;
    out += (da == 0 ? 0 : up - da) * mult;
    mult *= up;
    a /= up;
  }
  return out;
}

std::uint32_t Field::sub_code(std::uint32_t a, std::uint32_t b) const {
  return add_code(a, neg_code(b));
}

std::uint32_t Field::mul_code(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[mod_order(log_[a] + log_[b])];
}

std::uint32_t Field::inv_code(std::uint32_t a) const {
  if (a == 0) throw ValidationError("inverse of zero");
  return exp_[mod_order(-(log_[a]))];
}

std::uint32_t Field::pow_code(std::uint32_t a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw ValidationError("negative power of zero");
    return e == 0 ? 1u : 0u;
  }
  return exp_[mod_order(log_[a] % (q_ - 1) * (e % (q_ - 1)))];
}

std::int64_t Field::log_code(std::uint32_t a) const {
  if (a == 0) throw ValidationError("discrete log of zero");
  return log_[a];
}

int Field::legendre_code(std::uint32_t a) const {
  if (a == 0) return 0;
  return (log_[a] & 1) == 0 ? 1 : -1;
}

FieldElement::FieldElement(const Field& f, std::int64_t code)
    : f_(&f), code_(static_cast<std::uint32_t>(code)) {}

const Field& FieldElement::field() const {
  if (f_ == nullptr) throw ValidationError("default-constructed field element used");
  return *f_;
}

std::vector<std::int64_t> FieldElement::coeffs() const {
  return decode_base_p(code_, field().p(), field().ext_degree());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return FieldElement(field(), field().add_code(code_, o.code_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  return FieldElement(field(), field().sub_code(code_, o.code_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  return FieldElement(field(), field().mul_code(code_, o.code_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  return FieldElement(field(), field().mul_code(code_, field().inv_code(o.code_)));
}

FieldElement FieldElement::operator-() const {
  return FieldElement(field(), field().neg_code(code_));
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (f_ != o.f_ && (f_ == nullptr || o.f_ == nullptr || f_->q() != o.f_->q()))
    throw ValidationError("comparing elements of different fields");
  return code_ == o.code_;
}

FieldElement FieldElement::inv() const {
  return FieldElement(field(), field().inv_code(code_));
}

FieldElement FieldElement::pow(std::int64_t e) const {
  return FieldElement(field(), field().pow_code(code_, e));
}

std::int64_t FieldElement::trace() const { return field().trace_code(code_); }

int FieldElement::legendre() const { return field().legendre_code(code_); }

std::string modulus_to_string(const std::vector<std::int64_t>& modulus) {
  std::string out;
  for (int i = static_cast<int>(modulus.size()) - 1; i >= 0; --i) {
    if (modulus[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += std::to_string(modulus[i]);
    } else {
      if (modulus[i] != 1) out += std::to_string(modulus[i]) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace eas::gf
