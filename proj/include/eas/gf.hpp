#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eas/util.hpp"

namespace eas::gf {

class Field;

// Element of F_{p^ell}, held as its canonical integer encoding
// enc(x) = sum coeffs[i] * p^i in [0, q-1]. Value type; arithmetic is pure.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Field& f, std::int64_t code);

  std::int64_t code() const { return code_; }
  const Field& field() const;
  bool is_zero() const { return code_ == 0; }
  std::vector<std::int64_t> coeffs() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;
  std::int64_t trace() const;   // Galois trace, as an integer in [0, p)
  int legendre() const;         // quadratic character: 0 / +1 / -1

 private:
  const Field* f_ = nullptr;
  std::uint32_t code_ = 0;
};

// F_q for odd prime power q = p^ell. Construction picks the modulus with the
// smallest integer encoding among monic irreducibles of degree ell, so the
// same (p, ell) always yields the same field tables. Immutable after
// construction; all code-level ops are table lookups, safe for concurrent use.
class Field {
 public:
  Field(std::int64_t p, int ext_degree);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  // Process-wide interned fields; references stay valid for the process
  // lifetime. Throws ValidationError unless q is an odd prime power <= cap.
  static const Field& of(std::int64_t q);
  static const Field& of(std::int64_t p, int ext_degree);

  std::int64_t p() const { return p_; }
  int ext_degree() const { return ell_; }
  std::int64_t q() const { return q_; }
  // Monic modulus, constant term first, length ext_degree()+1. For ell = 1
  // this is the polynomial x.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  FieldElement element(std::int64_t code) const;
  FieldElement zero() const { return FieldElement(*this, 0); }
  FieldElement one() const { return FieldElement(*this, 1); }
  // Prime-subfield embedding of n (mod p).
  FieldElement from_int(std::int64_t n) const;
  // The deterministic primitive generator theta: smallest encoding with
  // multiplicative order q-1.
  FieldElement generator() const { return FieldElement(*this, gen_); }

  // Code-level arithmetic (hot paths; codes must be in [0, q)).
  std::uint32_t add_code(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub_code(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_code(std::uint32_t a) const;
  std::uint32_t mul_code(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_code(std::uint32_t a) const;  // throws on 0
  std::uint32_t pow_code(std::uint32_t a, std::int64_t e) const;
  std::uint32_t exp_code(std::int64_t j) const { return exp_[mod_order(j)]; }
  // exp table without reduction; j must already be in [0, q-1).
  std::uint32_t exp_at(std::int64_t j) const { return exp_[j]; }
  std::int64_t log_code(std::uint32_t a) const;   // discrete log base theta; throws on 0
  std::int64_t trace_code(std::uint32_t a) const { return trace_[a]; }
  int legendre_code(std::uint32_t a) const;

 private:
  std::int64_t mod_order(std::int64_t j) const {
    j %= (q_ - 1);
    return j < 0 ? j + (q_ - 1) : j;
  }

  std::int64_t p_ = 0;
  int ell_ = 0;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> modulus_;
  std::uint32_t gen_ = 0;
  std::vector<std::uint32_t> exp_;    // exp_[j] = enc(theta^j), j in [0, q-1)
  std::vector<std::int64_t> log_;    // inverse of exp_; log_[0] = -1
  std::vector<std::int32_t> trace_;  // Tr(x) in [0, p)
};

std::string modulus_to_string(const std::vector<std::int64_t>& modulus);

}  // namespace eas::gf
