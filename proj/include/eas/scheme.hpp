#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eas/charsums.hpp"
#include "eas/gf.hpp"
#include "eas/linalg.hpp"

namespace eas::scheme {

using gf::Field;
using gf::FieldElement;

// Tolerance for matrix identity residuals (entries scale like q^{d/2} sqrt q
// and sums run over |Delta| terms).
double tol_mat(std::int64_t q, int d);

// Element of the distance set Delta: the formal zero (x == y) or a field
// value Q(x - y). Field(0) is a genuine distance only when isotropic vectors
// exist (d >= 3, or d = 2 with q = 1 mod 4).
class Distance {
 public:
  static Distance formal_zero() { return Distance(-1); }
  static Distance field_value(std::int64_t code) {
    if (code < 0) throw ValidationError("negative field code");
    return Distance(code);
  }

  bool is_formal_zero() const { return code_ < 0; }
  std::int64_t code() const {
    if (code_ < 0) throw ValidationError("formal zero has no field code");
    return code_;
  }

  bool operator==(const Distance& o) const { return code_ == o.code_; }
  bool operator!=(const Distance& o) const { return code_ != o.code_; }

  // Serialization token: "zbar" for the formal zero, decimal enc otherwise.
  std::string label() const { return code_ < 0 ? "zbar" : std::to_string(code_); }
  static Distance parse(const std::string& token);

 private:
  explicit Distance(std::int64_t code) : code_(code) {}
  std::int64_t code_;
};

// d(x, y) for vectors given as code arrays.
Distance distance(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                  const Field& field);

// Delta in the canonical order zbar, then 0 if present, then theta^0,
// theta^1, ..., theta^{q-2}; carries s with 4 = theta^s.
class DistanceSet {
 public:
  static DistanceSet make(const Field& field, int d);

  std::size_t size() const { return ordered_.size(); }
  const Distance& at(std::size_t i) const { return ordered_[i]; }
  const std::vector<Distance>& ordered() const { return ordered_; }
  bool contains_zero() const { return has_zero_; }
  int s_exponent() const { return s_; }

  int index_of(const Distance& t) const;  // throws if t not in Delta

 private:
  std::vector<Distance> ordered_;
  std::vector<std::int32_t> index_by_code_;
  bool has_zero_ = false;
  int s_ = 0;
};

// |S_t| by the closed form q^{d-1} - [t=0] + q^{d/2-1} eps(q)^d K~_d(-t, 0);
// |S_zbar| = 1.
std::int64_t sphere_size(const Distance& t, const Field& field, int d);
// Enumeration oracle; requires q^d <= 10^6.
std::int64_t sphere_size_bruteforce(const Distance& t, const Field& field, int d);

// lambda_{m,t,d} for any m in the weight class k = Q(m) (k = zbar means
// m = 0); the eigenvalue of the distance-t adjacency operator on W_k.
// lambda_{k, zbar, d} = 1 by the identity-operator convention.
double eigenvalue(const Distance& k, const Distance& t, const Field& field, int d);

// The d >= 3 block decomposition of P: scalars alpha, beta, the alternating
// sphere-size row eta, the sign column mu, and the (q-1)x(q-1) core block
// (circulant for even d, signed-circulant for odd d).
struct SchemeBlocks {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<std::int64_t> eta;
  std::vector<int> mu;
  Matrix ktilde;
};

// The q^d x q^d projector onto the weight space W_i is never materialized:
// its coefficients on the geometric basis {A_j} are exactly column i of
// Q / q^d, which this struct already carries.
struct SchemeMatrices {
  DistanceSet delta;
  std::vector<std::int64_t> sphere_sizes;  // diagonal of D, Delta order
  Matrix P;
  Matrix Q;
  std::vector<std::int64_t> weight_dims;  // dim W_k, Delta order
  bool has_blocks = false;
  SchemeBlocks blocks;

  double pq_residual() const;           // max |PQ - q^d I|
  double p_squared_residual() const;    // d = 2 only: max |P^2 - q^2 I|
  std::int64_t q_order = 0;
  int dim = 0;
};

// Assembles P from the eigenvalue formula, D from sphere sizes, and
// Q = D^{-1} P^T D. For d >= 3 the block decomposition is also built and
// validated entry-by-entry against the direct formula (throws on mismatch).
SchemeMatrices scheme_matrices(const Field& field, int d);

// dim W_k for every k in Delta order; always sums to q^d.
std::vector<std::int64_t> weight_dims(const Field& field, int d);

// |sum_t |S_t| P_{t,i} P_{t,j} - q^d |S_i| delta_{i,j}| for Delta indices.
double orthogonality_residual(const SchemeMatrices& m, int i, int j);

// Inner distribution of a point set: a_j = #{pairs at distance j} / |Y|.
std::vector<double> inner_distribution(const std::vector<std::vector<std::uint32_t>>& points,
                                       const Field& field, int d);

struct DelsarteReport {
  std::vector<double> a_q;  // the row vector a Q
  double min_entry = 0.0;
  bool pass = false;
};

// Delsarte's linear programming condition a Q >= 0 (entrywise, within
// tol_mat). Holds for every subset of the scheme; a failure flags a bug.
DelsarteReport delsarte_check(const std::vector<std::vector<std::uint32_t>>& points,
                              const SchemeMatrices& m, const Field& field);

}  // namespace eas::scheme
