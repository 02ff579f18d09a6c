#include "eas/scheme.hpp"

#include <cmath>
#include <complex>

namespace eas::scheme {

namespace {

// Weight classes live on the same index set as distances; the projector onto
// W_i is never materialized (its coefficients on the geometric basis are
// column i of Q / q^d).

// d-th power of G(1)/sqrt(q). The Gauss sign equals epsilon(q) for prime q
// and for every even d, but carries the Davenport-Hasse correction for odd
// powers of odd prime powers like 25 or 27; the eigenvalue formula inserts
// G(s)^d, so the exact sign matters here.
std::complex<double> epsilon_pow(const Field& field, int d) {
  const std::complex<double> e = charsums::gauss_sign(field);
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < d; ++i) r *= e;
  return r;
}

double real_checked(std::complex<double> v, std::int64_t q, int d, const char* what) {
  const double scale = std::pow(static_cast<double>(q), d / 2.0 - 1.0);
  if (std::fabs(v.imag()) > charsums::tol_sum(q) * std::max(1.0, scale) + 1e-9)
    throw ResidualError(std::string(what) + ": nonreal residue above tolerance");
  return v.real();
}

void check_dimension(int d) {
  constexpr int kMaxDim = 4;  // desk-scale default; q^d enumeration guard
  if (d < 2 || d > kMaxDim)
    throw ValidationError("dimension d must be in [2, 4], got " + std::to_string(d));
}

}  // namespace

double tol_mat(std::int64_t q, int d) {
  return 1e-6 * std::pow(static_cast<double>(q), static_cast<double>(d));
}

Distance Distance::parse(const std::string& token) {
  if (token == "zbar") return formal_zero();
  long long v = -1;
  std::size_t pos = 0;
  try {
    v = std::stoll(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != token.size() || v < 0)
    throw ValidationError("distance token must be 'zbar' or a nonnegative encoding, got '" +
                          token + "'");
  return field_value(v);
}

Distance distance(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y,
                  const Field& field) {
  if (x.size() != y.size() || x.empty())
    throw ValidationError("distance: dimension mismatch");
  bool equal = true;
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) equal = false;
    const std::uint32_t diff = field.sub_code(x[i], y[i]);
    acc = field.add_code(acc, field.mul_code(diff, diff));
  }
  if (equal) return Distance::formal_zero();
  return Distance::field_value(acc);
}

DistanceSet DistanceSet::make(const Field& field, int d) {
  check_dimension(d);
  const std::int64_t q = field.q();
  DistanceSet ds;
  ds.has_zero_ = d >= 3 || q % 4 == 1;
  ds.ordered_.reserve(static_cast<std::size_t>(q) + 1);
  ds.index_by_code_.assign(static_cast<std::size_t>(q), -1);
  ds.ordered_.push_back(Distance::formal_zero());
  if (ds.has_zero_) {
    ds.index_by_code_[0] = static_cast<std::int32_t>(ds.ordered_.size());
    ds.ordered_.push_back(Distance::field_value(0));
  }
  for (std::int64_t j = 0; j < q - 1; ++j) {
    const std::uint32_t code = field.exp_code(j);
    ds.index_by_code_[code] = static_cast<std::int32_t>(ds.ordered_.size());
    ds.ordered_.push_back(Distance::field_value(code));
  }
  const std::uint32_t four = static_cast<std::uint32_t>(field.from_int(4).code());
  ds.s_ = static_cast<int>(field.log_code(four));
  return ds;
}

int DistanceSet::index_of(const Distance& t) const {
  if (t.is_formal_zero()) return 0;
  const std::int64_t code = t.code();
  if (code >= static_cast<std::int64_t>(index_by_code_.size()) || index_by_code_[code] < 0)
    throw ValidationError("distance " + t.label() + " is not in Delta");
  return index_by_code_[code];
}

std::int64_t sphere_size(const Distance& t, const Field& field, int d) {
  check_dimension(d);
  if (t.is_formal_zero()) return 1;
  const std::int64_t q = field.q();
  const std::int64_t tc = t.code();
  if (tc >= q) throw ValidationError("distance code outside the field");
  if (tc == 0 && d == 2 && q % 4 == 3)
    throw ValidationError("distance 0 does not occur for d = 2, q = 3 mod 4");

  const std::uint32_t neg_t = field.neg_code(static_cast<std::uint32_t>(tc));
  const std::complex<double> tw = charsums::twisted_lookup(field, d, neg_t, 0);
  const std::complex<double> val =
      std::pow(static_cast<double>(q), d - 1) - (tc == 0 ? 1.0 : 0.0) +
      std::pow(static_cast<double>(q), d / 2.0 - 1.0) * epsilon_pow(field, d) * tw;
  const double re = real_checked(val, q, d, "sphere size");
  const auto rounded = static_cast<std::int64_t>(std::llround(re));
  if (std::fabs(re - static_cast<double>(rounded)) > 1e-3)
    throw ResidualError("sphere size far from an integer: arithmetic bug");
  if (rounded < 0) throw ResidualError("negative sphere size: arithmetic bug");
  return rounded;
}

std::int64_t sphere_size_bruteforce(const Distance& t, const Field& field, int d) {
  check_dimension(d);
  const std::int64_t q = field.q();
  double qd = 1.0;
  for (int i = 0; i < d; ++i) qd *= static_cast<double>(q);
  if (qd > 1e6) throw ValidationError("brute-force sphere count capped at q^d <= 10^6");
  if (t.is_formal_zero()) return 1;

  const auto tc = static_cast<std::uint32_t>(t.code());
  std::int64_t count = 0;
  std::vector<std::uint32_t> v(static_cast<std::size_t>(d), 0);
  const auto total = static_cast<std::int64_t>(qd);
  for (std::int64_t it = 0; it < total; ++it) {
    std::uint32_t acc = 0;
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      if (v[i] != 0) zero = false;
      acc = field.add_code(acc, field.mul_code(v[i], v[i]));
    }
    if (!zero && acc == tc) ++count;
    for (int i = 0; i < d; ++i) {
      if (++v[i] < field.q()) break;
      v[i] = 0;
    }
  }
  return count;
}

double eigenvalue(const Distance& k, const Distance& t, const Field& field, int d) {
  check_dimension(d);
  if (t.is_formal_zero()) return 1.0;  // A_zbar is the identity operator
  const std::int64_t q = field.q();
  const std::int64_t tc = t.code();
  if (tc == 0 && d == 2 && q % 4 == 3)
    throw ValidationError("distance 0 does not occur for d = 2, q = 3 mod 4");
  if (!k.is_formal_zero() && k.code() == 0 && d == 2 && q % 4 == 3)
    throw ValidationError("weight class 0 does not occur for d = 2, q = 3 mod 4");

  // b = -Q(m)/4 with Q(m) = k (and 0 for the zero vector).
  std::uint32_t b = 0;
  double main_term = 0.0;
  if (k.is_formal_zero()) {
    main_term = std::pow(static_cast<double>(q), d - 1);
  } else {
    const auto kc = static_cast<std::uint32_t>(k.code());
    const std::uint32_t inv4 = field.inv_code(static_cast<std::uint32_t>(field.from_int(4).code()));
    b = field.neg_code(field.mul_code(kc, inv4));
  }
  const std::uint32_t neg_t = field.neg_code(static_cast<std::uint32_t>(tc));
  const std::complex<double> tw = charsums::twisted_lookup(field, d, neg_t, b);
  const std::complex<double> val =
      main_term - (tc == 0 ? 1.0 : 0.0) +
      std::pow(static_cast<double>(q), d / 2.0 - 1.0) * epsilon_pow(field, d) * tw;
  return real_checked(val, q, d, "eigenvalue");
}

namespace {

SchemeBlocks build_blocks(const Field& field, int d, const DistanceSet& delta) {
  const std::int64_t q = field.q();
  const bool d_even = d % 2 == 0;
  const double leg_m1 = field.legendre_code(field.neg_code(1));
  const std::complex<double> epsd = epsilon_pow(field, d);
  const double qpow = std::pow(static_cast<double>(q), d / 2.0 - 1.0);

  SchemeBlocks blocks;
  blocks.alpha = real_checked(
      -1.0 + qpow * epsd * static_cast<double>(q - 1) * (d_even ? 1.0 : 0.0), q, d, "alpha");
  if (d_even) {
    blocks.beta = real_checked(-qpow * epsd, q, d, "beta");
  } else {
    const std::complex<double> epsd1 = epsilon_pow(field, d + 1);
    blocks.beta = real_checked(
        leg_m1 * std::pow(static_cast<double>(q), (d - 1) / 2.0) * epsd1, q, d, "beta");
  }

  blocks.eta.resize(static_cast<std::size_t>(q - 1));
  blocks.mu.resize(static_cast<std::size_t>(q - 1));
  for (std::int64_t j = 0; j < q - 1; ++j) {
    blocks.eta[j] = sphere_size(Distance::field_value(field.exp_code(j)), field, d);
    blocks.mu[j] = (d_even || j % 2 == 0) ? 1 : -1;
  }

  // Core block entries eps^d (-1/q)^d (-1)^{jd} K~_d(1, theta^{i+j-s}).
  const int s = delta.s_exponent();
  const double legpow = d_even ? 1.0 : leg_m1;
  Matrix kt(static_cast<int>(q - 1), static_cast<int>(q - 1));
  for (std::int64_t i = 0; i < q - 1; ++i) {
    for (std::int64_t j = 0; j < q - 1; ++j) {
      const std::uint32_t arg = field.exp_code(i + j - s);
      const std::complex<double> tw = charsums::twisted_lookup(field, d, 1, arg);
      const double sign = (d_even || j % 2 == 0) ? 1.0 : -1.0;
      kt(static_cast<int>(i), static_cast<int>(j)) =
          real_checked(epsd * legpow * sign * tw, q, d, "ktilde block");
    }
  }
  blocks.ktilde = std::move(kt);
  return blocks;
}

Matrix assemble_p_from_blocks(const Field& field, int d, const DistanceSet& delta,
                              const SchemeBlocks& blocks) {
  const std::int64_t q = field.q();
  const int n = static_cast<int>(delta.size());
  const double qpow = std::pow(static_cast<double>(q), d / 2.0 - 1.0);
  Matrix P(n, n);
  // Row zbar: sphere sizes. Row 0: deviations row (1, alpha, beta mu^T).
  // Column zbar: all ones. Column 0: (|S_0|, alpha, beta mu - 1).
  P(0, 0) = 1.0;
  P(0, 1) = static_cast<double>(sphere_size(Distance::field_value(0), field, d));
  P(1, 0) = 1.0;
  P(1, 1) = blocks.alpha;
  for (std::int64_t j = 0; j < q - 1; ++j) {
    const int col = static_cast<int>(j) + 2;
    const int row = static_cast<int>(j) + 2;
    P(0, col) = static_cast<double>(blocks.eta[j]);
    P(1, col) = blocks.beta * blocks.mu[j];
    P(row, 0) = 1.0;
    P(row, 1) = blocks.beta * blocks.mu[j] - 1.0;
    for (std::int64_t i = 0; i < q - 1; ++i)
      P(static_cast<int>(i) + 2, col) = qpow * blocks.ktilde(static_cast<int>(i), static_cast<int>(j));
  }
  return P;
}

}  // namespace

double SchemeMatrices::pq_residual() const {
  double qd = 1.0;
  for (int i = 0; i < dim; ++i) qd *= static_cast<double>(q_order);
  return max_abs_diff(P * Q, Matrix::identity(static_cast<int>(delta.size()), qd));
}

double SchemeMatrices::p_squared_residual() const {
  if (dim != 2) throw ValidationError("P^2 identity is specific to d = 2");
  const double q2 = static_cast<double>(q_order) * static_cast<double>(q_order);
  return max_abs_diff(P * P, Matrix::identity(static_cast<int>(delta.size()), q2));
}

SchemeMatrices scheme_matrices(const Field& field, int d) {
  check_dimension(d);
  const std::int64_t q = field.q();
  SchemeMatrices m;
  m.q_order = q;
  m.dim = d;
  m.delta = DistanceSet::make(field, d);
  const int n = static_cast<int>(m.delta.size());

  m.sphere_sizes.reserve(n);
  for (int i = 0; i < n; ++i) m.sphere_sizes.push_back(sphere_size(m.delta.at(i), field, d));

  m.P = Matrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.P(r, c) = eigenvalue(m.delta.at(r), m.delta.at(c), field, d);

  // Q = D^{-1} P^T D.
  m.Q = Matrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m.Q(r, c) = m.P(c, r) * static_cast<double>(m.sphere_sizes[c]) /
                  static_cast<double>(m.sphere_sizes[r]);

  m.weight_dims = m.sphere_sizes;  // dim W_k = #{m : Q(m) = k} = |S_k|

  if (d >= 3) {
    m.blocks = build_blocks(field, d, m.delta);
    const Matrix assembled = assemble_p_from_blocks(field, d, m.delta, m.blocks);
    const double diff = max_abs_diff(assembled, m.P);
    if (diff > tol_mat(q, d))
      throw ResidualError("block decomposition of P disagrees with the eigenvalue formula (max |diff| = " +
                          format_double(diff) + ")");
    m.has_blocks = true;
  }

  const double residual = m.pq_residual();
  if (residual > tol_mat(q, d))
    throw ResidualError("PQ = q^d I violated: residual " + format_double(residual));
  return m;
}

std::vector<std::int64_t> weight_dims(const Field& field, int d) {
  const SchemeMatrices m = scheme_matrices(field, d);
  return m.weight_dims;
}

double orthogonality_residual(const SchemeMatrices& m, int i, int j) {
  const int n = static_cast<int>(m.delta.size());
  if (i < 0 || j < 0 || i >= n || j >= n) throw ValidationError("Delta index out of range");
  double acc = 0.0;
  for (int t = 0; t < n; ++t)
    acc += static_cast<double>(m.sphere_sizes[t]) * m.P(t, i) * m.P(t, j);
  double expect = 0.0;
  if (i == j) {
    double qd = 1.0;
    for (int k = 0; k < m.dim; ++k) qd *= static_cast<double>(m.q_order);
    expect = qd * static_cast<double>(m.sphere_sizes[i]);
  }
  return std::fabs(acc - expect);
}

std::vector<double> inner_distribution(const std::vector<std::vector<std::uint32_t>>& points,
                                       const Field& field, int d) {
  if (points.empty()) throw ValidationError("inner distribution of an empty set");
  const DistanceSet delta = DistanceSet::make(field, d);
  std::vector<double> a(delta.size(), 0.0);
  for (const auto& y1 : points) {
    for (const auto& y2 : points) {
      const Distance dist = distance(y1, y2, field);
      a[static_cast<std::size_t>(delta.index_of(dist))] += 1.0;
    }
  }
  for (auto& v : a) v /= static_cast<double>(points.size());
  return a;
}

DelsarteReport delsarte_check(const std::vector<std::vector<std::uint32_t>>& points,
                              const SchemeMatrices& m, const Field& field) {
  const std::vector<double> a = inner_distribution(points, field, m.dim);
  const int n = static_cast<int>(m.delta.size());
  DelsarteReport report;
  report.a_q.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) report.a_q[j] += a[i] * m.Q(i, j);
  report.min_entry = report.a_q.empty() ? 0.0 : report.a_q[0];
  for (const double v : report.a_q) report.min_entry = std::min(report.min_entry, v);
  report.pass = report.min_entry >= -tol_mat(m.q_order, m.dim);
  return report;
}

}  // namespace eas::scheme
