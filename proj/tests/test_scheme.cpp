#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "eas/charsums.hpp"
#include "eas/scheme.hpp"

using namespace eas::scheme;
using eas::Matrix;
using eas::ValidationError;
using eas::gf::Field;
using doctest::Approx;

namespace {

std::vector<std::vector<std::uint32_t>> all_points(const Field& f, int d) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> v(static_cast<std::size_t>(d), 0);
  const std::int64_t q = f.q();
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= q;
  for (std::int64_t it = 0; it < total; ++it) {
    out.push_back(v);
    for (int i = 0; i < d; ++i) {
      if (++v[i] < q) break;
      v[i] = 0;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("scheme: distance distinguishes the formal zero from isotropic pairs") {
  const Field& f5 = Field::of(5);
  const std::vector<std::uint32_t> o{0, 0}, p12{1, 2}, p10{1, 0};
  CHECK(distance(o, o, f5).is_formal_zero());
  const Distance d12 = distance(o, p12, f5);  // 1 + 4 = 5 = 0, but points differ
  CHECK_FALSE(d12.is_formal_zero());
  CHECK(d12.code() == 0);

  const Field& f3 = Field::of(3);
  CHECK(distance(o, p10, f3) == Distance::field_value(1));

  const std::vector<std::uint32_t> p3{1, 0, 0};
  CHECK_THROWS_AS(distance(o, p3, f5), ValidationError);
}

TEST_CASE("scheme: distance set ordering and size") {
  // d = 2, q = 3 mod 4 drops the field zero.
  const auto d7 = DistanceSet::make(Field::of(7), 2);
  CHECK(d7.size() == 7);
  CHECK(d7.at(0).is_formal_zero());
  CHECK_FALSE(d7.contains_zero());
  CHECK(d7.at(1) == Distance::field_value(1));  // theta^0
  CHECK_THROWS_AS(d7.index_of(Distance::field_value(0)), ValidationError);

  const auto d5 = DistanceSet::make(Field::of(5), 2);
  CHECK(d5.size() == 6);
  CHECK(d5.contains_zero());
  CHECK(d5.at(1) == Distance::field_value(0));
  // 4 = theta^s with theta = 2 over F_5: 2^2 = 4.
  CHECK(d5.s_exponent() == 2);

  const auto d7c = DistanceSet::make(Field::of(7), 3);
  CHECK(d7c.size() == 8);
  CHECK(d7c.contains_zero());
}

TEST_CASE("scheme: sphere sizes match brute force and the stated shapes") {
  struct Case {
    std::int64_t q;
    int d;
  };
  for (const Case c : {Case{3, 2}, Case{5, 2}, Case{7, 2}, Case{9, 2}, Case{13, 2},
                       Case{25, 2}, Case{27, 2}, Case{3, 3}, Case{5, 3}, Case{7, 3},
                       Case{9, 3}, Case{25, 3}, Case{27, 3}, Case{3, 4}, Case{5, 4},
                       Case{9, 4}}) {
    const Field& f = Field::of(c.q);
    const auto delta = DistanceSet::make(f, c.d);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const std::int64_t closed = sphere_size(delta.at(i), f, c.d);
      CHECK(closed == sphere_size_bruteforce(delta.at(i), f, c.d));
      total += closed;
    }
    std::int64_t qd = 1;
    for (int i = 0; i < c.d; ++i) qd *= c.q;
    CHECK(total == qd);  // spheres partition F_q^d
  }

  // Histogram oracle: one enumeration pass counts every sphere at once,
  // reaching field sizes the per-t scan cannot.
  struct HistCase {
    std::int64_t q;
    int d;
  };
  for (const HistCase c : {HistCase{121, 2}, HistCase{169, 2}, HistCase{243, 2},
                           HistCase{49, 3}}) {
    const Field& f = Field::of(c.q);
    const auto delta = DistanceSet::make(f, c.d);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(c.q), 0);
    std::vector<std::uint32_t> v(static_cast<std::size_t>(c.d), 0);
    std::int64_t total = 1;
    for (int i = 0; i < c.d; ++i) total *= c.q;
    for (std::int64_t it = 0; it < total; ++it) {
      std::uint32_t acc = 0;
      bool zero = true;
      for (int i = 0; i < c.d; ++i) {
        if (v[i] != 0) zero = false;
        acc = f.add_code(acc, f.mul_code(v[i], v[i]));
      }
      if (!zero) ++counts[acc];
      for (int i = 0; i < c.d; ++i) {
        if (++v[i] < f.q()) break;
        v[i] = 0;
      }
    }
    for (std::size_t i = 1; i < delta.size(); ++i) {
      const auto t = delta.at(i);
      CHECK(sphere_size(t, f, c.d) == counts[static_cast<std::size_t>(t.code())]);
    }
  }

  // d = 2 closed shapes per residue class.
  for (const std::int64_t q : {3, 7, 11, 19}) {
    const Field& f = Field::of(q);
    for (std::int64_t t = 1; t < q; ++t)
      CHECK(sphere_size(Distance::field_value(t), f, 2) == q + 1);
  }
  for (const std::int64_t q : {5, 9, 13}) {
    const Field& f = Field::of(q);
    CHECK(sphere_size(Distance::field_value(0), f, 2) == 2 * q - 2);
    for (std::int64_t t = 1; t < q; ++t)
      CHECK(sphere_size(Distance::field_value(t), f, 2) == q - 1);
  }

  // Scaling bijection |S_t| = |S_{lambda^2 t}|.
  for (const std::int64_t q : {7, 9}) {
    const Field& f = Field::of(q);
    for (int d = 2; d <= 3; ++d) {
      for (std::int64_t t = 1; t < q; ++t)
        for (std::int64_t lam = 1; lam < q; ++lam) {
          const auto scaled =
              f.element(t) * f.element(lam) * f.element(lam);
          CHECK(sphere_size(Distance::field_value(t), f, d) ==
                sphere_size(Distance::field_value(scaled.code()), f, d));
        }
    }
  }

  // d >= 3: exactly four sphere sizes and the partition identity.
  for (const std::int64_t q : {5, 7, 9}) {
    const Field& f = Field::of(q);
    const std::int64_t s0 = sphere_size(Distance::field_value(0), f, 3);
    const std::int64_t ssq = sphere_size(Distance::field_value(1), f, 3);
    const std::int64_t snsq =
        sphere_size(Distance::field_value(f.generator().code()), f, 3);
    CHECK(1 + s0 + (q - 1) / 2 * (ssq + snsq) == q * q * q);
    for (std::int64_t t = 1; t < q; ++t) {
      const std::int64_t s = sphere_size(Distance::field_value(t), f, 3);
      CHECK(s == (f.element(t).legendre() == 1 ? ssq : snsq));
    }
  }

  CHECK_THROWS_AS(sphere_size(Distance::field_value(0), Field::of(7), 2), ValidationError);
}

TEST_CASE("scheme: eigenvalue formula boundary rows and the planar identity") {
  for (const std::int64_t q : {5, 7, 9, 11}) {
    const Field& f = Field::of(q);
    for (int d = 2; d <= 3; ++d) {
      const auto delta = DistanceSet::make(f, d);
      for (std::size_t i = 0; i < delta.size(); ++i) {
        // Column zbar: identity operator eigenvalues.
        CHECK(eigenvalue(delta.at(i), Distance::formal_zero(), f, d) == 1.0);
        // Row zbar: sphere sizes.
        CHECK(eigenvalue(Distance::formal_zero(), delta.at(i), f, d) ==
              Approx(static_cast<double>(sphere_size(delta.at(i), f, d))).epsilon(1e-9));
      }
    }
  }

  // d = 2, q = 3 mod 4: lambda_{k,t} = -K(1, kt/4).
  for (const std::int64_t q : {7, 11}) {
    const Field& f = Field::of(q);
    const auto inv4 = f.from_int(4).inv();
    for (std::int64_t k = 1; k < q; ++k)
      for (std::int64_t t = 1; t < q; ++t) {
        const auto arg = f.element(k) * f.element(t) * inv4;
        const double expect =
            -eas::charsums::kloosterman(f.one(), arg).real_part();
        CHECK(eigenvalue(Distance::field_value(k), Distance::field_value(t), f, 2) ==
              Approx(expect).epsilon(1e-9));
      }
  }
}

TEST_CASE("scheme: P and Q satisfy the structure identities") {
  struct Case {
    std::int64_t q;
    int d;
  };
  for (const Case c : {Case{3, 2}, Case{5, 2}, Case{7, 2}, Case{9, 2}, Case{11, 2},
                       Case{13, 2}, Case{25, 2}, Case{27, 2}, Case{3, 3}, Case{5, 3},
                       Case{7, 3}, Case{9, 3}, Case{25, 3}, Case{27, 3}, Case{3, 4},
                       Case{5, 4}}) {
    const Field& f = Field::of(c.q);
    const auto m = scheme_matrices(f, c.d);
    const int n = static_cast<int>(m.delta.size());
    double qd = 1.0;
    for (int i = 0; i < c.d; ++i) qd *= static_cast<double>(c.q);

    CHECK(m.pq_residual() < tol_mat(c.q, c.d));
    const Matrix qp = m.Q * m.P;
    CHECK(eas::max_abs_diff(qp, Matrix::identity(n, qd)) < tol_mat(c.q, c.d));

    // Q_{i,j} = (|S_j| / |S_i|) P_{j,i}.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(m.Q(i, j) ==
              Approx(m.P(j, i) * static_cast<double>(m.sphere_sizes[j]) /
                     static_cast<double>(m.sphere_sizes[i]))
                  .epsilon(1e-12));

    if (c.d == 2) {
      CHECK(m.p_squared_residual() < tol_mat(c.q, 2));
      CHECK(eas::max_abs_diff(m.P, m.Q) < tol_mat(c.q, 2));  // P = Q in the plane
    }

    // Orthogonality: sum_t |S_t| P_{t,i} P_{t,j} = q^d |S_i| delta_{ij}.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(orthogonality_residual(m, i, j) < tol_mat(c.q, c.d));
  }
}

TEST_CASE("scheme: planar block forms rebuilt from Kloosterman sums") {
  // q = 3 mod 4: P = [[1, (q+1) 1^T], [1, -K]] with K_{ij} = K(1, theta^{i+j}/4).
  for (const std::int64_t q : {7, 11}) {
    const Field& f = Field::of(q);
    const auto m = scheme_matrices(f, 2);
    const int n = static_cast<int>(m.delta.size());
    REQUIRE(n == q);
    Matrix expect(n, n);
    expect(0, 0) = 1.0;
    const auto inv4 = f.from_int(4).inv();
    for (int j = 1; j < n; ++j) {
      expect(0, j) = static_cast<double>(q + 1);
      expect(j, 0) = 1.0;
    }
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        const auto arg = f.element(m.delta.at(i).code()) *
                         f.element(m.delta.at(j).code()) * inv4;
        expect(i, j) = -eas::charsums::kloosterman(f.one(), arg).real_part();
      }
    CHECK(eas::max_abs_diff(m.P, expect) < 1e-8);
  }

  // q = 1 mod 4: bordered form with the deviations row (1, q-2, -1^T).
  for (const std::int64_t q : {5, 9, 13}) {
    const Field& f = Field::of(q);
    const auto m = scheme_matrices(f, 2);
    const int n = static_cast<int>(m.delta.size());
    REQUIRE(n == q + 1);
    CHECK(m.P(0, 0) == Approx(1.0));
    CHECK(m.P(0, 1) == Approx(static_cast<double>(2 * q - 2)).epsilon(1e-10));
    CHECK(m.P(1, 1) == Approx(static_cast<double>(q - 2)).epsilon(1e-9));
    const auto inv4 = f.from_int(4).inv();
    for (int j = 2; j < n; ++j) {
      CHECK(m.P(0, j) == Approx(static_cast<double>(q - 1)).epsilon(1e-9));
      CHECK(m.P(1, j) == Approx(-1.0).epsilon(1e-8));
      CHECK(m.P(j, 1) == Approx(-2.0).epsilon(1e-8));
      for (int i = 2; i < n; ++i) {
        const auto arg = f.element(m.delta.at(i).code()) *
                         f.element(m.delta.at(j).code()) * inv4;
        CHECK(m.P(i, j) ==
              Approx(eas::charsums::kloosterman(f.one(), arg).real_part())
                  .epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("scheme: d >= 3 core block is (signed-)circulant") {
  for (const std::int64_t q : {3, 5, 7, 9}) {
    const Field& f = Field::of(q);
    const int n = static_cast<int>(q - 1);

    // Odd d: each row is minus the left cyclic shift of the row above.
    const auto m3 = scheme_matrices(f, 3);
    REQUIRE(m3.has_blocks);
    for (int r = 0; r + 1 < n; ++r)
      for (int j = 0; j < n; ++j)
        CHECK(m3.blocks.ktilde(r + 1, j) ==
              Approx(-m3.blocks.ktilde(r, (j + 1) % n)).epsilon(1e-9));

    // Even d: circulant and symmetric.
    const auto m4 = scheme_matrices(f, 4);
    REQUIRE(m4.has_blocks);
    for (int r = 0; r + 1 < n; ++r)
      for (int j = 0; j < n; ++j)
        CHECK(m4.blocks.ktilde(r + 1, j) ==
              Approx(m4.blocks.ktilde(r, (j + 1) % n)).epsilon(1e-9));
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j)
        CHECK(m4.blocks.ktilde(r, j) == Approx(m4.blocks.ktilde(j, r)).epsilon(1e-9));
  }
}

TEST_CASE("scheme: weight-space dimensions") {
  const Field& f7 = Field::of(7);
  const auto dims = weight_dims(f7, 2);
  const auto delta = DistanceSet::make(f7, 2);
  CHECK(dims[0] == 1);  // constants
  for (std::size_t i = 1; i < delta.size(); ++i) CHECK(dims[i] == 8);

  // Brute count of {m : Q(m) = k} for a field with isotropic vectors.
  const Field& f5 = Field::of(5);
  const auto dims5 = weight_dims(f5, 2);
  const auto delta5 = DistanceSet::make(f5, 2);
  std::vector<std::int64_t> counts(delta5.size(), 0);
  const std::vector<std::uint32_t> origin{0, 0};
  for (const auto& m : all_points(f5, 2))
    counts[static_cast<std::size_t>(delta5.index_of(distance(m, origin, f5)))]++;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < delta5.size(); ++i) {
    CHECK(dims5[i] == counts[i]);
    total += dims5[i];
  }
  CHECK(total == 25);
}

TEST_CASE("scheme: inner distribution and the Delsarte condition") {
  const Field& f5 = Field::of(5);
  const auto m5 = scheme_matrices(f5, 2);

  // Singleton.
  const auto single = inner_distribution({{2, 3}}, f5, 2);
  CHECK(single[0] == Approx(1.0));
  for (std::size_t i = 1; i < single.size(); ++i) CHECK(single[i] == Approx(0.0));

  // The full space is regular: a_j = |S_j|.
  const auto full = inner_distribution(all_points(f5, 2), f5, 2);
  for (std::size_t i = 0; i < full.size(); ++i)
    CHECK(full[i] == Approx(static_cast<double>(m5.sphere_sizes[i])).epsilon(1e-12));
  const auto full_check = delsarte_check(all_points(f5, 2), m5, f5);
  CHECK(full_check.pass);
  CHECK(full_check.a_q[0] == Approx(25.0).epsilon(1e-9));
  for (std::size_t i = 1; i < full_check.a_q.size(); ++i)
    CHECK(full_check.a_q[i] == Approx(0.0).epsilon(1e-9));

  // Isotropic line span{(1,2)} in Z_5^2: a_zbar = 1, a_0 = 4.
  std::vector<std::vector<std::uint32_t>> line;
  for (std::uint32_t s = 0; s < 5; ++s)
    line.push_back({f5.mul_code(s, 1), f5.mul_code(s, 2)});
  const auto iso = inner_distribution(line, f5, 2);
  CHECK(iso[0] == Approx(1.0));
  CHECK(iso[1] == Approx(4.0));
  for (std::size_t i = 2; i < iso.size(); ++i) CHECK(iso[i] == Approx(0.0));

  CHECK_THROWS_AS(inner_distribution({}, f5, 2), ValidationError);

  // Random subsets always pass the Delsarte bound (property over 50 draws).
  const Field& f7 = Field::of(7);
  const auto m7 = scheme_matrices(f7, 2);
  const auto points7 = all_points(f7, 2);
  std::mt19937_64 gen(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t size = 1 + gen() % points7.size();
    std::vector<std::vector<std::uint32_t>> sub;
    std::vector<std::size_t> idx(points7.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t j = i + gen() % (idx.size() - i);
      std::swap(idx[i], idx[j]);
      sub.push_back(points7[idx[i]]);
    }
    const auto r = delsarte_check(sub, m7, f7);
    CHECK(r.pass);
  }
}
