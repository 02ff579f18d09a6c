#include "eas/intersect.hpp"

#include <cmath>
#include <random>
#include <set>

namespace eas::intersect {

namespace {

std::vector<std::vector<std::uint32_t>> enumerate_vectors(const Field& field, int d) {
  const std::int64_t q = field.q();
  double qd = 1.0;
  for (int i = 0; i < d; ++i) qd *= static_cast<double>(q);
  if (qd > 1e6) throw ValidationError("enumeration capped at q^d <= 10^6");
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(static_cast<std::size_t>(qd));
  std::vector<std::uint32_t> v(static_cast<std::size_t>(d), 0);
  for (std::int64_t it = 0; it < static_cast<std::int64_t>(qd); ++it) {
    out.push_back(v);
    for (int i = 0; i < d; ++i) {
      if (++v[i] < field.q()) break;
      v[i] = 0;
    }
  }
  return out;
}

std::int64_t count_completions(const std::vector<std::uint32_t>& x,
                               const std::vector<std::uint32_t>& y, const Distance& i,
                               const Distance& j, const Field& field, int d) {
  std::int64_t count = 0;
  const auto all = enumerate_vectors(field, d);
  for (const auto& z : all) {
    if (scheme::distance(x, z, field) == i && scheme::distance(z, y, field) == j) ++count;
  }
  return count;
}

// Base pair for a given k: x = 0 and the first enumerated y with d(x,y) = k,
// preferring y with nonzero first coordinate.
std::vector<std::uint32_t> base_partner(const Distance& k, const Field& field, int d) {
  const std::vector<std::uint32_t> origin(static_cast<std::size_t>(d), 0);
  if (k.is_formal_zero()) return origin;
  std::vector<std::uint32_t> fallback;
  for (const auto& y : enumerate_vectors(field, d)) {
    if (scheme::distance(origin, y, field) == k) {
      if (y[0] != 0) return y;
      if (fallback.empty()) fallback = y;
    }
  }
  if (!fallback.empty()) return fallback;
  throw ValidationError("no pair of points realizes distance " + k.label());
}

}  // namespace

std::int64_t planar_intersection(std::int64_t i_code, std::int64_t j_code, std::int64_t k_code,
                                 const Field& field) {
  const std::int64_t q = field.q();
  if (i_code < 0 || j_code < 0 || k_code < 0 || i_code >= q || j_code >= q || k_code >= q)
    throw ValidationError("planar_intersection expects field distances (no formal zeros)");
  const auto i = static_cast<std::uint32_t>(i_code);
  const auto j = static_cast<std::uint32_t>(j_code);
  const auto k = static_cast<std::uint32_t>(k_code);

  if (q % 4 == 3 && (i == 0 || j == 0 || k == 0))
    throw ValidationError("distance 0 does not occur for d = 2, q = 3 mod 4");

  if (k == 0) {
    if (i != j) return 1;
    return i == 0 ? q - 2 : 0;
  }

  // The quadratic for the completing point has one degenerate root when i or
  // j is 0 with the other equal to k: that root is the base point x (or y)
  // itself, which sits at formal distance zbar, not 0. The count is 0 there.
  if ((i == 0 && j == k) || (j == 0 && i == k)) return 0;

  // sigma_1 = i+j+k, sigma_2 = ij+jk+ki; count = legendre(4 sigma_2 - sigma_1^2) + 1.
  const std::uint32_t s1 = field.add_code(field.add_code(i, j), k);
  const std::uint32_t s2 = field.add_code(
      field.add_code(field.mul_code(i, j), field.mul_code(j, k)), field.mul_code(k, i));
  const std::uint32_t four = static_cast<std::uint32_t>(field.from_int(4).code());
  const std::uint32_t disc =
      field.sub_code(field.mul_code(four, s2), field.mul_code(s1, s1));
  return field.legendre_code(disc) + 1;
}

std::int64_t brute_force_intersection(const Distance& i, const Distance& j, const Distance& k,
                                      const Field& field, int d) {
  const std::vector<std::uint32_t> origin(static_cast<std::size_t>(d), 0);
  const auto y = base_partner(k, field, d);
  return count_completions(origin, y, i, j, field, d);
}

std::int64_t brute_force_intersection_checked(const Distance& i, const Distance& j,
                                              const Distance& k, const Field& field, int d,
                                              int alternatives, std::uint64_t seed) {
  const std::int64_t value = brute_force_intersection(i, j, k, field, d);
  const std::vector<std::uint32_t> origin(static_cast<std::size_t>(d), 0);
  std::vector<std::vector<std::uint32_t>> candidates;
  for (const auto& y : enumerate_vectors(field, d))
    if (scheme::distance(origin, y, field) == k) candidates.push_back(y);
  std::mt19937_64 gen(seed);
  for (int trial = 0; trial < alternatives && !candidates.empty(); ++trial) {
    const auto& y = candidates[static_cast<std::size_t>(gen() % candidates.size())];
    if (count_completions(origin, y, i, j, field, d) != value)
      throw ResidualError("intersection count depends on the base pair: scheme axiom violated");
  }
  return value;
}

IntersectionTable IntersectionTable::make(const Field& field, int d) {
  IntersectionTable t;
  t.delta_ = DistanceSet::make(field, d);
  t.d_ = d;
  const std::size_t n = t.delta_.size();
  t.values_.assign(n * n * n, 0);
  auto slot = [&t, n](int i, int j, int k) -> std::int64_t& {
    return t.values_[(static_cast<std::size_t>(i) * n + j) * n + k];
  };

  if (d == 2) {
    std::vector<std::int64_t> sizes(n);
    for (std::size_t i = 0; i < n; ++i)
      sizes[i] = scheme::sphere_size(t.delta_.at(i), field, d);
    for (int i = 0; i < static_cast<int>(n); ++i) {
      const Distance di = t.delta_.at(i);
      for (int j = 0; j < static_cast<int>(n); ++j) {
        const Distance dj = t.delta_.at(j);
        for (int k = 0; k < static_cast<int>(n); ++k) {
          const Distance dk = t.delta_.at(k);
          std::int64_t v = 0;
          if (dk.is_formal_zero()) {
            v = (i == j) ? sizes[i] : 0;  // p_{i,j}^zbar = [i=j] |S_i|
          } else if (di.is_formal_zero()) {
            v = (j == k) ? 1 : 0;  // p_{zbar,j}^k = [j=k]
          } else if (dj.is_formal_zero()) {
            v = (i == k) ? 1 : 0;
          } else {
            v = planar_intersection(di.code(), dj.code(), dk.code(), field);
          }
          slot(i, j, k) = v;
        }
      }
    }
  } else {
    for (int i = 0; i < static_cast<int>(n); ++i)
      for (int j = 0; j < static_cast<int>(n); ++j)
        for (int k = 0; k < static_cast<int>(n); ++k)
          slot(i, j, k) = brute_force_intersection(t.delta_.at(i), t.delta_.at(j),
                                                   t.delta_.at(k), field, d);
  }
  return t;
}

IntersectionMatrix intersection_matrix(const Distance& i, const IntersectionTable& table,
                                       const Field& field) {
  const DistanceSet& delta = table.delta();
  const int n = static_cast<int>(delta.size());
  const int idx = delta.index_of(i);

  IntersectionMatrix out;
  out.i = i;
  out.L = IntMatrix(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) out.L(k, j) = table.p(idx, j, k);

  // L_i is similar to the symmetric D^{1/2} L_i D^{-1/2} (D = sphere sizes).
  std::vector<double> root(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    root[k] = std::sqrt(
        static_cast<double>(scheme::sphere_size(delta.at(k), field, table.dim())));
  Matrix sym(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      sym(k, j) = root[k] * static_cast<double>(out.L(k, j)) / root[j];
  out.spectrum = jacobi_eigenvalues(sym);
  return out;
}

IntersectionMatrix intersection_matrix(const Distance& i, const Field& field, int d) {
  return intersection_matrix(i, IntersectionTable::make(field, d), field);
}

bool collinear_test(std::int64_t i_code, std::int64_t j_code, std::int64_t k_code,
                    const Field& field) {
  const std::int64_t q = field.q();
  if (i_code < 0 || j_code < 0 || k_code < 0 || i_code >= q || j_code >= q || k_code >= q)
    throw ValidationError("collinear_test expects field distances");
  const auto i = static_cast<std::uint32_t>(i_code);
  const auto j = static_cast<std::uint32_t>(j_code);
  const auto k = static_cast<std::uint32_t>(k_code);
  const std::uint32_t s1 = field.add_code(field.add_code(i, j), k);
  const std::uint32_t s2 = field.add_code(
      field.add_code(field.mul_code(i, j), field.mul_code(j, k)), field.mul_code(k, i));
  const std::uint32_t four = static_cast<std::uint32_t>(field.from_int(4).code());
  return field.mul_code(four, s2) == field.mul_code(s1, s1);
}

DistanceBoundReport distance_bound_check(const std::vector<std::vector<std::uint32_t>>& points,
                                         const Field& field) {
  const std::int64_t q = field.q();
  if (q % 4 != 1) throw ValidationError("distance-set bound requires q = 1 mod 4");
  if (static_cast<std::int64_t>(points.size()) <= q)
    throw ValidationError("distance-set bound requires |E| > q");

  DistanceBoundReport r;
  r.set_size = static_cast<std::int64_t>(points.size());
  std::set<std::uint32_t> achieved;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const Distance dist = scheme::distance(points[a], points[b], field);
      if (!dist.is_formal_zero()) achieved.insert(static_cast<std::uint32_t>(dist.code()));
    }
  }
  r.zero_distance_occurs = achieved.count(0) > 0;
  r.distances_with_zero = static_cast<int>(achieved.size());
  r.distances_nonzero = r.distances_with_zero - (r.zero_distance_occurs ? 1 : 0);
  const auto bound = [q](std::int64_t m) { return q + m * (m - 1); };
  r.bound_nonzero = bound(r.distances_nonzero);
  r.bound_with_zero = bound(r.distances_with_zero);
  r.holds_nonzero = r.set_size <= r.bound_nonzero;
  r.holds_with_zero = r.set_size <= r.bound_with_zero;
  return r;
}

}  // namespace eas::intersect
