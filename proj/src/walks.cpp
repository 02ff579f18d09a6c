#include "eas/walks.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace eas::walks {

namespace {

void require_unit_t(const Field& field, std::int64_t t_code) {
  if (t_code <= 0 || t_code >= field.q())
    throw ValidationError("walk distance t must be a nonzero field element");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t r = gen();
  while (r > lim) r = gen();
  return r % n;
}

}  // namespace

Int128 trace_power(const Field& field, std::int64_t t_code, int ell) {
  require_unit_t(field, t_code);
  if (ell < 1) throw ValidationError("trace_power: ell >= 1 required");
  const std::int64_t q = field.q();
  const Int128 moment = charsums::moments(field, ell).value(ell);
  const Int128 sign = ell % 2 == 0 ? 1 : -1;
  if (q % 4 == 3) {
    return checked_add(checked_pow(q + 1, ell),
                       checked_mul(checked_mul(q + 1, sign), moment));
  }
  return checked_add(
      checked_add(checked_pow(q - 1, ell), checked_mul(2 * (q - 1), sign)),
      checked_mul(q - 1, moment));
}

WalkReport return_probability(const Field& field, std::int64_t t_code, int ell) {
  require_unit_t(field, t_code);
  if (ell < 1) throw ValidationError("return_probability: ell >= 1 required");
  const std::int64_t q = field.q();
  const Int128 moment = charsums::moments(field, ell).value(ell);
  const Int128 sign = ell % 2 == 0 ? 1 : -1;

  // Moment route.
  Rational from_moments;
  if (q % 4 == 3) {
    const Int128 num = checked_add(checked_pow(q + 1, ell - 1), checked_mul(sign, moment));
    from_moments = Rational::make(num, checked_mul(q * q, checked_pow(q + 1, ell - 1)));
  } else {
    const Int128 num = checked_add(checked_add(checked_pow(q - 1, ell - 1),
                                               checked_mul(2, sign)),
                                   moment);
    from_moments = Rational::make(num, checked_mul(q * q, checked_pow(q - 1, ell - 1)));
  }

  // Trace route.
  const std::int64_t degree =
      scheme::sphere_size(scheme::Distance::field_value(t_code), field, 2);
  const Int128 trace = trace_power(field, t_code, ell);
  const Rational from_trace =
      Rational::make(trace, checked_mul(q * q, checked_pow(degree, ell)));

  if (!(from_moments == from_trace))
    throw ResidualError("return probability: moment route and trace route disagree");
  if (from_trace.num < 0 || from_trace.num > from_trace.den)
    throw ResidualError("return probability outside [0, 1]");

  WalkReport r;
  r.q = q;
  r.t_code = t_code;
  r.ell = ell;
  r.exact = from_trace;
  r.float_return = from_trace.to_double();
  r.asymptotic = asymptotic_return(q, ell);
  r.trace_value = trace;
  r.q_is_prime = field.ext_degree() == 1;
  return r;
}

double asymptotic_return(std::int64_t q, int ell) {
  if (ell < 1) throw ValidationError("asymptotic_return: ell >= 1 required");
  const double qd = static_cast<double>(q);
  const double base = 1.0 / (qd * qd);
  if (ell % 2 != 0) return base;
  const int m = ell / 2;
  return base + static_cast<double>(catalan(m)) / std::pow(qd, m);
}

MonteCarloResult simulate_walk(const Field& field, std::int64_t t_code, int ell,
                               std::int64_t trials, std::uint64_t seed) {
  require_unit_t(field, t_code);
  if (ell < 1) throw ValidationError("simulate_walk: ell >= 1 required");
  if (trials < 1) throw ValidationError("simulate_walk: trials >= 1 required");
  const std::int64_t q = field.q();

  // Connection set S_t as coordinate pairs.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sphere;
  const auto tc = static_cast<std::uint32_t>(t_code);
  for (std::int64_t u = 0; u < q; ++u) {
    for (std::int64_t v = 0; v < q; ++v) {
      if (u == 0 && v == 0) continue;
      const auto uc = static_cast<std::uint32_t>(u);
      const auto vc = static_cast<std::uint32_t>(v);
      if (field.add_code(field.mul_code(uc, uc), field.mul_code(vc, vc)) == tc)
        sphere.emplace_back(uc, vc);
    }
  }
  if (sphere.empty()) throw ResidualError("empty sphere for nonzero t: arithmetic bug");

  constexpr std::int64_t kBlock = 1 << 16;
  std::int64_t successes = 0;
  const std::int64_t blocks = (trials + kBlock - 1) / kBlock;
  std::vector<std::int64_t> per_block(static_cast<std::size_t>(blocks), 0);
  parallel_for(blocks, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t b = begin; b < end; ++b) {
      std::mt19937_64 gen(splitmix64(seed + static_cast<std::uint64_t>(b)));
      const std::int64_t lo = b * kBlock;
      const std::int64_t hi = std::min(trials, lo + kBlock);
      std::int64_t hits = 0;
      for (std::int64_t trial = lo; trial < hi; ++trial) {
        std::uint32_t x = 0, y = 0;
        for (int step = 0; step < ell; ++step) {
          const auto& s = sphere[uniform_below(gen, sphere.size())];
          x = field.add_code(x, s.first);
          y = field.add_code(y, s.second);
        }
        if (x == 0 && y == 0) ++hits;
      }
      per_block[static_cast<std::size_t>(b)] = hits;
    }
  });
  for (const auto h : per_block) successes += h;

  MonteCarloResult r;
  r.trials = trials;
  r.successes = successes;
  r.seed = seed;
  r.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  r.standard_error =
      std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
  return r;
}

IntMatrix dense_adjacency(const Field& field, const Distance& t) {
  const std::int64_t q = field.q();
  if (q > 31) throw ValidationError("dense adjacency oracle capped at q <= 31");
  if (t.is_formal_zero()) return IntMatrix::identity(static_cast<int>(q * q));
  const std::int64_t tc = t.code();
  if (tc == 0 && q % 4 == 3)
    throw ValidationError("distance 0 does not occur for d = 2, q = 3 mod 4");

  const int n = static_cast<int>(q * q);
  IntMatrix a(n, n);
  for (std::int64_t x1 = 0; x1 < q; ++x1) {
    for (std::int64_t y1 = 0; y1 < q; ++y1) {
      const int row = static_cast<int>(x1 * q + y1);
      for (std::int64_t x2 = 0; x2 < q; ++x2) {
        for (std::int64_t y2 = 0; y2 < q; ++y2) {
          const int col = static_cast<int>(x2 * q + y2);
          if (row == col) continue;
          const std::uint32_t dx =
              field.sub_code(static_cast<std::uint32_t>(x1), static_cast<std::uint32_t>(x2));
          const std::uint32_t dy =
              field.sub_code(static_cast<std::uint32_t>(y1), static_cast<std::uint32_t>(y2));
          const std::uint32_t dist =
              field.add_code(field.mul_code(dx, dx), field.mul_code(dy, dy));
          if (dist == static_cast<std::uint32_t>(tc)) a(row, col) = 1;
        }
      }
    }
  }
  return a;
}

}  // namespace eas::walks
