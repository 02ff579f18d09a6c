#pragma once

#include <cstdint>
#include <vector>

#include "eas/charsums.hpp"
#include "eas/gf.hpp"
#include "eas/linalg.hpp"
#include "eas/rational.hpp"
#include "eas/scheme.hpp"

namespace eas::walks {

using gf::Field;
using scheme::Distance;

// Closed-walk count Trace(A_t^ell) for the planar distance-t graph, t != 0,
// via Kloosterman moments:
//   q = 3 mod 4: (q+1)^ell + (q+1)(-1)^ell M_{q,ell}
//   q = 1 mod 4: (q-1)^ell + (2q-2)(-1)^ell + (q-1) M_{q,ell}
Int128 trace_power(const Field& field, std::int64_t t_code, int ell);

struct WalkReport {
  std::int64_t q = 0;
  std::int64_t t_code = 0;
  int ell = 0;
  Rational exact;                 // R_{q,ell,t}, exact
  double float_return = 0.0;
  double asymptotic = 0.0;
  Int128 trace_value = 0;         // Trace(A_t^ell)
  bool q_is_prime = false;        // the closed forms are classical for prime
                                  // q; prime powers are computed and flagged
};

// Exact return probability of the distance-t walk after ell steps. Two
// independent integer routes (moment formula vs trace / (q^2 |S_t|^ell)) are
// computed and must agree; disagreement throws ResidualError.
WalkReport return_probability(const Field& field, std::int64_t t_code, int ell);

// Large-q prediction: 1/q^2 + catalan(m)/q^m for ell = 2m, 1/q^2 for odd ell.
double asymptotic_return(std::int64_t q, int ell);

struct MonteCarloResult {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t seed = 0;
};

// Seeded simulation of the distance-t walk from the origin (the graph is
// vertex-transitive so the start is irrelevant). Trials are split into
// fixed-size blocks; block b uses an mt19937_64 engine seeded by
// splitmix64(seed, b), and index draws use rejection sampling, so the result
// is reproducible bit-for-bit across platforms and thread counts.
MonteCarloResult simulate_walk(const Field& field, std::int64_t t_code, int ell,
                               std::int64_t trials, std::uint64_t seed);

// Literal adjacency matrix of the planar distance-t graph on q^2 vertices
// (vertex enc u*q + v); validation oracle, capped at q <= 31.
IntMatrix dense_adjacency(const Field& field, const Distance& t);

}  // namespace eas::walks
