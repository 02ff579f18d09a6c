#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eas {

// Hard cap on field orders; guards accidental huge enumerations.
inline constexpr std::int64_t kMaxFieldOrder = std::int64_t{1} << 20;

// Bad user input (CLI exit 1).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A built-in mathematical cross-check failed (CLI exit 2). Signals an
// arithmetic bug, never bad input.
struct ResidualError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(std::int64_t n);

struct PrimePower {
  std::int64_t p = 0;
  int ell = 0;
};

// q = p^ell with p prime, or nullopt.
std::optional<PrimePower> factor_prime_power(std::int64_t q);

// Distinct prime factors, ascending.
std::vector<std::int64_t> distinct_prime_factors(std::int64_t n);

// Thread count from SCHEME_NUM_THREADS (0 or unset = hardware concurrency).
int worker_thread_count();

// Runs body(begin, end) over a partition of [0, n). Callers must only write
// to disjoint output slots; no reduction is performed, so results do not
// depend on the partition.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body);

// Compensated (Kahan) accumulator.
struct KahanAccumulator {
  long double sum = 0.0L;
  long double carry = 0.0L;

  void add(long double x) {
    const long double y = x - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Fixed 12-significant-digit rendering used by every report writer.
std::string format_double(double x);

// Exact binomial coefficient (small arguments; throws on int64 overflow).
std::int64_t binomial(int n, int k);
// Catalan number C(2m, m) / (m + 1).
std::int64_t catalan(int m);

}  // namespace eas
