#pragma once

#include <cstdint>
#include <string>

#include "eas/gf.hpp"

namespace eas::reports {

// Parsed command configuration. Validation happens in resolve_field /
// the per-command builders; bad values raise ValidationError (CLI exit 1)
// and failed internal cross-checks raise ResidualError (CLI exit 2).
struct RunConfig {
  std::int64_t q = 0;
  std::int64_t p = 0;   // optional (p, ell_ext) field hint; must match q if both given
  int ell_ext = 0;
  int d = 2;
  std::int64_t t = 1;
  int steps = 2;
  std::int64_t trials = 0;
  std::uint64_t seed = 12345;
  int max_m = 0;        // 0 = command default
  std::string format = "csv";  // csv | json
  std::string i_dist = "1";
  std::string j_dist = "1";
  std::string k_dist = "1";
  bool oracle = false;
  std::int64_t q_max_cap = kMaxFieldOrder;
};

const gf::Field& resolve_field(const RunConfig& config);

// Each builder returns the complete report document (CSV or JSON per
// config.format). Output is byte-identical for identical configs.
std::string kloosterman_report(const RunConfig& config);
std::string scheme_report(const RunConfig& config);
std::string intersect_report(const RunConfig& config);
std::string walk_report(const RunConfig& config);
std::string equidist_report(const RunConfig& config);

}  // namespace eas::reports
