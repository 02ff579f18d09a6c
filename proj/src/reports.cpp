#include "eas/reports.hpp"

#include <sstream>

#include "json.hpp"

#include "eas/charsums.hpp"
#include "eas/equidist.hpp"
#include "eas/intersect.hpp"
#include "eas/scheme.hpp"
#include "eas/walks.hpp"

namespace eas::reports {

namespace {

using json = nlohmann::ordered_json;
using gf::Field;
using scheme::Distance;

void check_format(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json")
    throw ValidationError("format must be csv or json, got '" + c.format + "'");
}

std::string fd(double x) { return format_double(x); }

}  // namespace

const Field& resolve_field(const RunConfig& config) {
  std::int64_t q = config.q;
  if (config.p != 0 || config.ell_ext != 0) {
    if (config.p == 0) throw ValidationError("--ell-ext requires --p");
    const int ell = config.ell_ext == 0 ? 1 : config.ell_ext;
    std::int64_t from_hint = 1;
    for (int i = 0; i < ell; ++i) {
      from_hint *= config.p;
      if (from_hint > kMaxFieldOrder) throw ValidationError("p^ell exceeds the order cap");
    }
    if (q != 0 && q != from_hint)
      throw ValidationError("--q disagrees with --p/--ell-ext");
    q = from_hint;
  }
  if (q == 0) throw ValidationError("a field order is required (--q or --p/--ell-ext)");
  if (q > config.q_max_cap)
    throw ValidationError("q exceeds the configured cap " + std::to_string(config.q_max_cap));
  const auto pp = factor_prime_power(q);
  if (!pp || pp->p == 2 || !is_prime(pp->p))
    throw ValidationError(std::to_string(q) + " is not an odd prime power");
  return Field::of(pp->p, pp->ell);
}

std::string kloosterman_report(const RunConfig& config) {
  check_format(config);
  const Field& f = resolve_field(config);
  const std::int64_t q = f.q();
  const int max_ell = config.max_m > 0 ? config.max_m : 2;

  const auto& k1 = charsums::k1_values(f);
  const auto table = charsums::moments(f, max_ell);

  if (config.format == "json") {
    json doc;
    doc["q"] = q;
    doc["p"] = f.p();
    doc["ell"] = f.ext_degree();
    json rows = json::array();
    for (std::int64_t a = 1; a < q; ++a) {
      const double k = k1[static_cast<std::size_t>(a)];
      rows.push_back(json{{"a", a},
                          {"K", k},
                          {"theta", charsums::angle_from_value(k, q)}});
    }
    doc["rows"] = std::move(rows);
    json moments = json::array();
    for (int ell = 1; ell <= max_ell; ++ell)
      moments.push_back(json{{"ell", ell}, {"M", int128_to_string(table.value(ell))}});
    doc["moments"] = std::move(moments);
    return doc.dump() + "\n";
  }

  std::ostringstream out;
  out << "a,K,theta\n";
  for (std::int64_t a = 1; a < q; ++a) {
    const double k = k1[static_cast<std::size_t>(a)];
    out << a << ',' << fd(k) << ',' << fd(charsums::angle_from_value(k, q)) << '\n';
  }
  for (int ell = 1; ell <= max_ell; ++ell)
    out << "M_" << ell << ',' << int128_to_string(table.value(ell)) << ",\n";
  return out.str();
}

std::string scheme_report(const RunConfig& config) {
  check_format(config);
  const Field& f = resolve_field(config);
  const auto m = scheme::scheme_matrices(f, config.d);
  const int n = static_cast<int>(m.delta.size());
  const double residual_pq = m.pq_residual();
  const double residual_p2 = config.d == 2 ? m.p_squared_residual() : 0.0;
  const double tol = scheme::tol_mat(f.q(), config.d);
  if (residual_pq > tol || (config.d == 2 && residual_p2 > tol))
    throw ResidualError("scheme matrix identity residual above tolerance");

  if (config.format == "json") {
    json doc;
    doc["q"] = f.q();
    doc["d"] = config.d;
    json labels = json::array();
    for (int i = 0; i < n; ++i) labels.push_back(m.delta.at(i).label());
    doc["delta"] = std::move(labels);
    doc["sphere_sizes"] = m.sphere_sizes;
    doc["weight_dims"] = m.weight_dims;
    auto matrix_json = [n](const Matrix& a) {
      json rows = json::array();
      for (int r = 0; r < n; ++r) {
        json row = json::array();
        for (int c = 0; c < n; ++c) row.push_back(a(r, c));
        rows.push_back(std::move(row));
      }
      return rows;
    };
    doc["P"] = matrix_json(m.P);
    doc["Q"] = matrix_json(m.Q);
    doc["residual_pq"] = residual_pq;
    if (config.d == 2) doc["residual_p2"] = residual_p2;
    return doc.dump() + "\n";
  }

  std::ostringstream out;
  out << "matrix,row";
  for (int i = 0; i < n; ++i) out << ',' << m.delta.at(i).label();
  out << '\n';
  out << "D,";
  for (int i = 0; i < n; ++i) out << ',' << m.sphere_sizes[i];
  out << '\n';
  auto emit_matrix = [&](const char* name, const Matrix& a) {
    for (int r = 0; r < n; ++r) {
      out << name << ',' << m.delta.at(r).label();
      for (int c = 0; c < n; ++c) out << ',' << fd(a(r, c));
      out << '\n';
    }
  };
  emit_matrix("P", m.P);
  emit_matrix("Q", m.Q);
  out << "residual_pq,," << fd(residual_pq) << '\n';
  if (config.d == 2) out << "residual_p2,," << fd(residual_p2) << '\n';
  return out.str();
}

std::string intersect_report(const RunConfig& config) {
  check_format(config);
  const Field& f = resolve_field(config);
  const Distance di = Distance::parse(config.i_dist);
  const Distance dj = Distance::parse(config.j_dist);
  const Distance dk = Distance::parse(config.k_dist);

  std::int64_t value = 0;
  if (config.d == 2 && !di.is_formal_zero() && !dj.is_formal_zero() && !dk.is_formal_zero()) {
    value = intersect::planar_intersection(di.code(), dj.code(), dk.code(), f);
  } else {
    const auto table = intersect::IntersectionTable::make(f, config.d);
    value = table.p(table.delta().index_of(di), table.delta().index_of(dj),
                    table.delta().index_of(dk));
  }

  bool have_oracle = false;
  std::int64_t oracle_value = 0;
  if (config.oracle) {
    have_oracle = true;
    oracle_value = intersect::brute_force_intersection(di, dj, dk, f, config.d);
    if (oracle_value != value)
      throw ResidualError("closed form and brute force disagree on p_{i,j}^k");
  }

  if (config.format == "json") {
    json doc;
    doc["q"] = f.q();
    doc["d"] = config.d;
    doc["i"] = di.label();
    doc["j"] = dj.label();
    doc["k"] = dk.label();
    doc["p_ijk"] = value;
    if (have_oracle) {
      doc["oracle"] = oracle_value;
      doc["match"] = oracle_value == value;
    }
    return doc.dump() + "\n";
  }

  std::ostringstream out;
  out << "key,value\n";
  out << "q," << f.q() << '\n';
  out << "d," << config.d << '\n';
  out << "i," << di.label() << '\n';
  out << "j," << dj.label() << '\n';
  out << "k," << dk.label() << '\n';
  out << "p_ijk," << value << '\n';
  if (have_oracle) {
    out << "oracle," << oracle_value << '\n';
    out << "match," << (oracle_value == value ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string walk_report(const RunConfig& config) {
  check_format(config);
  const Field& f = resolve_field(config);
  const auto report = walks::return_probability(f, config.t, config.steps);

  bool have_mc = false;
  walks::MonteCarloResult mc;
  if (config.trials > 0) {
    have_mc = true;
    mc = walks::simulate_walk(f, config.t, config.steps, config.trials, config.seed);
  }

  if (config.format == "json") {
    json doc;
    doc["q"] = report.q;
    doc["t"] = report.t_code;
    doc["steps"] = report.ell;
    doc["exact"] = report.exact.str();
    doc["float"] = report.float_return;
    doc["asymptotic"] = report.asymptotic;
    doc["trace"] = int128_to_string(report.trace_value);
    doc["q_is_prime"] = report.q_is_prime;
    if (have_mc) {
      doc["mc_estimate"] = mc.estimate;
      doc["mc_stderr"] = mc.standard_error;
      doc["trials"] = mc.trials;
      doc["seed"] = mc.seed;
    }
    return doc.dump() + "\n";
  }

  std::ostringstream out;
  out << "key,value\n";
  out << "q," << report.q << '\n';
  out << "t," << report.t_code << '\n';
  out << "steps," << report.ell << '\n';
  out << "exact," << report.exact.str() << '\n';
  out << "float," << fd(report.float_return) << '\n';
  out << "asymptotic," << fd(report.asymptotic) << '\n';
  out << "trace," << int128_to_string(report.trace_value) << '\n';
  out << "q_is_prime," << (report.q_is_prime ? "true" : "false") << '\n';
  if (have_mc) {
    out << "mc_estimate," << fd(mc.estimate) << '\n';
    out << "mc_stderr," << fd(mc.standard_error) << '\n';
    out << "trials," << mc.trials << '\n';
    out << "seed," << mc.seed << '\n';
  }
  return out.str();
}

std::string equidist_report(const RunConfig& config) {
  check_format(config);
  const Field& f = resolve_field(config);
  const int max_m = config.max_m > 0 ? config.max_m : 3;
  const double ks = equidist::ks_distance(f);
  const auto rows = equidist::moment_asymptotics_report(f, max_m);

  if (config.format == "json") {
    json doc;
    doc["q"] = f.q();
    doc["ks_distance"] = ks;
    json table = json::array();
    for (const auto& r : rows)
      table.push_back(json{{"m", r.m},
                           {"catalan", r.catalan_m},
                           {"even_ratio", r.even_ratio},
                           {"odd_normalized", r.odd_normalized}});
    doc["moments"] = std::move(table);
    return doc.dump() + "\n";
  }

  std::ostringstream out;
  out << "key,value\n";
  out << "q," << f.q() << '\n';
  out << "ks_distance," << fd(ks) << '\n';
  out << "m,catalan,even_ratio,odd_normalized\n";
  for (const auto& r : rows)
    out << r.m << ',' << r.catalan_m << ',' << fd(r.even_ratio) << ','
        << fd(r.odd_normalized) << '\n';
  return out.str();
}

}  // namespace eas::reports
