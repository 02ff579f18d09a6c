#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "eas/reports.hpp"
#include "eas/util.hpp"

namespace {

using eas::reports::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& config, std::string& out_path) {
  cmd->add_option("--q", config.q, "Field order (odd prime power)");
  cmd->add_option("--p", config.p, "Field characteristic (alternative to --q)");
  cmd->add_option("--ell-ext", config.ell_ext, "Extension degree (with --p)");
  cmd->add_option("--format", config.format, "Output format: csv or json")
      ->default_str("csv");
  cmd->add_option("--q-max-cap", config.q_max_cap, "Reject field orders above this cap");
  cmd->add_option("--out", out_path, "Write the report to a file instead of stdout");
}

int run_report(const std::string& out_path, const std::function<std::string()>& build) {
  try {
    const std::string doc = build();
    if (out_path.empty()) {
      std::cout << doc;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return 1;
      }
      out << doc;
    }
    return 0;
  } catch (const eas::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const eas::ResidualError& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Euclidean association scheme toolkit: Kloosterman sums, P/Q matrices,\n"
      "intersection numbers, distance-t random walks, and Sato-Tate\n"
      "equidistribution diagnostics over F_q^d.\n"
      "Environment: SCHEME_NUM_THREADS caps worker threads (0 = auto)."};
  app.require_subcommand(1);

  RunConfig config;
  std::string out_path;

  auto* kl = app.add_subcommand(
      "kloosterman", "Table of K(1,a) with Kloosterman angles and moment footer");
  add_common_flags(kl, config, out_path);
  kl->add_option("--max-m", config.max_m, "Number of moments in the footer (default 2)");

  auto* sc = app.add_subcommand("scheme", "P, Q, D matrices with identity residuals");
  add_common_flags(sc, config, out_path);
  sc->add_option("--d", config.d, "Dimension of the vector space (2..4)");

  auto* in = app.add_subcommand("intersect", "Intersection number p_{i,j}^k");
  add_common_flags(in, config, out_path);
  in->add_option("--d", config.d, "Dimension of the vector space (2..4)");
  in->add_option("--i", config.i_dist, "Distance i (field encoding or 'zbar')");
  in->add_option("--j", config.j_dist, "Distance j (field encoding or 'zbar')");
  in->add_option("--k", config.k_dist, "Distance k (field encoding or 'zbar')");
  in->add_flag("--oracle", config.oracle, "Cross-check against brute-force enumeration");

  auto* wa = app.add_subcommand("walk", "Return probability of the distance-t walk");
  add_common_flags(wa, config, out_path);
  wa->add_option("--t", config.t, "Step distance t (nonzero field encoding)");
  wa->add_option("--steps", config.steps, "Number of steps");
  wa->add_option("--trials", config.trials, "Monte-Carlo trials (0 = skip simulation)");
  wa->add_option("--seed", config.seed, "Monte-Carlo seed");

  auto* eq = app.add_subcommand(
      "equidist", "Kolmogorov-Smirnov distance to Sato-Tate and moment ratios");
  add_common_flags(eq, config, out_path);
  eq->add_option("--max-m", config.max_m, "Moment ratio rows (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // any command-line defect is a validation error
  }

  if (kl->parsed()) return run_report(out_path, [&] { return eas::reports::kloosterman_report(config); });
  if (sc->parsed()) return run_report(out_path, [&] { return eas::reports::scheme_report(config); });
  if (in->parsed()) return run_report(out_path, [&] { return eas::reports::intersect_report(config); });
  if (wa->parsed()) return run_report(out_path, [&] { return eas::reports::walk_report(config); });
  if (eq->parsed()) return run_report(out_path, [&] { return eas::reports::equidist_report(config); });
  return 1;
}
