#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "annulus/config.hpp"
#include "annulus/convergence.hpp"
#include "annulus/errors.hpp"
#include "annulus/parallel.hpp"
#include "annulus/run.hpp"

using namespace annulus;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string grid;
  std::string method;
  bool quiet = false;
  int levels = 3;
};

// Largest round-trip difference verify accepts between recomputed and
// reported residuals.
constexpr double kRoundTripTol = 1e-12;

RunConfig load(const Options& o) {
  RunConfig cfg = load_config(o.config);
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (!o.grid.empty()) cfg.grid = parse_grid(o.grid, cfg.grid);
  if (!o.method.empty()) cfg.method = parse_method(o.method);
  check_compatibility(cfg.bc_kind, cfg.method);
  return cfg;
}

void print_summary(const RunOutcome& outcome) {
  const auto& rep = outcome.report;
  std::printf("bc_kind %s  method %s  status %s\n", rep["bc_kind"].get<std::string>().c_str(),
              rep["method"].get<std::string>().c_str(), rep["status"].get<std::string>().c_str());
  for (const RouteOutput& r : outcome.routes) {
    const auto& rr = r.report;
    std::printf("  %-17s converged %d  iterations %d  euler residual %.3e  flux defect %.3e\n",
                rr["method"].get<std::string>().c_str(), rr["converged"].get<bool>(),
                rr["iterations"].get<int>(), rr["euler_residual_inf"].get<double>(),
                rr["flux_defect"].get<double>());
    for (const auto& [name, value] : rr["bc_residuals"].items())
      std::printf("    %-26s %.3e\n", name.c_str(), value.get<double>());
    if (rr.contains("oracle_errors"))
      std::printf("    oracle u error %.3e  p error %.3e\n",
                  rr["oracle_errors"]["u_inf"].get<double>(),
                  rr["oracle_errors"]["p_inf_mod_const"].get<double>());
    for (const auto& w : rr["warnings"]) std::printf("    warning: %s\n", w.get<std::string>().c_str());
  }
  if (rep.contains("cross_method_gap"))
    std::printf("  cross-method gap  u %.3e  p %.3e\n", rep["cross_method_gap"]["u_inf"].get<double>(),
                rep["cross_method_gap"]["p_inf_mod_const"].get<double>());
  if (rep.contains("compat"))
    std::printf("  compatibility gap %.3e (%s)\n", rep["compat"]["gap"].get<double>(),
                rep["compat"]["ok"].get<bool>() ? "accepted" : "rejected");
}

int cmd_solve(const Options& o, bool verify) {
  RunConfig cfg = load(o);
  if (verify) cfg.write_fields = true;
  try {
    const RunOutcome outcome = run(cfg);
    write_outputs(outcome, cfg);
    if (!o.quiet) print_summary(outcome);
    if (verify) {
      for (const RouteOutput& r : outcome.routes) {
        const double d = roundtrip_defect(cfg, r);
        if (!o.quiet) std::printf("  round-trip defect (%s) %.3e\n", r.report["method"].get<std::string>().c_str(), d);
        if (!(d <= kRoundTripTol)) {
          std::fprintf(stderr, "round-trip check failed: %.3e\n", d);
          return 1;
        }
      }
    }
    return outcome.exit_code;
  } catch (const SolverError& e) {
    write_error_report(cfg, e);
    throw;
  }
}

int cmd_converge(const Options& o) {
  const RunConfig cfg = load(o);
  if (o.levels < 3) throw SolverError(ErrorKind::ConfigError, "--levels must be at least 3");
  const ConvergenceStudy study = convergence_study(cfg, nested_levels(cfg.grid, o.levels));
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  std::ofstream(dir / "convergence.csv") << to_csv(study);
  std::ofstream(dir / "convergence.json") << to_json(study).dump(2) << '\n';
  if (!o.quiet) std::fputs(to_table(study).c_str(), stdout);
  return 0;
}

int cmd_compare(Options o) {
  o.method = "both";
  return cmd_solve(o, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady incompressible Euler flows on an annulus"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "YAML run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output directory (overrides output.dir)");
    sub->add_option("--grid", o.grid, "grid as NRxNT, e.g. 65x128");
    sub->add_flag("--quiet", o.quiet, "print nothing on success");
  };
  CLI::App* solve = app.add_subcommand("solve", "solve and write fields and report.json");
  CLI::App* verify = app.add_subcommand("verify", "solve, write, reread and check the reported residuals");
  CLI::App* converge = app.add_subcommand("converge", "refinement study over nested grids");
  CLI::App* compare = app.add_subcommand("compare", "solve with both routes and report their gap");
  for (CLI::App* sub : {solve, verify, converge, compare}) add_common(sub);
  for (CLI::App* sub : {solve, verify, converge})
    sub->add_option("--method", o.method, "grad_shafranov, vortex_transport or both");
  converge->add_option("--levels", o.levels, "number of nested levels (>= 3)");

  CLI11_PARSE(app, argc, argv);
  configure_threads_from_env();

  try {
    if (solve->parsed()) return cmd_solve(o, false);
    if (verify->parsed()) return cmd_solve(o, true);
    if (converge->parsed()) return cmd_converge(o);
    return cmd_compare(o);
  } catch (const SolverError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
