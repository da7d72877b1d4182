#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annulus/config.hpp"
#include "annulus/errors.hpp"
#include "annulus/field.hpp"
#include "json.hpp"

namespace annulus {

struct RouteOutput {
  Method method = Method::vortex_transport;  // never Method::both
  PolarVectorField u;
  ScalarField p;
  std::optional<ScalarField> omega;  // vortex_transport
  std::optional<ScalarField> phi;    // grad_shafranov, the full stream function
  nlohmann::json report;
};

struct RunOutcome {
  std::vector<RouteOutput> routes;
  nlohmann::json report;
  int exit_code = 0;  // 0, or 4 when a primed kind fails its compatibility check
};

// Solves with the configured route(s) and assembles the report. Solver
// failures propagate as SolverError.
RunOutcome run(const RunConfig& cfg);

// report.json plus, when cfg.write_fields, u_r.csv, u_theta.csv, p.csv and
// omega.csv / phi.csv; method both writes gs/ and vt/ subdirectories.
void write_outputs(const RunOutcome& outcome, const RunConfig& cfg);

// Report written when a run fails.
nlohmann::json error_report(const RunConfig& cfg, const SolverError& e);
void write_error_report(const RunConfig& cfg, const SolverError& e);

// Directory a route's fields go to.
std::string route_dir(const RunConfig& cfg, Method route);

// Rereads a route's fields from disk and recomputes its Euler residuals;
// returns the largest difference to the numbers in the route report.
double roundtrip_defect(const RunConfig& cfg, const RouteOutput& route);

// Oracle fields on a grid; nullopt for Oracle::Kind::none.
std::optional<std::pair<PolarVectorField, ScalarField>> oracle_fields(const Oracle& o,
                                                                      const AnnulusGrid& g);

}  // namespace annulus
