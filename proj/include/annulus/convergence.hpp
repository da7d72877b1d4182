#pragma once

#include <optional>
#include <string>
#include <vector>

#include "annulus/config.hpp"
#include "json.hpp"

namespace annulus {

struct ConvergenceLevel {
  int nr = 0, ntheta = 0;
  double dr = 0.0;
  double u_error = 0.0;
  double p_error = 0.0;  // modulo a constant
  double residual_inf = 0.0;
  double split_residual_inf = 0.0;
  int iterations = 0;
};

struct ConvergenceStudy {
  std::string reference;  // "oracle" or "fine_grid"
  std::vector<ConvergenceLevel> levels;
  // Least-squares slope of log error against log dr; nullopt when every error
  // is at round-off.
  std::optional<double> u_order, p_order;
};

// Nested levels double both resolutions: (nr - 1) and ntheta each double
// from one level to the next. Errors are measured against the configured
// oracle, else against a run on a grid twice as fine as the finest level.
// The first route is measured when cfg.method is both.
ConvergenceStudy convergence_study(const RunConfig& cfg, const std::vector<GridSpec>& levels);

// levels starting at base and doubling count - 1 times.
std::vector<GridSpec> nested_levels(const GridSpec& base, int count);

// Least-squares slope of log(err) over log(h).
double least_squares_order(const std::vector<double>& h, const std::vector<double>& err);

nlohmann::json to_json(const ConvergenceStudy& s);
std::string to_csv(const ConvergenceStudy& s);
std::string to_table(const ConvergenceStudy& s);

}  // namespace annulus
