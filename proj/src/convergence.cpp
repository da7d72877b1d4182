#include "annulus/convergence.hpp"

#include <cmath>
#include <cstdio>

#include "annulus/errors.hpp"
#include "annulus/run.hpp"

namespace annulus {

namespace {

constexpr double kRoundoff = 1e-11;

// Restriction of a fine field onto the nodes of a nested coarse grid.
ScalarField restrict_to(const ScalarField& fine, const AnnulusGrid& coarse) {
  const AnnulusGrid& fg = fine.grid();
  const int sr = (fg.nr() - 1) / (coarse.nr() - 1);
  const int st = fg.ntheta() / coarse.ntheta();
  ScalarField out(coarse);
  for (int i = 0; i < coarse.nr(); ++i)
    for (int j = 0; j < coarse.ntheta(); ++j) out(i, j) = fine(i * sr, j * st);
  return out;
}

bool nested(const GridSpec& coarse, const GridSpec& fine) {
  return coarse.r0 == fine.r0 && coarse.r1 == fine.r1 && (fine.nr - 1) % (coarse.nr - 1) == 0 &&
         fine.ntheta % coarse.ntheta == 0 && fine.nr >= coarse.nr;
}

std::optional<double> order_or_none(const std::vector<double>& h, const std::vector<double>& err) {
  for (double e : err)
    if (e > kRoundoff) return least_squares_order(h, err);
  return std::nullopt;
}

}  // namespace

std::vector<GridSpec> nested_levels(const GridSpec& base, int count) {
  std::vector<GridSpec> out;
  GridSpec g = base;
  for (int k = 0; k < count; ++k) {
    out.push_back(g);
    g.nr = 2 * (g.nr - 1) + 1;
    g.ntheta *= 2;
  }
  return out;
}

double least_squares_order(const std::vector<double>& h, const std::vector<double>& err) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double x = std::log(h[k]), y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const RunConfig& cfg, const std::vector<GridSpec>& levels) {
  if (levels.size() < 3)
    throw SolverError(ErrorKind::ConfigError, "a convergence study needs at least 3 levels");
  for (std::size_t k = 1; k < levels.size(); ++k)
    if (!nested(levels[k - 1], levels[k]))
      throw SolverError(ErrorKind::ConfigError, "convergence levels are not nested");

  auto solve_on = [&](const GridSpec& g) {
    RunConfig c = cfg;
    c.grid = g;
    RunOutcome o = run(c);
    return std::move(o.routes.front());
  };

  ConvergenceStudy study;
  std::optional<RouteOutput> reference;
  if (cfg.oracle.kind == Oracle::Kind::none) {
    study.reference = "fine_grid";
    reference = solve_on(nested_levels(levels.back(), 2).back());
  } else {
    study.reference = "oracle";
  }

  std::vector<double> h, eu, ep;
  for (const GridSpec& level : levels) {
    const RouteOutput route = solve_on(level);
    const AnnulusGrid grid = level.make();
    ConvergenceLevel lv{level.nr, level.ntheta, grid.dr()};
    if (reference) {
      const PolarVectorField uref{restrict_to(reference->u.vr, grid),
                                  restrict_to(reference->u.vtheta, grid)};
      lv.u_error = max_abs_diff(route.u, uref);
      lv.p_error = max_abs_diff_mod_const(route.p, restrict_to(reference->p, grid));
    } else {
      const auto exact = oracle_fields(cfg.oracle, grid);
      lv.u_error = max_abs_diff(route.u, exact->first);
      lv.p_error = max_abs_diff_mod_const(route.p, exact->second);
    }
    lv.residual_inf = route.report.at("euler_residual_plain_inf").get<double>();
    lv.split_residual_inf = route.report.at("euler_residual_inf").get<double>();
    lv.iterations = route.report.at("iterations").get<int>();
    study.levels.push_back(lv);
    h.push_back(lv.dr);
    eu.push_back(lv.u_error);
    ep.push_back(lv.p_error);
  }
  study.u_order = order_or_none(h, eu);
  study.p_order = order_or_none(h, ep);
  return study;
}

nlohmann::json to_json(const ConvergenceStudy& s) {
  nlohmann::json levels = nlohmann::json::array();
  for (const ConvergenceLevel& l : s.levels)
    levels.push_back({{"nr", l.nr},
                      {"ntheta", l.ntheta},
                      {"dr", l.dr},
                      {"u_error", l.u_error},
                      {"p_error", l.p_error},
                      {"residual_inf", l.residual_inf},
                      {"split_residual_inf", l.split_residual_inf},
                      {"iterations", l.iterations}});
  auto order = [](const std::optional<double>& o) -> nlohmann::json {
    if (o) return *o;
    return "n/a";
  };
  return {{"reference", s.reference},
          {"levels", levels},
          {"u_order", order(s.u_order)},
          {"p_order", order(s.p_order)}};
}

std::string to_csv(const ConvergenceStudy& s) {
  std::string out = "nr,ntheta,dr,u_error,p_error,residual_inf,split_residual_inf,iterations\n";
  char line[256];
  for (const ConvergenceLevel& l : s.levels) {
    std::snprintf(line, sizeof line, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", l.nr, l.ntheta,
                  l.dr, l.u_error, l.p_error, l.residual_inf, l.split_residual_inf, l.iterations);
    out += line;
  }
  return out;
}

std::string to_table(const ConvergenceStudy& s) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%6s %7s %12s %12s %12s %12s\n", "nr", "ntheta", "dr", "u_error",
                "p_error", "residual");
  out += line;
  for (const ConvergenceLevel& l : s.levels) {
    std::snprintf(line, sizeof line, "%6d %7d %12.4e %12.4e %12.4e %12.4e\n", l.nr, l.ntheta, l.dr,
                  l.u_error, l.p_error, l.split_residual_inf);
    out += line;
  }
  auto order = [](const std::optional<double>& o) {
    char buf[32];
    if (!o) return std::string("n/a");
    std::snprintf(buf, sizeof buf, "%.3f", *o);
    return std::string(buf);
  };
  out += "order (u): " + order(s.u_order) + "   order (p): " + order(s.p_order) + "   reference: " +
         s.reference + "\n";
  return out;
}

}  // namespace annulus
