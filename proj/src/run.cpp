#include "annulus/run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "annulus/field_io.hpp"
#include "annulus/grad_shafranov.hpp"
#include "annulus/operators.hpp"
#include "annulus/pressure.hpp"
#include "annulus/residual.hpp"
#include "annulus/spectral.hpp"
#include "annulus/transport.hpp"

namespace annulus {

using nlohmann::json;

namespace {

const BoundaryFunction kOne = BoundaryFunction::constant(1.0);

json coefficients(const BoundaryFunction& f) {
  return {{"mean", f.mean()}, {"cos", f.cos_coeffs()}, {"sin", f.sin_coeffs()}};
}

json grid_json(const AnnulusGrid& g) {
  return {{"r0", g.r0()}, {"r1", g.r1()}, {"nr", g.nr()}, {"ntheta", g.ntheta()}};
}

bool bernoulli_kind(BCKind k) {
  return k != BCKind::BC4 && k != BCKind::BC5 && k != BCKind::BC5prime;
}

// The boundary data a route ended up imposing.
struct Realized {
  BoundaryFunction f1;  // perturbation form
  double j0 = 0.0;
};

json residual_json(const EulerResidual& plain, const EulerResidual& split) {
  return {{"momentum_inf", plain.momentum_inf},
          {"div_inf", plain.div_inf},
          {"split_momentum_inf", split.momentum_inf},
          {"split_div_inf", split.div_inf}};
}

double row_sup(const AnnulusGrid& g, auto&& f) {
  double m = 0.0;
  for (int j = 0; j < g.ntheta(); ++j) m = std::max(m, std::abs(f(j)));
  return m;
}

void diagnose(const RunConfig& c, const PolarVectorField& u, const ScalarField& p,
              const Realized& real, json& rep) {
  const AnnulusGrid& g = u.grid();
  const int o = g.nr() - 1;
  const double r0 = g.r0(), r1 = g.r1();

  const EulerResidual plain = euler_residual(u, p);
  const EulerResidual split = euler_residual_split(u, p);
  rep["euler_residual_inf"] = split.inf();
  rep["euler_residual_plain_inf"] = plain.inf();
  rep["euler_residual"] = residual_json(plain, split);

  json bc;
  bc["inner_flux"] = row_sup(g, [&](int j) { return r0 * u.vr(0, j) - 1.0 - c.f0(g.theta(j)); });
  bc["outer_flux"] = row_sup(g, [&](int j) { return r1 * u.vr(o, j) - 1.0 - real.f1(g.theta(j)); });
  bc["circulation"] = std::abs(radial_trapezoid(u.vtheta, 0) - real.j0);
  auto bernoulli = [&](int i, int j) {
    return 0.5 * (u.vr(i, j) * u.vr(i, j) + u.vtheta(i, j) * u.vtheta(i, j)) + p(i, j);
  };
  if (bernoulli_kind(c.bc_kind))
    bc["inner_bernoulli"] = row_sup(g, [&](int j) { return bernoulli(0, j) - c.b0(g.theta(j)); });
  else
    bc["inner_pressure"] =
        row_sup(g, [&](int j) { return p(0, j) + 0.5 / (r0 * r0) - c.p0(g.theta(j)); });
  if (c.bc_kind == BCKind::BC2 || c.bc_kind == BCKind::BC2star) {
    const CircleMap T(c.T_shift);
    bc["outer_bernoulli"] = row_sup(g, [&](int j) { return bernoulli(o, j) - c.b0(T(g.theta(j))); });
  }
  if (c.bc_kind == BCKind::BC3 || c.bc_kind == BCKind::BC3prime || c.bc_kind == BCKind::BC5 ||
      c.bc_kind == BCKind::BC5prime) {
    const std::vector<double> dp = spectral_derivative(p.ring(o));
    const BoundaryFunction p1p = c.p1.derivative();
    bc["outer_pressure_derivative"] = row_sup(g, [&](int j) { return dp[j] - p1p(g.theta(j)); });
  }
  rep["bc_residuals"] = bc;

  const double J = kTwoPi + c.f0.integral();
  double flux = 0.0;
  for (double f : ring_fluxes(u)) flux = std::max(flux, std::abs(f - J));
  rep["flux_defect"] = flux / std::abs(J);
  rep["f1"] = coefficients(real.f1);
  rep["j0"] = real.j0;

  if (const auto o_fields = oracle_fields(c.oracle, g)) {
    rep["oracle_errors"] = {{"u_inf", max_abs_diff(u, o_fields->first)},
                            {"p_inf_mod_const", max_abs_diff_mod_const(p, o_fields->second)}};
  }
}

RouteOutput run_gs(const RunConfig& c) {
  const AnnulusGrid grid = c.grid.make();
  GSSolution s = [&] {
    switch (c.bc_kind) {
      case BCKind::BC1:
      case BCKind::BC1star:
        return solve_bc12(kOne + c.f0, FluxOuter{kOne + c.f1, c.j0}, c.b0, grid, c.gs);
      case BCKind::BC2:
      case BCKind::BC2star:
        return solve_bc12(kOne + c.f0, DiffeoOuter{CircleMap(c.T_shift)}, c.b0, grid, c.gs);
      default:
        return solve_bc3_gs(c.f0, c.b0, c.p1.derivative(), c.j0, grid, c.gs);
    }
  }();
  RouteOutput out{Method::grad_shafranov, velocity_from_stream(s.phi, c.gs.exec), ScalarField(grid),
                  {}, {}, {}};
  out.p = pressure_from_stream(s.phi, s.profile, out.u);
  ScalarField phi(grid);
  for (int i = 0; i < grid.nr(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j) phi(i, j) = s.phi.value(i, j);
  out.phi = std::move(phi);

  const GSReport& r = s.report;
  json& rep = out.report;
  rep["method"] = "grad_shafranov";
  rep["converged"] = r.converged;
  rep["iterations"] = r.iterations;
  rep["update_trace"] = r.update_trace;
  rep["contraction_ratios"] = contraction_ratios(r.update_trace);
  rep["relaxation_used"] = r.relaxation_used;
  rep["energy_trace"] = r.energy_trace;
  rep["energy_monotone"] = r.energy_monotone;
  if (c.bc_kind == BCKind::BC3) {
    rep["flux_defects"] = r.flux_defects;
    rep["outer_integrand_mean"] = r.outer_integrand_mean;
  }
  rep["warnings"] = r.warnings;

  const bool perturbation_f1 = c.bc_kind == BCKind::BC3;
  const Realized real{perturbation_f1 ? s.f1 : s.f1 - kOne, -s.phi1(0.0)};
  diagnose(c, out.u, out.p, real, rep);
  return out;
}

VortexKind vortex_kind(BCKind k) {
  switch (k) {
    case BCKind::BC1:
    case BCKind::BC1star:
      return VortexKind::BC1star;
    case BCKind::BC2:
    case BCKind::BC2star:
      return VortexKind::BC2star;
    case BCKind::BC3:
    case BCKind::BC3prime:
      return VortexKind::BC3;
    case BCKind::BC4:
      return VortexKind::BC4;
    default:
      return VortexKind::BC5;
  }
}

RouteOutput run_vt(const RunConfig& c) {
  const AnnulusGrid grid = c.grid.make();
  const VortexKind kind = vortex_kind(c.bc_kind);
  const VortexData d{c.f0, c.f1, c.p0, c.p1.derivative(), c.b0, CircleMap(c.T_shift), c.j0};
  VortexSolution s = fixed_point(kind, d, grid, c.fixed_point);

  const Normalization norm = bernoulli_kind(c.bc_kind) ? Normalization{BernoulliNormalization{c.b0}}
                                                       : Normalization{BC4Normalization{c.p0}};
  PotentialOptions popts;
  popts.curl_const = c.curl_const;
  popts.exec = c.fixed_point.exec;
  PressureReconstruction rec = reconstruct_pressure(s.v, s.omega, norm, popts);

  RouteOutput out{Method::vortex_transport, s.u, rec.p, {}, {}, {}};
  out.omega = s.omega;
  const FixedPointReport& r = s.report;
  json& rep = out.report;
  rep["method"] = "vortex_transport";
  rep["solver_kind"] = to_string(kind);
  rep["converged"] = r.converged;
  rep["iterations"] = r.iterations;
  rep["update_trace"] = r.update_trace;
  rep["contraction_ratios"] = contraction_ratios(r.update_trace);
  if (kind == VortexKind::BC5 || kind == VortexKind::BC3) {
    rep["Rave_final"] = r.rave_final;
    rep["rave_trace"] = r.rave_trace;
    rep["flux_defects"] = r.flux_defects;
  }
  rep["omega0"] = coefficients(s.omega0);
  rep["pressure_gates"] = {{"curl_defect", rec.potential.curl_defect},
                           {"curl_limit", rec.potential.curl_limit},
                           {"seam_defect", rec.potential.seam_defect},
                           {"seam_limit", rec.potential.seam_limit},
                           {"passed", rec.potential.gates_passed}};
  rep["warnings"] = r.warnings;
  diagnose(c, out.u, out.p, Realized{s.f1, s.j0}, rep);
  return out;
}

// Primed kinds: the Dirichlet outer pressure is p1 with p1(0) possibly
// replaced; the gap decides.
int compat_check(const RunConfig& c, const RouteOutput& route, json& rep) {
  const AnnulusGrid& g = route.p.grid();
  const double trace = route.p(g.nr() - 1, 0) + 0.5 / (g.r1() * g.r1());
  double at0 = c.p1(0.0);
  if (c.p1_at_trace)
    at0 = trace;
  else if (c.p1_at_0)
    at0 = *c.p1_at_0;
  const BoundaryFunction p1 = c.p1 + BoundaryFunction::constant(at0 - c.p1(0.0));
  const CompatResult res = trace_and_compat(route.p, p1, c.compat_tol);
  rep["compat"] = {{"ok", res.ok},
                   {"gap", res.gap},
                   {"row_defect", res.row_defect},
                   {"p1_at_0", at0},
                   {"trace", trace},
                   {"tolerance", c.compat_tol}};
  rep["compat_gap"] = res.gap;
  return res.ok ? 0 : exit_code(ErrorKind::CompatibilityMismatch);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw SolverError(ErrorKind::ConfigError, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace

std::optional<std::pair<PolarVectorField, ScalarField>> oracle_fields(const Oracle& o,
                                                                      const AnnulusGrid& g) {
  if (o.kind == Oracle::Kind::none) return std::nullopt;
  const double a = o.kind == Oracle::Kind::swirl ? o.a : 1.0;
  const double c = o.kind == Oracle::Kind::swirl ? o.c : 0.0;
  return std::pair{PolarVectorField::sample(g, [&](double r, double) { return a / r; },
                                            [&](double r, double) { return c / r; }),
                   ScalarField::sample(g, [&](double r, double) { return -(a * a + c * c) / (2 * r * r); })};
}

RunOutcome run(const RunConfig& c) {
  check_compatibility(c.bc_kind, c.method);
  RunOutcome out;
  json& rep = out.report;
  rep["bc_kind"] = to_string(c.bc_kind);
  rep["method"] = to_string(c.method);
  rep["grid"] = grid_json(c.grid.make());

  if (c.method == Method::grad_shafranov || c.method == Method::both) out.routes.push_back(run_gs(c));
  if (c.method == Method::vortex_transport || c.method == Method::both) out.routes.push_back(run_vt(c));

  if (c.method == Method::both) {
    const RouteOutput& gs = out.routes[0];
    const RouteOutput& vt = out.routes[1];
    rep["routes"] = {{"grad_shafranov", gs.report}, {"vortex_transport", vt.report}};
    rep["cross_method_gap"] = {{"u_inf", max_abs_diff(gs.u, vt.u)},
                               {"p_inf_mod_const", max_abs_diff_mod_const(gs.p, vt.p)}};
    rep["converged"] = gs.report["converged"].get<bool>() && vt.report["converged"].get<bool>();
  } else {
    RouteOutput& route = out.routes.front();
    if (is_primed(c.bc_kind)) out.exit_code = compat_check(c, route, route.report);
    rep.update(route.report);
  }
  rep["status"] = out.exit_code == 0 ? "ok" : "Mismatch";
  return out;
}

std::string route_dir(const RunConfig& cfg, Method route) {
  if (cfg.method != Method::both) return cfg.out_dir;
  return (std::filesystem::path(cfg.out_dir) / (route == Method::grad_shafranov ? "gs" : "vt")).string();
}

void write_outputs(const RunOutcome& outcome, const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  if (cfg.write_fields) {
    for (const RouteOutput& r : outcome.routes) {
      const std::filesystem::path dir = route_dir(cfg, r.method);
      std::filesystem::create_directories(dir);
      write_field_csv((dir / "u_r.csv").string(), r.u.vr);
      write_field_csv((dir / "u_theta.csv").string(), r.u.vtheta);
      write_field_csv((dir / "p.csv").string(), r.p);
      if (r.omega) write_field_csv((dir / "omega.csv").string(), *r.omega);
      if (r.phi) write_field_csv((dir / "phi.csv").string(), *r.phi);
    }
  }
  write_json((std::filesystem::path(cfg.out_dir) / "report.json").string(), outcome.report);
}

json error_report(const RunConfig& cfg, const SolverError& e) {
  json rep{{"bc_kind", to_string(cfg.bc_kind)},
           {"method", to_string(cfg.method)},
           {"status", to_string(e.kind())},
           {"converged", false},
           {"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
  if (!std::isnan(e.value())) rep["error"]["value"] = e.value();
  if (e.iteration() >= 0) rep["error"]["iteration"] = e.iteration();
  if (const auto* cf = dynamic_cast<const ConvergenceFailure*>(&e)) rep["update_trace"] = cf->trace();
  return rep;
}

void write_error_report(const RunConfig& cfg, const SolverError& e) {
  std::filesystem::create_directories(cfg.out_dir);
  write_json((std::filesystem::path(cfg.out_dir) / "report.json").string(), error_report(cfg, e));
}

double roundtrip_defect(const RunConfig& cfg, const RouteOutput& route) {
  const AnnulusGrid grid = cfg.grid.make();
  const std::filesystem::path dir = route_dir(cfg, route.method);
  const PolarVectorField u{read_field_csv((dir / "u_r.csv").string(), grid),
                           read_field_csv((dir / "u_theta.csv").string(), grid)};
  const ScalarField p = read_field_csv((dir / "p.csv").string(), grid);
  const EulerResidual plain = euler_residual(u, p);
  const EulerResidual split = euler_residual_split(u, p);
  const json fresh = residual_json(plain, split);
  const json& stored = route.report.at("euler_residual");
  double worst = 0.0;
  for (const auto& [key, value] : fresh.items())
    worst = std::max(worst, std::abs(value.get<double>() - stored.at(key).get<double>()));
  return worst;
}

}  // namespace annulus
