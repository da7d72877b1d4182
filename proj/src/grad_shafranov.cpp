#include "annulus/grad_shafranov.hpp"

#include <cmath>
#include <sstream>

#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/operators.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

std::vector<double> contraction_ratios(const std::vector<double>& updates) {
  std::vector<double> out;
  for (std::size_t k = 1; k < updates.size(); ++k)
    out.push_back(updates[k - 1] > 0.0 ? updates[k] / updates[k - 1] : 0.0);
  return out;
}

namespace kernels {

void stream_source_reference(const StreamFunction& phi, const BernoulliProfile& profile,
                             ScalarField& rhs) {
  const AnnulusGrid& g = phi.psi.grid();
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j)
      rhs(i, j) = -g.r(i) * profile.Bprime(phi.value(i, j));
}

void stream_source_parallel(const StreamFunction& phi, const BernoulliProfile& profile,
                            ScalarField& rhs) {
  const AnnulusGrid& g = phi.psi.grid();
  const int nr = g.nr(), nt = g.ntheta();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) rhs(i, j) = -g.r(i) * profile.Bprime(phi.value(i, j));
}

}  // namespace kernels

namespace {

bool trivial_source(const BernoulliProfile& profile) {
  const BoundaryFunction& b0 = profile.b0();
  return b0.coefficient_norm() == std::abs(b0.mean());
}

void fill_source(const StreamFunction& phi, const BernoulliProfile& profile,
                 Execution exec, ScalarField& rhs) {
  if (trivial_source(profile)) {
    rhs = ScalarField(rhs.grid());
    return;
  }
  if (exec == Execution::parallel)
    kernels::stream_source_parallel(phi, profile, rhs);
  else
    kernels::stream_source_reference(phi, profile, rhs);
}

std::vector<double> periodic_samples(const BoundaryStream& s, const AnnulusGrid& g,
                                     double slope) {
  std::vector<double> out(g.ntheta());
  for (int j = 0; j < g.ntheta(); ++j) out[j] = s(g.theta(j)) - slope * g.theta(j);
  return out;
}

bool non_increasing(const std::vector<double>& e) {
  for (std::size_t k = 1; k < e.size(); ++k)
    if (e[k] > e[k - 1] + 1e-12 * (1.0 + std::abs(e[k - 1]))) return false;
  return true;
}

void relax_into(ScalarField& current, const ScalarField& next, double relax) {
  if (relax == 1.0) {
    current = next;
    return;
  }
  auto& c = current.values();
  const auto& n = next.values();
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = relax * n[k] + (1.0 - relax) * c[k];
}

bool diverged(double update) { return !std::isfinite(update) || update > 1e8; }

[[noreturn]] void fail(const char* what, const GSReport& r) {
  std::ostringstream msg;
  msg << what << " did not converge in " << r.iterations << " iterations (last update "
      << (r.update_trace.empty() ? 0.0 : r.update_trace.back()) << ")";
  throw ConvergenceFailure(msg.str(), r.iterations,
                           r.update_trace.empty() ? 0.0 : r.update_trace.back(),
                           r.update_trace);
}

}  // namespace

GSSolution solve_bc12(const BoundaryFunction& f0, const OuterStreamData& outer,
                      const BoundaryFunction& b0, const AnnulusGrid& grid,
                      const GSConfig& cfg) {
  const int gate = 4 * grid.ntheta();
  BoundaryStream phi0 = build_phi0(f0, false, gate);
  BoundaryStream phi1;
  BoundaryFunction f1;
  if (const auto* fo = std::get_if<FluxOuter>(&outer)) {
    phi1 = build_phi1_flux(phi0, fo->f1, fo->j0);
    f1 = fo->f1;
  } else {
    const CircleMap& T = std::get<DiffeoOuter>(outer).T;
    phi1 = build_phi1_diffeo(phi0, T, gate);
    std::vector<double> samples(grid.ntheta());
    for (int j = 0; j < grid.ntheta(); ++j) samples[j] = phi1.derivative(grid.theta(j));
    f1 = BoundaryFunction::from_samples(samples);
  }
  BernoulliProfile profile(phi0, b0);
  const double slope = phi0.slope();

  EllipticProblem ep{ScalarField(grid), periodic_samples(phi0, grid, slope),
                     periodic_samples(phi1, grid, slope), EllipticOperator::weighted_K};

  auto attempt = [&](double relax) {
    GSSolution sol{StreamFunction{solve_elliptic(ep, cfg.exec), slope}, profile, phi1, f1, {}};
    GSReport& rep = sol.report;
    rep.relaxation_used = relax;
    rep.energy_trace.push_back(stream_energy(sol.phi, profile));
    for (int k = 1; k <= cfg.max_iters; ++k) {
      fill_source(sol.phi, profile, cfg.exec, ep.rhs);
      const ScalarField next = solve_elliptic(ep, cfg.exec);
      const double update = relax * max_abs_diff(next, sol.phi.psi);
      relax_into(sol.phi.psi, next, relax);
      rep.iterations = k;
      rep.update_trace.push_back(update);
      rep.energy_trace.push_back(stream_energy(sol.phi, profile));
      if (diverged(update)) break;
      if (update <= cfg.picard_tol) {
        rep.converged = true;
        break;
      }
    }
    rep.energy_monotone = non_increasing(rep.energy_trace);
    return sol;
  };

  GSSolution sol = attempt(cfg.relaxation);
  if (!sol.report.converged && cfg.relaxation_fallback && cfg.relaxation > 0.5) {
    sol = attempt(0.5);
    sol.report.warnings.push_back("Picard iteration needed the relaxation 0.5 fallback");
  }
  if (!sol.report.converged) fail("Grad-Shafranov Picard iteration", sol.report);
  return sol;
}

GSSolution solve_bc3_gs(const BoundaryFunction& f0, const BoundaryFunction& b0,
                        const BoundaryFunction& p1prime, double j0,
                        const AnnulusGrid& grid, const GSConfig& cfg) {
  const int nt = grid.ntheta(), nr = grid.nr();
  const int gate = 4 * nt;
  BoundaryStream phi0 = build_phi0(f0, true, gate);
  BernoulliProfile profile(phi0, b0);
  const double J0 = f0.integral();
  const double slope = phi0.slope();  // (2 pi + J0) / 2 pi
  const double r1 = grid.r1(), h = grid.dr();

  std::vector<std::string> warnings;
  const double size = f0.coefficient_norm() + b0.coefficient_norm() +
                      p1prime.coefficient_norm() + std::abs(j0);
  if (size > cfg.smallness_cap) {
    std::ostringstream msg;
    msg << "data size " << size << " exceeds the smallness cap " << cfg.smallness_cap;
    warnings.push_back(msg.str());
  }

  auto outer_stream = [&](const BoundaryFunction& f1) {
    // theta - j0 + int_0^theta f1 with mean f1 = J0 / 2 pi.
    return BoundaryStream::from_flux(f1 + BoundaryFunction::constant(1.0), -j0);
  };
  const std::vector<double> inner = periodic_samples(phi0, grid, slope);

  auto attempt = [&](double relax) {
    BoundaryFunction f1 = BoundaryFunction::constant(J0 / kTwoPi);
    EllipticProblem ep{ScalarField(grid), inner,
                       periodic_samples(outer_stream(f1), grid, slope),
                       EllipticOperator::weighted_K};
    GSSolution sol{StreamFunction{solve_elliptic(ep, cfg.exec), slope}, profile,
                   outer_stream(f1), f1, {}};
    GSReport& rep = sol.report;
    rep.relaxation_used = relax;
    rep.warnings = warnings;
    rep.energy_trace.push_back(stream_energy(sol.phi, profile));
    std::vector<double> F1(nt), dr_sq(nt);
    for (int k = 1; k <= cfg.max_iters; ++k) {
      const StreamFunction& cur = sol.phi;
      const auto& psi = cur.psi;
      for (int j = 0; j < nt; ++j) {
        const double dpsi = (3.0 * psi(nr - 1, j) - 4.0 * psi(nr - 2, j) + psi(nr - 3, j)) /
                            (2.0 * h);
        dr_sq[j] = dpsi * dpsi;
      }
      const std::vector<double> d_dr_sq = spectral_derivative(dr_sq);
      for (int j = 0; j < nt; ++j) {
        const double t = grid.theta(j);
        const double through = 1.0 + sol.f1(t);
        if (!(through > 0.0))
          throw SolverError(ErrorKind::NonPositiveThroughflow,
                            "outer through-flow 1 + f1 is not positive", t);
        F1[j] = r1 * r1 * profile.Bprime(cur.value(nr - 1, j)) -
                r1 * r1 / (2.0 * through) * d_dr_sq[j] - r1 * r1 / through * p1prime(t);
      }
      const FluxProfile fp = flux_profile_from_integrand(F1, J0);

      fill_source(cur, profile, cfg.exec, ep.rhs);
      ep.dirichlet_outer = periodic_samples(outer_stream(fp.f), grid, slope);
      const ScalarField next = solve_elliptic(ep, cfg.exec);

      double f1_update = 0.0;
      for (int j = 0; j < nt; ++j)
        f1_update = std::max(f1_update, std::abs(fp.f(grid.theta(j)) - sol.f1(grid.theta(j))));
      const double update = relax * (max_abs_diff(next, sol.phi.psi) + f1_update);
      relax_into(sol.phi.psi, next, relax);
      sol.f1 = relax == 1.0 ? fp.f : relax * fp.f + (1.0 - relax) * sol.f1;
      sol.phi1 = outer_stream(sol.f1);

      rep.iterations = k;
      rep.update_trace.push_back(update);
      rep.energy_trace.push_back(stream_energy(sol.phi, profile));
      rep.flux_defects.push_back(sol.f1.integral() - J0);
      rep.outer_integrand_mean = fp.integrand_mean;
      if (diverged(update)) break;
      if (update <= cfg.picard_tol) {
        rep.converged = true;
        break;
      }
    }
    rep.energy_monotone = non_increasing(rep.energy_trace);
    return sol;
  };

  GSSolution sol = attempt(cfg.relaxation);
  if (!sol.report.converged && cfg.relaxation_fallback && cfg.relaxation > 0.5) {
    sol = attempt(0.5);
    sol.report.warnings.push_back("Picard iteration needed the relaxation 0.5 fallback");
  }
  if (!sol.report.converged) fail("BC3 coupled Picard iteration", sol.report);
  return sol;
}

PolarVectorField velocity_from_stream(const StreamFunction& phi, Execution exec) {
  const AnnulusGrid& g = phi.psi.grid();
  const ScalarField pt = d_theta(phi.psi, exec);
  const ScalarField pr = d_r_smooth(phi.psi);
  PolarVectorField u(g);
  for (int i = 0; i < g.nr(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.ntheta(); ++j) {
      u.vr(i, j) = (pt(i, j) + phi.slope) * inv_r;
      u.vtheta(i, j) = -pr(i, j);
    }
  }
  return u;
}

ScalarField pressure_from_stream(const StreamFunction& phi, const BernoulliProfile& profile,
                                 const PolarVectorField& u) {
  const AnnulusGrid& g = phi.psi.grid();
  ScalarField p(g);
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) {
      const double ur = u.vr(i, j), ut = u.vtheta(i, j);
      p(i, j) = profile.B(phi.value(i, j)) - 0.5 * (ur * ur + ut * ut);
    }
  return p;
}

double stream_energy(const StreamFunction& phi, const BernoulliProfile& profile) {
  const AnnulusGrid& g = phi.psi.grid();
  const ScalarField pr = d_r(phi.psi);
  const ScalarField pt = d_theta(phi.psi);
  const std::vector<double> w = g.radial_weights();
  const bool constant_b = trivial_source(profile);
  const double b_const = profile.b0().mean();
  double total = 0.0;
  for (int i = 0; i < g.nr(); ++i) {
    const double r = g.r(i);
    double ring = 0.0;
    for (int j = 0; j < g.ntheta(); ++j) {
      const double B = constant_b ? b_const : profile.B(phi.value(i, j));
      ring += 0.5 * (r * pr(i, j) * pr(i, j) + pt(i, j) * pt(i, j) / r) + r * B;
    }
    total += w[i] * ring * g.dtheta();
  }
  return total;
}

}  // namespace annulus
