#include "annulus/transport.hpp"

#include <cmath>
#include <sstream>

#include "annulus/bernoulli.hpp"
#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

CharacteristicField::CharacteristicField(const PolarVectorField& vhat)
    : vr_(vhat.vr), vtheta_(vhat.vtheta) {}

CharacteristicField::Slice CharacteristicField::slice(double r, int cell) const {
  return {r, vr_.series_at(r, cell), vtheta_.series_at(r, cell)};
}

double characteristic_slope(const CharacteristicField::Slice& s, double theta) {
  double vr = 0.0, vt = 0.0;
  evaluate_pair(s.vr, s.vtheta, theta, vr, vt);
  const double through = 1.0 + s.r * vr;
  if (!(through > 0.0)) {
    std::ostringstream msg;
    msg << "radial through-flow " << through / s.r << " at r=" << s.r << " theta=" << theta;
    throw SolverError(ErrorKind::ThroughflowSignChange, msg.str(), theta);
  }
  return vt / through;
}

namespace {

using Slice = CharacteristicField::Slice;

double rk4_step(const Slice& a, const Slice& m, const Slice& b, double h, double theta) {
  const double k1 = characteristic_slope(a, theta);
  const double k2 = characteristic_slope(m, theta + 0.5 * h * k1);
  const double k3 = characteristic_slope(m, theta + 0.5 * h * k2);
  const double k4 = characteristic_slope(b, theta + h * k3);
  return theta + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Stage slices across cell `cell` from its upper radius down (or up) in
// 2*steps half steps.
std::vector<Slice> cell_slices(const CharacteristicField& f, int cell, int steps,
                               bool inward) {
  const AnnulusGrid& g = f.grid();
  const double lo = g.r(cell), hi = g.r(cell + 1);
  std::vector<Slice> out;
  out.reserve(2 * steps + 1);
  for (int m = 0; m <= 2 * steps; ++m) {
    double r;
    if (m == 2 * steps)
      r = inward ? lo : hi;
    else
      r = inward ? hi - m * (g.dr() / (2.0 * steps)) : lo + m * (g.dr() / (2.0 * steps));
    out.push_back(f.slice(r, cell));
  }
  return out;
}

double sweep_cell(const std::vector<Slice>& s, int steps, double h, double theta) {
  for (int k = 0; k < steps; ++k) theta = rk4_step(s[2 * k], s[2 * k + 1], s[2 * k + 2], h, theta);
  return theta;
}

void check_nodes(const PolarVectorField& vhat) {
  const AnnulusGrid& g = vhat.grid();
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j)
      if (!(1.0 / g.r(i) + vhat.vr(i, j) > 0.0)) {
        std::ostringstream msg;
        msg << "radial through-flow " << 1.0 / g.r(i) + vhat.vr(i, j) << " at node (" << i
            << ", " << j << ")";
        throw SolverError(ErrorKind::ThroughflowSignChange, msg.str(), g.theta(j));
      }
}

double wrap(double theta) { return theta - kTwoPi * std::floor(theta / kTwoPi); }

void check_through_flow(const BoundaryFunction& f, int samples, const char* where) {
  const double h = kTwoPi / samples;
  for (int j = 0; j < samples; ++j) {
    const double t = j * h;
    if (!(1.0 + f(t) > 0.0)) {
      std::ostringstream msg;
      msg << where << " through-flow " << 1.0 + f(t) << " at theta=" << t;
      throw SolverError(ErrorKind::NonPositiveThroughflow, msg.str(), t);
    }
  }
}

}  // namespace

double backtrace_characteristic(const CharacteristicField& field, double r_target,
                                double theta_target, int steps_per_cell) {
  const AnnulusGrid& g = field.grid();
  const double span = r_target - g.r0();
  if (span <= 0.0) return theta_target;
  const int cells = std::max(1, static_cast<int>(std::ceil(span / g.dr() - 1e-9)));
  const int steps = cells * steps_per_cell;
  const double h = -span / steps;
  double theta = theta_target;
  for (int s = 0; s < steps; ++s) {
    const double top = r_target - s * (span / steps);
    const double bottom = s + 1 == steps ? g.r0() : r_target - (s + 1) * (span / steps);
    const double mid = 0.5 * (top + bottom);
    const int cell = radial_cell(g, mid);
    theta = rk4_step(field.slice(top, cell), field.slice(mid, cell), field.slice(bottom, cell),
                     h, theta);
  }
  return theta;
}

double backtrace_characteristic(const PolarVectorField& vhat, double r_target,
                                double theta_target, int steps_per_cell) {
  return backtrace_characteristic(CharacteristicField(vhat), r_target, theta_target,
                                  steps_per_cell);
}

std::vector<double> trace_forward(const CharacteristicField& field, double theta_start,
                                  int steps_per_cell) {
  const AnnulusGrid& g = field.grid();
  std::vector<double> out(g.nr());
  out[0] = theta_start;
  const double h = g.dr() / steps_per_cell;
  for (int i = 1; i < g.nr(); ++i) {
    const auto s = cell_slices(field, i - 1, steps_per_cell, false);
    out[i] = sweep_cell(s, steps_per_cell, h, out[i - 1]);
  }
  return out;
}

namespace kernels {

ScalarField departure_angles_marching(const CharacteristicField& field, int steps,
                                      Execution exec) {
  const AnnulusGrid& g = field.grid();
  const int nr = g.nr(), nt = g.ntheta();
  ScalarField theta0(g);
  for (int j = 0; j < nt; ++j) theta0(0, j) = g.theta(j);
  std::vector<double> shift(nt, 0.0), next(nt);
  const double h = -g.dr() / steps;

  for (int i = 1; i < nr; ++i) {
    const auto slices = cell_slices(field, i - 1, steps, true);
    const TrigSeries below = TrigSeries::from_samples(shift);
    auto node = [&](int j) {
      const double at_lower = sweep_cell(slices, steps, h, g.theta(j));
      const double departure = at_lower + below(at_lower);
      theta0(i, j) = departure;
      next[j] = departure - g.theta(j);
    };
    if (exec == Execution::parallel) {
      std::string failure;
      double where = 0.0;
#pragma omp parallel for schedule(static)
      for (int j = 0; j < nt; ++j) {
        try {
          node(j);
        } catch (const SolverError& e) {
#pragma omp critical(annulus_march_failure)
          if (failure.empty()) {
            failure = e.what();
            where = e.value();
          }
        }
      }
      if (!failure.empty()) throw SolverError(ErrorKind::ThroughflowSignChange, failure, where);
    } else {
      for (int j = 0; j < nt; ++j) node(j);
    }
    shift.swap(next);
  }
  return theta0;
}

ScalarField departure_angles_reference(const CharacteristicField& field, int steps) {
  const AnnulusGrid& g = field.grid();
  ScalarField theta0(g);
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j)
      theta0(i, j) = backtrace_characteristic(field, g.r(i), g.theta(j), steps);
  return theta0;
}

}  // namespace kernels

namespace {

ScalarField pull_back(const BoundaryFunction& omega0, const ScalarField& theta0) {
  ScalarField omega(theta0.grid());
  auto& out = omega.values();
  const auto& in = theta0.values();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = omega0(wrap(in[k]));
  return omega;
}

bool is_constant(const BoundaryFunction& f) { return f.coefficient_norm() == std::abs(f.mean()); }

}  // namespace

ScalarField solve_transport(const TransportProblem& p, const FixedPointConfig& cfg) {
  check_nodes(p.vhat);
  const AnnulusGrid& g = p.vhat.grid();
  if (is_constant(p.omega0)) return ScalarField(g, p.omega0.mean());
  const CharacteristicField field(p.vhat);
  ScalarField omega =
      pull_back(p.omega0, kernels::departure_angles_marching(field, cfg.ode_steps_per_cell, cfg.exec));
  for (int j = 0; j < g.ntheta(); ++j) omega(0, j) = p.omega0(g.theta(j));
  return omega;
}

ScalarField solve_transport_reference(const TransportProblem& p, int steps_per_cell) {
  check_nodes(p.vhat);
  const CharacteristicField field(p.vhat);
  return pull_back(p.omega0, kernels::departure_angles_reference(field, steps_per_cell));
}

BoundaryFunction omega0_pressure_form(const BoundaryFunction& f0, const BoundaryFunction& p0,
                                      std::span<const double> vtheta_inner, double r0) {
  const int n = static_cast<int>(vtheta_inner.size());
  check_through_flow(f0, 4 * n, "inner");
  std::vector<double> sq(n);
  for (int j = 0; j < n; ++j) sq[j] = vtheta_inner[j] * vtheta_inner[j];
  const std::vector<double> dsq = spectral_derivative(sq);
  const BoundaryFunction df0 = f0.derivative(), dp0 = p0.derivative();
  std::vector<double> w(n);
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double t = j * h;
    const double through = 1.0 + f0(t);
    w[j] = -df0(t) / (r0 * r0) - dp0(t) / through - dsq[j] / (2.0 * through);
  }
  return BoundaryFunction::from_samples(w);
}

BoundaryFunction omega0_bernoulli_form(const BoundaryFunction& f0, const BoundaryFunction& b0,
                                       int n) {
  check_through_flow(f0, 4 * n, "inner");
  const BoundaryFunction db0 = b0.derivative();
  std::vector<double> w(n);
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) w[j] = -db0(j * h) / (1.0 + f0(j * h));
  return BoundaryFunction::from_samples(w);
}

OuterFluxState f1_update(std::span<const double> vtheta_outer, const BoundaryFunction& f1hat,
                         std::span<const double> omega_outer, const BoundaryFunction& p1prime,
                         double J0, double r1) {
  const int n = static_cast<int>(vtheta_outer.size());
  check_through_flow(f1hat, 4 * n, "outer");
  std::vector<double> sq(n);
  for (int j = 0; j < n; ++j) sq[j] = vtheta_outer[j] * vtheta_outer[j];
  const std::vector<double> dsq = spectral_derivative(sq);
  std::vector<double> R(n);
  const double h = kTwoPi / n, r1sq = r1 * r1;
  for (int j = 0; j < n; ++j) {
    const double t = j * h;
    const double through = 1.0 + f1hat(t);
    R[j] = -r1sq * omega_outer[j] - r1sq * p1prime(t) / through - r1sq * dsq[j] / (2.0 * through);
  }
  const FluxProfile fp = flux_profile_from_integrand(R, J0);
  return {fp.f, fp.integrand_mean};
}

BoundaryFunction f1_from_diffeo(const CircleMap& T, const BoundaryFunction& f0, int n) {
  check_monotone(T, 4 * n);
  std::vector<double> s(n);
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) {
    const double t = j * h;
    const double dT = T.derivative(t);
    s[j] = -1.0 + dT + f0(T(t)) * dT;
  }
  return BoundaryFunction::from_samples(s);
}

std::string to_string(VortexKind kind) {
  switch (kind) {
    case VortexKind::BC4: return "BC4";
    case VortexKind::BC5: return "BC5";
    case VortexKind::BC1star: return "BC1star";
    case VortexKind::BC2star: return "BC2star";
    case VortexKind::BC3: return "BC3";
  }
  return "?";
}

double VortexData::size() const {
  return f0.coefficient_norm() + f1.coefficient_norm() + p0.coefficient_norm() +
         p1prime.coefficient_norm() + b0.coefficient_norm() + T.shift().coefficient_norm() +
         std::abs(j0);
}

namespace {

double sampled_diff(const BoundaryFunction& a, const BoundaryFunction& b, int n) {
  return (a - b).sampled_sup(n);
}

}  // namespace

VortexSolution fixed_point(VortexKind kind, const VortexData& d, const AnnulusGrid& grid,
                           const FixedPointConfig& cfg) {
  const int nt = grid.ntheta(), nr = grid.nr();
  const bool pressure_form = kind == VortexKind::BC4 || kind == VortexKind::BC5;
  const bool updates_f1 = kind == VortexKind::BC5 || kind == VortexKind::BC3;

  check_through_flow(d.f0, 4 * nt, "inner");
  const double J0 = d.f0.integral();
  BoundaryFunction f1hat;
  double j0 = d.j0;
  switch (kind) {
    case VortexKind::BC4:
    case VortexKind::BC1star: {
      const double defect = J0 - d.f1.integral();
      if (std::abs(defect) > flux_tolerance(J0))
        throw SolverError(ErrorKind::FluxMismatch, "inner and outer fluxes differ", defect);
      f1hat = d.f1;
      break;
    }
    case VortexKind::BC2star: {
      f1hat = f1_from_diffeo(d.T, d.f0, nt);
      // Segment circulation of phi1 = phi0 o T with phi0 = theta + int f0.
      const double T0 = d.T(0.0);
      j0 = -(T0 + d.f0.integral_from_zero(T0));
      break;
    }
    case VortexKind::BC5:
    case VortexKind::BC3:
      f1hat = BoundaryFunction::constant(J0 / kTwoPi);
      break;
  }

  VortexSolution sol{PolarVectorField(grid), base_flow(grid), ScalarField(grid), {}, f1hat, J0,
                     j0, {}};
  FixedPointReport& rep = sol.report;
  if (d.size() > 0.25) {
    std::ostringstream msg;
    msg << "data size " << d.size() << " is outside the small-perturbation regime";
    rep.warnings.push_back(msg.str());
  }
  if (!pressure_form) sol.omega0 = omega0_bernoulli_form(d.f0, d.b0, nt);

  for (int k = 1; k <= cfg.max_iters; ++k) {
    if (pressure_form) sol.omega0 = omega0_pressure_form(d.f0, d.p0, sol.v.vtheta.ring(0), grid.r0());
    sol.omega = solve_transport({sol.v, sol.omega0}, cfg);
    BoundaryFunction f1 = f1hat;
    if (updates_f1) {
      const OuterFluxState st = f1_update(sol.v.vtheta.ring(nr - 1), f1hat,
                                          sol.omega.ring(nr - 1), d.p1prime, J0, grid.r1());
      f1 = st.f1;
      rep.rave_trace.push_back(st.Rave);
      rep.flux_defects.push_back(f1.integral() - J0);
    }
    const PolarVectorField next =
        solve_div_curl(DivCurlProblem{sol.omega, d.f0, f1, j0}, cfg.exec);
    double update = max_abs_diff(next, sol.v);
    if (updates_f1) update += sampled_diff(f1, f1hat, nt);
    sol.v = next;
    f1hat = f1;
    rep.iterations = k;
    rep.update_trace.push_back(update);
    if (!std::isfinite(update) || update > 1e6) break;
    if (update <= cfg.fp_tol) {
      rep.converged = true;
      break;
    }
  }
  sol.f1 = f1hat;
  if (!rep.converged) {
    std::ostringstream msg;
    msg << to_string(kind) << " fixed point did not converge in " << rep.iterations
        << " iterations (last update " << rep.update_trace.back() << ")";
    throw ConvergenceFailure(msg.str(), rep.iterations, rep.update_trace.back(), rep.update_trace);
  }

  if (updates_f1) {
    // Mean of the update integrand re-evaluated at the converged state.
    const OuterFluxState st = f1_update(sol.v.vtheta.ring(nr - 1), sol.f1,
                                        sol.omega.ring(nr - 1), d.p1prime, J0, grid.r1());
    rep.rave_final = st.Rave;
  }
  sol.u = base_flow(grid) + sol.v;
  return sol;
}

}  // namespace annulus
