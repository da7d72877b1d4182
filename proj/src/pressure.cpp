#include "annulus/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "annulus/errors.hpp"
#include "annulus/operators.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

PolarVectorField compute_G(const PolarVectorField& u) {
  const AnnulusGrid& g = u.grid();
  const ScalarField ur_r = d_r(u.vr), ur_t = d_theta(u.vr), ut_t = d_theta(u.vtheta);
  ScalarField rut(g);
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) rut(i, j) = g.r(i) * u.vtheta(i, j);
  const ScalarField rut_r = d_r(rut);
  PolarVectorField G(g);
  for (int i = 0; i < g.nr(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.ntheta(); ++j) {
      const double ur = u.vr(i, j), ut = u.vtheta(i, j);
      G.vr(i, j) = ur * ur_r(i, j) + ut * inv_r * ur_t(i, j) - ut * ut * inv_r;
      G.vtheta(i, j) = ur * inv_r * rut_r(i, j) + ut * inv_r * ut_t(i, j);
    }
  }
  return G;
}

namespace {

// q = (|ubar + v|^2 - |ubar|^2) / 2
ScalarField kinetic_perturbation(const PolarVectorField& v) {
  const AnnulusGrid& g = v.grid();
  ScalarField q(g);
  for (int i = 0; i < g.nr(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.ntheta(); ++j) {
      const double vr = v.vr(i, j), vt = v.vtheta(i, j);
      q(i, j) = inv_r * vr + 0.5 * (vr * vr + vt * vt);
    }
  }
  return q;
}

// omega (-v_theta, 1/r + v_r)
PolarVectorField rotational_part(const PolarVectorField& v, const ScalarField& omega) {
  const AnnulusGrid& g = v.grid();
  PolarVectorField G(g);
  for (int i = 0; i < g.nr(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.ntheta(); ++j) {
      const double w = omega(i, j);
      G.vr(i, j) = -w * v.vtheta(i, j);
      G.vtheta(i, j) = w * (inv_r + v.vr(i, j));
    }
  }
  return G;
}

}  // namespace

PolarVectorField compute_G_perturbation(const PolarVectorField& v, const ScalarField& omega) {
  PolarVectorField G = rotational_part(v, omega);
  G += polar_grad(kinetic_perturbation(v));
  return G;
}

namespace kernels {

namespace {

void arc_ring(const ScalarField& Gt, int i, ScalarField& out, std::vector<double>& means) {
  const AnnulusGrid& g = Gt.grid();
  const int nt = g.ntheta();
  const BoundaryFunction f = BoundaryFunction::from_samples(Gt.ring(i));
  means[i] = f.mean();
  const BoundaryFunction P = f.periodic_antiderivative();
  const double P0 = P(0.0);
  const double r = g.r(i);
  for (int j = 0; j < nt; ++j) out(i, j) = -r * (P(g.theta(j)) - P0);
}

}  // namespace

void arc_integrals_reference(const ScalarField& Gt, ScalarField& out, std::vector<double>& means) {
  means.assign(Gt.grid().nr(), 0.0);
  for (int i = 0; i < Gt.grid().nr(); ++i) arc_ring(Gt, i, out, means);
}

void arc_integrals_parallel(const ScalarField& Gt, ScalarField& out, std::vector<double>& means) {
  const int nr = Gt.grid().nr();
  means.assign(nr, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nr; ++i) arc_ring(Gt, i, out, means);
}

}  // namespace kernels

Potential integrate_g(const PolarVectorField& G, PathKind path, const PotentialOptions& opts) {
  const AnnulusGrid& grid = G.grid();
  const int nr = grid.nr(), nt = grid.ntheta();
  const double h = grid.dr();

  Potential out{ScalarField(grid)};
  const double gmax = G.max_abs();
  out.curl_defect = polar_curl(G).max_abs();
  out.curl_limit = opts.curl_const * h * h * (1.0 + gmax);

  ScalarField arcs(grid);
  std::vector<double> means;
  if (opts.exec == Execution::parallel)
    kernels::arc_integrals_parallel(G.vtheta, arcs, means);
  else
    kernels::arc_integrals_reference(G.vtheta, arcs, means);
  for (int i = 0; i < nr; ++i)
    out.seam_defect = std::max(out.seam_defect, std::abs(kTwoPi * grid.r(i) * means[i]));
  out.seam_limit = opts.curl_const * h * h * (1.0 + gmax) * kTwoPi * grid.r1();
  out.gates_passed = out.curl_defect <= out.curl_limit && out.seam_defect <= out.seam_limit;

  if (opts.enforce_gates) {
    if (out.curl_defect > out.curl_limit) {
      std::ostringstream msg;
      msg << "sup |curl G| = " << out.curl_defect << " exceeds " << out.curl_limit;
      throw SolverError(ErrorKind::CurlDefect, msg.str(), out.curl_defect);
    }
    if (out.seam_defect > out.seam_limit) {
      std::ostringstream msg;
      msg << "arc integral returns " << out.seam_defect << " at the seam, limit "
          << out.seam_limit;
      throw SolverError(ErrorKind::SeamMismatch, msg.str(), out.seam_defect);
    }
  }

  // Cumulative trapezoid of -G_r along one column.
  auto radial = [&](int j, std::vector<double>& acc) {
    acc.assign(nr, 0.0);
    for (int i = 1; i < nr; ++i) acc[i] = acc[i - 1] - 0.5 * h * (G.vr(i - 1, j) + G.vr(i, j));
  };

  ScalarField& g = out.g;
  std::vector<double> acc;
  if (path == PathKind::radial_then_arc) {
    radial(0, acc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nt; ++j) g(i, j) = acc[i] + arcs(i, j);
  } else {
    for (int j = 0; j < nt; ++j) {
      radial(j, acc);
      for (int i = 0; i < nr; ++i) g(i, j) = arcs(0, j) + acc[i];
    }
  }
  return out;
}

ScalarField reference_potential(const AnnulusGrid& grid) {
  ScalarField g(grid);
  const double r0 = grid.r0();
  for (int i = 0; i < grid.nr(); ++i) {
    const double r = grid.r(i);
    const double v = 0.5 * (1.0 / (r0 * r0) - 1.0 / (r * r));
    for (double& x : g.ring(i)) x = v;
  }
  return g;
}

NormalizedPressure pressure_normalize(const ScalarField& g, const Normalization& kind,
                                      const PolarVectorField* u) {
  const AnnulusGrid& grid = g.grid();
  const double r0 = grid.r0();
  NormalizedPressure out{g};
  if (const auto* bc4 = std::get_if<BC4Normalization>(&kind)) {
    const double g0 = -0.5 / (r0 * r0) + bc4->p0(0.0);
    for (double& v : out.p.values()) v += g0;
    for (int j = 0; j < grid.ntheta(); ++j)
      out.inner_residual = std::max(
          out.inner_residual,
          std::abs(out.p(0, j) - (-0.5 / (r0 * r0) + bc4->p0(grid.theta(j)))));
  } else {
    const auto& bn = std::get<BernoulliNormalization>(kind);
    const double c = -0.5 * bn.speed_sq_at_origin + bn.b0(0.0);
    for (double& v : out.p.values()) v += c;
    if (u) {
      for (int j = 0; j < grid.ntheta(); ++j) {
        const double ur = u->vr(0, j), ut = u->vtheta(0, j);
        const double bern = 0.5 * (ur * ur + ut * ut) + out.p(0, j);
        out.inner_residual =
            std::max(out.inner_residual, std::abs(bern - bn.b0(grid.theta(j))));
      }
    }
  }
  return out;
}

PressureReconstruction reconstruct_pressure(const PolarVectorField& v, const ScalarField& omega,
                                            const Normalization& kind, PotentialOptions opts) {
  const AnnulusGrid& grid = v.grid();
  opts.enforce_gates = false;
  Potential pot = integrate_g(rotational_part(v, omega), PathKind::radial_then_arc, opts);
  const ScalarField q = kinetic_perturbation(v);
  ScalarField g = reference_potential(grid) + pot.g;
  const double q00 = q(0, 0);
  for (int i = 0; i < grid.nr(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j) g(i, j) -= q(i, j) - q00;
  const PolarVectorField u = base_flow(grid) + v;
  Normalization norm = kind;
  if (auto* bn = std::get_if<BernoulliNormalization>(&norm)) {
    const double ur = u.vr(0, 0), ut = u.vtheta(0, 0);
    bn->speed_sq_at_origin = ur * ur + ut * ut;
  }
  NormalizedPressure np = pressure_normalize(g, norm, &u);
  return {std::move(np.p), std::move(pot), np.inner_residual};
}

CompatResult trace_and_compat(const ScalarField& p, const BoundaryFunction& p1,
                              double compat_tol) {
  const AnnulusGrid& grid = p.grid();
  const int last = grid.nr() - 1;
  const double r1 = grid.r1();
  const double base = -0.5 / (r1 * r1);
  CompatResult out;
  out.gap = p1(0.0) - (p(last, 0) - base);
  out.ok = std::abs(out.gap) <= compat_tol;
  for (int j = 0; j < grid.ntheta(); ++j)
    out.row_defect =
        std::max(out.row_defect, std::abs(p(last, j) - (base + p1(grid.theta(j)))));
  return out;
}

}  // namespace annulus
