#include "annulus/residual.hpp"

#include <algorithm>
#include <cmath>

#include "annulus/operators.hpp"
#include "annulus/pressure.hpp"

namespace annulus {

namespace {

// Convective acceleration of ubar + v minus that of ubar.
PolarVectorField convective_perturbation(const PolarVectorField& v) {
  const AnnulusGrid& g = v.grid();
  const ScalarField vr_r = d_r(v.vr), vr_t = d_theta(v.vr), vt_t = d_theta(v.vtheta);
  ScalarField rvt(g);
  for (int i = 0; i < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) rvt(i, j) = g.r(i) * v.vtheta(i, j);
  const ScalarField rvt_r = d_r(rvt);
  PolarVectorField G(g);
  for (int i = 0; i < g.nr(); ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < g.ntheta(); ++j) {
      const double vr = v.vr(i, j), vt = v.vtheta(i, j);
      const double ur = inv_r + vr;
      G.vr(i, j) = -vr * inv_r * inv_r + ur * vr_r(i, j) + vt * inv_r * vr_t(i, j) -
                   vt * vt * inv_r;
      G.vtheta(i, j) = ur * inv_r * rvt_r(i, j) + vt * inv_r * vt_t(i, j);
    }
  }
  return G;
}

EulerResidual assemble(const PolarVectorField& G, const ScalarField& p,
                       const PolarVectorField& u) {
  const PolarVectorField gp = polar_grad(p);
  EulerResidual out{G.vr + gp.vr, G.vtheta + gp.vtheta, polar_div(u)};
  out.momentum_inf = std::max(out.res_r.interior_max_abs(), out.res_theta.interior_max_abs());
  out.div_inf = out.res_div.max_abs();
  return out;
}

}  // namespace

EulerResidual euler_residual(const PolarVectorField& u, const ScalarField& p) {
  return assemble(compute_G(u), p, u);
}

EulerResidual euler_residual_split(const PolarVectorField& u, const ScalarField& p) {
  const AnnulusGrid& g = u.grid();
  const PolarVectorField v = u - base_flow(g);
  const ScalarField pbar = ScalarField::sample(g, [](double r, double) { return -0.5 / (r * r); });
  return assemble(convective_perturbation(v), p - pbar, v);
}

}  // namespace annulus
