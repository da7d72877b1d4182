#pragma once

#include "annulus/field.hpp"

namespace annulus {

// Left-hand sides of the steady polar Euler system:
//   res_r     = (u.grad) u_r - u_theta^2 / r + d_r p
//   res_theta = (u.grad) u_theta + u_r u_theta / r + (1/r) d_theta p
//   res_div   = div u
struct EulerResidual {
  ScalarField res_r, res_theta, res_div;
  double momentum_inf = 0.0;  // interior rings only
  double div_inf = 0.0;       // all nodes

  double inf() const { return momentum_inf > div_inf ? momentum_inf : div_inf; }
};

EulerResidual euler_residual(const PolarVectorField& u, const ScalarField& p);

// Same system written for the perturbation (v, p - pbar) of the reference flow
// (1/r, 0), pbar = -1/(2 r^2), whose derivatives are taken analytically; the
// reference flow itself contributes nothing, so zero data give zero residual.
EulerResidual euler_residual_split(const PolarVectorField& u, const ScalarField& p);

}  // namespace annulus
