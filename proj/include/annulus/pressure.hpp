#pragma once

#include <variant>

#include "annulus/boundary_function.hpp"
#include "annulus/field.hpp"
#include "annulus/parallel.hpp"

namespace annulus {

// G_r = (u.grad) u_r - u_t^2 / r and G_t = (u.grad) u_t + u_r u_t / r, the
// latter evaluated as (u_r / r) d_r(r u_t) + (u_t / r) d_theta u_t.
PolarVectorField compute_G(const PolarVectorField& u);

// G(ubar + v) - G(ubar) for the reference flow ubar = (1/r, 0) in Lamb form,
// grad q + omega (-v_theta, 1/r + v_r) with q = (|u|^2 - |ubar|^2)/2 and
// omega the vorticity of v. Taking omega from the transport solve keeps it
// exact on the inner circle and makes the arc leg satisfy
// d_theta(|u|^2/2 + g) = -r u_r omega ring by ring.
PolarVectorField compute_G_perturbation(const PolarVectorField& v, const ScalarField& omega);

enum class PathKind { radial_then_arc, arc_then_radial };

struct PotentialOptions {
  double curl_const = 10.0;  // curl_tol = curl_const * dr^2
  bool enforce_gates = true;
  Execution exec = Execution::parallel;
};

struct Potential {
  ScalarField g;
  double curl_defect = 0.0;  // sup |curl G|
  double curl_limit = 0.0;   // curl_tol (1 + sup |G|)
  double seam_defect = 0.0;  // max over rings of |r int G_theta dtheta|
  double seam_limit = 0.0;
  bool gates_passed = true;
};

// g(r, theta) = -int G.dl from (r0, 0), with g(r0, 0) = 0. Radial legs use
// the trapezoid rule, arcs the exact antiderivative of the trigonometric
// interpolant. The arc integral's seam defect (the mean of G_theta) is
// reported and removed so g stays periodic.
Potential integrate_g(const PolarVectorField& G, PathKind path = PathKind::radial_then_arc,
                      const PotentialOptions& opts = {});

// g of the reference flow, (1 - r0^2 / r^2) / (2 r0^2).
ScalarField reference_potential(const AnnulusGrid& grid);

struct BC4Normalization {
  BoundaryFunction p0;
};
struct BernoulliNormalization {
  BoundaryFunction b0;
  double speed_sq_at_origin = 0.0;  // |u(r0, 0)|^2
};
using Normalization = std::variant<BC4Normalization, BernoulliNormalization>;

struct NormalizedPressure {
  ScalarField p;
  double inner_residual = 0.0;  // sup over the inner ring of the datum defect
};

// BC4: p = g - 1/(2 r0^2) + p0(0). Bernoulli kinds: p = g - |u(r0,0)|^2/2 + b0(0).
// inner_residual compares p(r0, .) with -1/(2 r0^2) + p0 for BC4 and
// |u|^2/2 + p with b0 for the Bernoulli kinds (needs u).
NormalizedPressure pressure_normalize(const ScalarField& g, const Normalization& kind,
                                      const PolarVectorField* u = nullptr);

struct CompatResult {
  bool ok = false;
  double gap = 0.0;         // p1(0) - (p(r1, 0) + 1/(2 r1^2))
  double row_defect = 0.0;  // sup |p(r1, .) - (-1/(2 r1^2) + p1)|
};

CompatResult trace_and_compat(const ScalarField& p, const BoundaryFunction& p1,
                              double compat_tol = 1e-6);

struct PressureReconstruction {
  ScalarField p;
  Potential potential;  // of the rotational part of the perturbation acceleration
  double inner_residual = 0.0;
};

// Pressure of u = (1/r, 0) + v. The reference potential and the gradient
// part of the Lamb-form acceleration, -(q - q(r0, 0)), are added exactly;
// only the rotational part omega (-v_theta, 1/r + v_r) goes through
// integrate_g, and the reported gates refer to it. The Bernoulli
// normalization's |u(r0, 0)|^2 is taken from u; any value stored in the
// passed normalization is ignored. Gates are reported, not enforced.
PressureReconstruction reconstruct_pressure(const PolarVectorField& v, const ScalarField& omega,
                                            const Normalization& kind, PotentialOptions opts = {});

namespace kernels {

// Per-ring arc integrals -r int_0^theta (G_theta - mean) for every ring, plus
// each ring's mean of G_theta.
void arc_integrals_reference(const ScalarField& Gt, ScalarField& out, std::vector<double>& means);
void arc_integrals_parallel(const ScalarField& Gt, ScalarField& out, std::vector<double>& means);

}  // namespace kernels

}  // namespace annulus
