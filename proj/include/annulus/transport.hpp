#pragma once

#include <span>
#include <string>
#include <vector>

#include "annulus/boundary_function.hpp"
#include "annulus/field.hpp"
#include "annulus/interpolation.hpp"
#include "annulus/parallel.hpp"

namespace annulus {

struct FixedPointConfig {
  double fp_tol = 1e-10;
  int max_iters = 100;
  int ode_steps_per_cell = 4;
  Execution exec = Execution::parallel;
};

// vhat is the perturbation of the reference flow (1/r, 0); omega0 the
// vorticity on the inner circle.
struct TransportProblem {
  PolarVectorField vhat;
  BoundaryFunction omega0;
};

// Interpolated perturbation velocity and the characteristic slope
// d theta / d r = vhat_theta / (1 + r vhat_r).
class CharacteristicField {
 public:
  explicit CharacteristicField(const PolarVectorField& vhat);

  const AnnulusGrid& grid() const noexcept { return vr_.grid(); }

  // Series of vhat_r and vhat_theta at radius r, in the stencil of `cell`.
  struct Slice {
    double r;
    TrigSeries vr, vtheta;
  };
  Slice slice(double r, int cell) const;

 private:
  FieldInterpolator vr_, vtheta_;
};

// Slope at angle theta on a slice; throws ThroughflowSignChange when the
// radial through-flow 1 + r vhat_r is not positive.
double characteristic_slope(const CharacteristicField::Slice& s, double theta);

// RK4 from (r_target, theta_target) down to r0 with steps_per_cell steps per
// radial cell traversed. Returns theta at r0, not reduced mod 2 pi.
double backtrace_characteristic(const CharacteristicField& field, double r_target,
                                double theta_target, int steps_per_cell);
double backtrace_characteristic(const PolarVectorField& vhat, double r_target,
                                double theta_target, int steps_per_cell);

// RK4 from (r0, theta_start) up to r_target; the forward counterpart used for
// diagnostics along streamlines. Fills the angle at every node radius passed.
std::vector<double> trace_forward(const CharacteristicField& field, double theta_start,
                                  int steps_per_cell);

namespace kernels {

// Departure angle theta0(r_i, theta_j) at every node.
//
// The marching kernel advances ring by ring: one RK4 sweep across a single
// radial cell followed by the trigonometric interpolant of the previous
// ring's departure map. The reference integrates every node all the way to
// r0.
ScalarField departure_angles_marching(const CharacteristicField& field, int steps_per_cell,
                                      Execution exec);
ScalarField departure_angles_reference(const CharacteristicField& field, int steps_per_cell);

}  // namespace kernels

// omega(r, theta) = omega0(theta0(r, theta) mod 2 pi).
ScalarField solve_transport(const TransportProblem& problem, const FixedPointConfig& cfg = {});
ScalarField solve_transport_reference(const TransportProblem& problem,
                                      int steps_per_cell = 4);

// -f0'/r0^2 - p0'/(1 + f0) - d_theta(vtheta_inner^2) / (2 (1 + f0)), evaluated
// at the nodes of vtheta_inner and projected onto ntheta/2 modes.
BoundaryFunction omega0_pressure_form(const BoundaryFunction& f0, const BoundaryFunction& p0,
                                      std::span<const double> vtheta_inner, double r0);
// -b0' / (1 + f0) on n nodes, projected onto n/2 modes.
BoundaryFunction omega0_bernoulli_form(const BoundaryFunction& f0, const BoundaryFunction& b0,
                                       int n);

struct OuterFluxState {
  BoundaryFunction f1;
  double Rave = 0.0;
};

// R = -r1^2 omega(r1) - r1^2 p1' / (1 + f1hat) - r1^2 d_theta(vtheta(r1)^2) / (2 (1 + f1hat))
// and f1 = f1(0) + int_0^theta (R - Rave) with int f1 = J0.
OuterFluxState f1_update(std::span<const double> vtheta_outer, const BoundaryFunction& f1hat,
                         std::span<const double> omega_outer, const BoundaryFunction& p1prime,
                         double J0, double r1);

// -1 + T' + f0(T) T' on n nodes.
BoundaryFunction f1_from_diffeo(const CircleMap& T, const BoundaryFunction& f0, int n);

enum class VortexKind { BC4, BC5, BC1star, BC2star, BC3 };

std::string to_string(VortexKind kind);

// Perturbation data: r0 u_r(r0) = 1 + f0, r1 u_r(r1) = 1 + f1, p0, p1' the
// pressure perturbations on the circles, b0 the inner Bernoulli datum, T the
// outer diffeomorphism and j0 the segment circulation.
struct VortexData {
  BoundaryFunction f0, f1, p0, p1prime, b0;
  CircleMap T;
  double j0 = 0.0;

  double size() const;
};

struct FixedPointReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> update_trace;
  std::vector<double> rave_trace;
  std::vector<double> flux_defects;  // int f1 - J0 after each update
  double rave_final = 0.0;
  std::vector<std::string> warnings;
};

struct VortexSolution {
  PolarVectorField v;  // perturbation
  PolarVectorField u;  // (1/r, 0) + v
  ScalarField omega;
  BoundaryFunction omega0;
  BoundaryFunction f1;
  double J0 = 0.0;
  double j0 = 0.0;  // segment circulation imposed (derived from T for BC2*)
  FixedPointReport report;
};

VortexSolution fixed_point(VortexKind kind, const VortexData& data, const AnnulusGrid& grid,
                           const FixedPointConfig& cfg = {});

}  // namespace annulus
