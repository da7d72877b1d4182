#pragma once

#include <string>
#include <variant>
#include <vector>

#include "annulus/bernoulli.hpp"
#include "annulus/field.hpp"
#include "annulus/parallel.hpp"

namespace annulus {

struct GSConfig {
  double picard_tol = 1e-10;
  int max_iters = 200;
  double relaxation = 1.0;
  // Retry once at relaxation 0.5 when the first attempt fails.
  bool relaxation_fallback = true;
  double smallness_cap = 0.25;
  Execution exec = Execution::parallel;
};

// phi(r, theta) = psi(r, theta) + slope * theta with psi periodic.
struct StreamFunction {
  ScalarField psi;
  double slope = 0.0;

  double value(int i, int j) const { return psi(i, j) + slope * psi.grid().theta(j); }
};

struct GSReport {
  bool converged = false;
  int iterations = 0;
  double relaxation_used = 1.0;
  std::vector<double> update_trace;
  std::vector<double> energy_trace;
  bool energy_monotone = true;
  std::vector<double> flux_defects;   // int f1 - J0 per pass (BC3)
  double outer_integrand_mean = 0.0;  // mean of F1 at the last pass (BC3)
  std::vector<std::string> warnings;
};

// update_trace[k] / update_trace[k-1] for k >= 1.
std::vector<double> contraction_ratios(const std::vector<double>& updates);

struct FluxOuter {
  BoundaryFunction f1;
  double j0 = 0.0;
};
struct DiffeoOuter {
  CircleMap T;
};
using OuterStreamData = std::variant<FluxOuter, DiffeoOuter>;

struct GSSolution {
  StreamFunction phi;
  BernoulliProfile profile;
  BoundaryStream phi1;
  BoundaryFunction f1;  // outer flux r1 u_r(r1, .) as data (BC1) or result (BC3)
  GSReport report;
};

// BC1 / BC2 with raw data: r0 u_r(r0, .) = f0 > 0, b0 the inner Bernoulli
// datum.
GSSolution solve_bc12(const BoundaryFunction& f0, const OuterStreamData& outer,
                      const BoundaryFunction& b0, const AnnulusGrid& grid,
                      const GSConfig& cfg = {});

// BC3 with perturbation data around the reference flow: r0 u_r = 1 + f0,
// outer pressure derivative p1', segment circulation j0.
GSSolution solve_bc3_gs(const BoundaryFunction& f0, const BoundaryFunction& b0,
                        const BoundaryFunction& p1prime, double j0,
                        const AnnulusGrid& grid, const GSConfig& cfg = {});

PolarVectorField velocity_from_stream(const StreamFunction& phi,
                                      Execution exec = Execution::parallel);

// p = B(phi) - |u|^2 / 2.
ScalarField pressure_from_stream(const StreamFunction& phi,
                                 const BernoulliProfile& profile,
                                 const PolarVectorField& u);

// Quadrature of (1/2)(r psi_r^2 + psi_t^2 / r) + r B(psi + slope theta), the
// functional whose critical points solve -div(K grad psi) = -r B'(phi).
double stream_energy(const StreamFunction& phi, const BernoulliProfile& profile);

namespace kernels {

// rhs(i, j) = -r_i B'(phi(i, j)), from omega = -B'(phi).
void stream_source_reference(const StreamFunction& phi, const BernoulliProfile& profile,
                             ScalarField& rhs);
void stream_source_parallel(const StreamFunction& phi, const BernoulliProfile& profile,
                            ScalarField& rhs);

}  // namespace kernels

}  // namespace annulus
