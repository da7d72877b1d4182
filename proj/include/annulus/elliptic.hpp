#pragma once

#include <vector>

#include "annulus/boundary_function.hpp"
#include "annulus/field.hpp"
#include "annulus/parallel.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

// weighted_K:  -[(r phi_r)_r + (1/r) phi_tt]          = rhs
// laplace_c:   (1/r)[(r phi_r)_r + (1/r) phi_tt]      = rhs
enum class EllipticOperator { weighted_K, laplace_c };

struct EllipticProblem {
  ScalarField rhs;
  // ntheta entries, or ntheta + 1 with a repeated seam value.
  std::vector<double> dirichlet_inner;
  std::vector<double> dirichlet_outer;
  EllipticOperator op = EllipticOperator::laplace_c;

  const AnnulusGrid& grid() const noexcept { return rhs.grid(); }
};

// Fourier in theta, one tridiagonal solve per mode in r with the
// conservative stencil [r_{i+1/2}(phi_{i+1}-phi_i) - r_{i-1/2}(phi_i-phi_{i-1})]/dr^2.
// Boundary rows of the result are the Dirichlet data verbatim.
ScalarField solve_elliptic(const EllipticProblem& problem,
                           Execution exec = Execution::parallel);

// The discrete operator of solve_elliptic applied to phi (rows 0 and nr-1
// are left at zero).
ScalarField apply_elliptic(EllipticOperator op, const ScalarField& phi);

namespace kernels {

// Radial tridiagonal systems for every mode, stored ring-major:
// spectra[i * nmodes + k]. Rows 0 and nr-1 hold Dirichlet coefficients on
// input; interior rows hold the right-hand side already multiplied by dr^2
// and by the operator's sign/weight. Overwritten with the solution.
void solve_modes_reference(const AnnulusGrid& grid, std::vector<Complex>& spectra);
void solve_modes_parallel(const AnnulusGrid& grid, std::vector<Complex>& spectra);

}  // namespace kernels

struct DivCurlProblem {
  ScalarField omega;
  BoundaryFunction f0;  // r0 w_r(r0, .)
  BoundaryFunction f1;  // r1 w_r(r1, .)
  double j0 = 0.0;      // int_{r0}^{r1} w_theta(r, 0) dr

  const AnnulusGrid& grid() const noexcept { return omega.grid(); }
};

double flux_tolerance(double J0);

struct DivCurlSolution {
  PolarVectorField w;
  ScalarField phi;  // periodic part of the stream function
  double flux_defect = 0.0;
};

DivCurlSolution solve_div_curl_full(const DivCurlProblem& problem,
                                    Execution exec = Execution::parallel);

inline PolarVectorField solve_div_curl(const DivCurlProblem& problem,
                                       Execution exec = Execution::parallel) {
  return solve_div_curl_full(problem, exec).w;
}

}  // namespace annulus
