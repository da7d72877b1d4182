#pragma once

#include <span>
#include <vector>

#include "annulus/field.hpp"
#include "annulus/parallel.hpp"

namespace annulus {

// Second-order centered differences in r, second-order one-sided at r0, r1.
ScalarField d_r(const ScalarField& f);
// Centered differences with the two boundary rings extrapolated quadratically
// from the three nearest interior rings. Also second order, but the
// truncation error -(dr^2/6) f''' stays smooth up to the circles, so a
// further centered difference of the result is still second order.
ScalarField d_r_smooth(const ScalarField& f);
// Spectral derivative in theta, ring by ring.
ScalarField d_theta(const ScalarField& f,
                    Execution exec = Execution::parallel);

// (1/r) d_r(r v_r) + (1/r) d_theta(v_theta)
ScalarField polar_div(const PolarVectorField& v);
// (1/r) (d_r(r v_theta) - d_theta(v_r))
ScalarField polar_curl(const PolarVectorField& v);
// (d_r s, (1/r) d_theta s)
PolarVectorField polar_grad(const ScalarField& s);

// dtheta * sum(samples), dtheta = 2 pi / samples.size().
double theta_quadrature(std::span<const double> samples);

// theta_quadrature(r * v_r) on every ring.
std::vector<double> ring_fluxes(const PolarVectorField& v);

// Trapezoid rule in r of column j (the segment theta = theta_j).
double radial_trapezoid(const ScalarField& f, int j);

}  // namespace annulus
