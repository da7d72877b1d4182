#include "annulus/operators.hpp"

#include <cassert>

#include "annulus/spectral.hpp"

namespace annulus {

ScalarField d_r(const ScalarField& f) {
  const AnnulusGrid& g = f.grid();
  const int nr = g.nr(), nt = g.ntheta();
  const double inv2h = 1.0 / (2.0 * g.dr());
  ScalarField out(g);
  for (int j = 0; j < nt; ++j) {
    out(0, j) = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) * inv2h;
    for (int i = 1; i + 1 < nr; ++i) out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv2h;
    out(nr - 1, j) =
        (3.0 * f(nr - 1, j) - 4.0 * f(nr - 2, j) + f(nr - 3, j)) * inv2h;
  }
  return out;
}

ScalarField d_r_smooth(const ScalarField& f) {
  const int nr = f.grid().nr(), nt = f.grid().ntheta();
  ScalarField out = d_r(f);
  for (int j = 0; j < nt; ++j) {
    out(0, j) = 3.0 * out(1, j) - 3.0 * out(2, j) + out(3, j);
    out(nr - 1, j) = 3.0 * out(nr - 2, j) - 3.0 * out(nr - 3, j) + out(nr - 4, j);
  }
  return out;
}

ScalarField d_theta(const ScalarField& f, Execution exec) {
  const AnnulusGrid& g = f.grid();
  ScalarField out(g);
  const int nr = g.nr();
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nr; ++i) spectral_derivative(f.ring(i), out.ring(i));
  } else {
    for (int i = 0; i < nr; ++i) spectral_derivative(f.ring(i), out.ring(i));
  }
  return out;
}

namespace {

ScalarField times_r(const ScalarField& f) {
  ScalarField out = f;
  const AnnulusGrid& g = f.grid();
  for (int i = 0; i < g.nr(); ++i)
    for (double& v : out.ring(i)) v *= g.r(i);
  return out;
}

ScalarField over_r(ScalarField f) {
  const AnnulusGrid& g = f.grid();
  for (int i = 0; i < g.nr(); ++i) {
    const double inv = 1.0 / g.r(i);
    for (double& v : f.ring(i)) v *= inv;
  }
  return f;
}

}  // namespace

ScalarField polar_div(const PolarVectorField& v) {
  return over_r(d_r(times_r(v.vr)) + d_theta(v.vtheta));
}

ScalarField polar_curl(const PolarVectorField& v) {
  return over_r(d_r(times_r(v.vtheta)) - d_theta(v.vr));
}

PolarVectorField polar_grad(const ScalarField& s) {
  return {d_r(s), over_r(d_theta(s))};
}

double theta_quadrature(std::span<const double> samples) {
  double acc = 0.0;
  for (double v : samples) acc += v;
  return acc * (kTwoPi / static_cast<double>(samples.size()));
}

std::vector<double> ring_fluxes(const PolarVectorField& v) {
  const AnnulusGrid& g = v.grid();
  std::vector<double> out(g.nr());
  for (int i = 0; i < g.nr(); ++i) out[i] = g.r(i) * theta_quadrature(v.vr.ring(i));
  return out;
}

double radial_trapezoid(const ScalarField& f, int j) {
  const AnnulusGrid& g = f.grid();
  const int nr = g.nr();
  double acc = 0.5 * (f(0, j) + f(nr - 1, j));
  for (int i = 1; i + 1 < nr; ++i) acc += f(i, j);
  return acc * g.dr();
}

}  // namespace annulus
