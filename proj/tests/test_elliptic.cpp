#include <cmath>
#include <random>

#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/operators.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace annulus;
using testing_support::fitted_order;
using testing_support::unit_grid;

namespace {

EllipticProblem homogeneous(const AnnulusGrid& g, EllipticOperator op) {
  return {ScalarField(g), std::vector<double>(g.ntheta(), 0.0),
          std::vector<double>(g.ntheta(), 0.0), op};
}

ScalarField random_field(const AnnulusGrid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScalarField f(g);
  for (double& v : f.values()) v = u(rng);
  return f;
}

}  // namespace

TEST_CASE("homogeneous elliptic problems have only the zero solution") {
  const auto g = unit_grid(17, 32);
  for (auto op : {EllipticOperator::weighted_K, EllipticOperator::laplace_c})
    CHECK(solve_elliptic(homogeneous(g, op)).max_abs() == 0.0);
}

TEST_CASE("laplace_c with logarithmic data") {
  std::vector<double> hs, errs;
  for (int nr : {16, 32, 64, 128}) {
    const auto g = unit_grid(nr + 1, 16);
    auto p = homogeneous(g, EllipticOperator::laplace_c);
    const double top = std::log(g.r1() / g.r0());
    p.dirichlet_outer.assign(g.ntheta(), top);
    const ScalarField phi = solve_elliptic(p);

    // Discrete oracle: r_{i+1/2}(phi_{i+1} - phi_i) is constant, so phi is the
    // normalised partial sum of 1/r_{k+1/2}.
    std::vector<double> partial(g.nr(), 0.0);
    for (int i = 1; i < g.nr(); ++i) partial[i] = partial[i - 1] + 1.0 / (g.r(i - 1) + 0.5 * g.dr());
    double err = 0.0, discrete = 0.0, spread = 0.0;
    for (int i = 0; i < g.nr(); ++i)
      for (int j = 0; j < g.ntheta(); ++j) {
        err = std::max(err, std::abs(phi(i, j) - std::log(g.r(i) / g.r0())));
        discrete = std::max(discrete, std::abs(phi(i, j) - top * partial[i] / partial.back()));
        spread = std::max(spread, std::abs(phi(i, j) - phi(i, 0)));
      }
    CHECK(discrete <= 1e-13);
    CHECK(spread <= 1e-14);
    hs.push_back(g.dr());
    errs.push_back(err);
  }
  CHECK(fitted_order(hs, errs) >= 1.9);
  CHECK(errs.back() <= 1e-5);
}

TEST_CASE("weighted_K with phi0 = phi1 = theta gives psi = 0") {
  // After removing the linear part theta from both Dirichlet rows the data
  // vanish, and so does psi.
  const auto g = unit_grid(17, 32);
  const ScalarField psi = solve_elliptic(homogeneous(g, EllipticOperator::weighted_K));
  CHECK(psi.max_abs() == 0.0);
}

TEST_CASE("elliptic solution satisfies the discrete operator") {
  const auto g = unit_grid(25, 32);
  for (auto op : {EllipticOperator::weighted_K, EllipticOperator::laplace_c}) {
    EllipticProblem p{random_field(g, 7), random_field(g, 8).values(), {}, op};
    p.dirichlet_inner.resize(g.ntheta());
    p.dirichlet_outer = random_field(g, 9).values();
    p.dirichlet_outer.resize(g.ntheta());
    const ScalarField phi = solve_elliptic(p);
    const ScalarField applied = apply_elliptic(op, phi);
    double err = 0.0;
    for (int i = 1; i + 1 < g.nr(); ++i)
      for (int j = 0; j < g.ntheta(); ++j) err = std::max(err, std::abs(applied(i, j) - p.rhs(i, j)));
    CHECK(err <= 1e-9);
    for (int j = 0; j < g.ntheta(); ++j) {
      CHECK(phi(0, j) == p.dirichlet_inner[j]);
      CHECK(phi(g.nr() - 1, j) == p.dirichlet_outer[j]);
    }
  }
}

TEST_CASE("laplace_c manufactured solution converges at second order") {
  auto phi = [](double r, double t) { return std::sin(3 * r) * std::cos(2 * t) + r * r * std::sin(t); };
  auto lap = [](double r, double t) {
    const double a = std::cos(2 * t) * (-9 * std::sin(3 * r) + 3 * std::cos(3 * r) / r - 4 * std::sin(3 * r) / (r * r));
    const double b = std::sin(t) * (2.0 + 2.0 - 1.0);
    return a + b;
  };
  std::vector<double> hs, errs;
  for (int nr : {16, 32, 64, 128}) {
    const auto g = unit_grid(nr + 1, 16);
    EllipticProblem p{ScalarField::sample(g, lap), {}, {}, EllipticOperator::laplace_c};
    for (int j = 0; j < g.ntheta(); ++j) {
      p.dirichlet_inner.push_back(phi(g.r0(), g.theta(j)));
      p.dirichlet_outer.push_back(phi(g.r1(), g.theta(j)));
    }
    const ScalarField s = solve_elliptic(p);
    hs.push_back(g.dr());
    errs.push_back(max_abs_diff(s, ScalarField::sample(g, phi)));
  }
  CHECK(fitted_order(hs, errs) >= 1.9);
}

TEST_CASE("boundary data periodicity is enforced") {
  const auto g = unit_grid(9, 8);
  auto p = homogeneous(g, EllipticOperator::laplace_c);
  p.dirichlet_outer.assign(g.ntheta() + 1, 1.0);
  CHECK(solve_elliptic(p).max_abs() == doctest::Approx(1.0));

  p.dirichlet_outer.back() = 1.5;
  try {
    solve_elliptic(p);
    FAIL("expected NonPeriodicData");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::NonPeriodicData);
    CHECK(e.value() == doctest::Approx(0.5));
  }
  p.dirichlet_outer.assign(5, 0.0);
  CHECK_THROWS_AS(solve_elliptic(p), SolverError);
}

TEST_CASE("serial and parallel modal solves are bit-identical") {
  const auto g = unit_grid(33, 64);
  EllipticProblem p{random_field(g, 1), random_field(g, 2).values(), random_field(g, 3).values(),
                    EllipticOperator::weighted_K};
  p.dirichlet_inner.resize(g.ntheta());
  p.dirichlet_outer.resize(g.ntheta());
  CHECK(solve_elliptic(p, Execution::serial).values() ==
        solve_elliptic(p, Execution::parallel).values());
}

TEST_CASE("div-curl: reference flow datum") {
  const auto g = unit_grid(17, 32);
  const auto one = BoundaryFunction::constant(1.0);
  const PolarVectorField w = solve_div_curl({ScalarField(g), one, one, 0.0});
  CHECK(max_abs_diff(w, base_flow(g)) <= 1e-13);
}

TEST_CASE("div-curl: point vortex converges at second order, solid rotation is exact") {
  const double c = 0.3, wbar = 0.8;
  std::vector<double> hs, e_vortex, e_solid;
  for (int nr : {16, 32, 64, 128}) {
    const auto g = unit_grid(nr + 1, 16);
    const auto zero = BoundaryFunction::constant(0.0);
    const PolarVectorField wv =
        solve_div_curl({ScalarField(g), zero, zero, c * std::log(g.r1() / g.r0())});
    const auto vortex = PolarVectorField::sample(
        g, [](double, double) { return 0.0; }, [&](double r, double) { return c / r; });
    const double j0 = wbar * (g.r1() * g.r1() - g.r0() * g.r0()) / 4.0;
    const PolarVectorField ws = solve_div_curl({ScalarField(g, wbar), zero, zero, j0});
    const auto solid = PolarVectorField::sample(
        g, [](double, double) { return 0.0; }, [&](double r, double) { return 0.5 * wbar * r; });
    hs.push_back(g.dr());
    e_vortex.push_back(max_abs_diff(wv, vortex));
    e_solid.push_back(max_abs_diff(ws, solid));
  }
  CHECK(fitted_order(hs, e_vortex) >= 1.9);
  // The stream function is quadratic in r, which the radial stencils reproduce.
  for (double e : e_solid) CHECK(e <= 1e-12);
}

namespace {

DivCurlProblem sample_problem(const AnnulusGrid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  const double mean = u(rng);
  BoundaryFunction f0(mean, {u(rng), u(rng)}, {u(rng), u(rng), u(rng)});
  BoundaryFunction f1(mean, {u(rng)}, {u(rng), u(rng)});
  const double a = u(rng), b = u(rng);
  ScalarField omega =
      ScalarField::sample(g, [&](double r, double t) { return a * std::sin(r + 2 * t) + b * r * std::cos(t); });
  return {omega, f0, f1, u(rng)};
}

DivCurlProblem combine(double a, const DivCurlProblem& p, double b, const DivCurlProblem& q) {
  return {a * p.omega + b * q.omega, a * p.f0 + b * q.f0, a * p.f1 + b * q.f1, a * p.j0 + b * q.j0};
}

}  // namespace

TEST_CASE("div-curl linearity and homogeneous uniqueness") {
  const auto g = unit_grid(33, 64);
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto p = sample_problem(g, seed), q = sample_problem(g, seed + 100);
    const double a = 0.5 + seed, b = -1.25 / seed;
    const PolarVectorField lhs = solve_div_curl(combine(a, p, b, q));
    const PolarVectorField rhs = a * solve_div_curl(p) + b * solve_div_curl(q);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
    CHECK(max_abs_diff(solve_div_curl(combine(2.0, p, 0.0, q)), 2.0 * solve_div_curl(p)) <= 1e-12);
  }
  const auto zero = BoundaryFunction::constant(0.0);
  CHECK(solve_div_curl({ScalarField(g), zero, zero, 0.0}).max_abs() <= 1e-14);
}

TEST_CASE("div-curl output: divergence, ring flux, boundary flux, circulation") {
  const auto g = unit_grid(65, 64);
  const auto p = sample_problem(g, 42);
  const DivCurlSolution s = solve_div_curl_full(p);
  CHECK(polar_div(s.w).interior_max_abs() <= 1e-11);

  const double J0 = p.f0.integral();
  for (double flux : ring_fluxes(s.w)) CHECK(std::abs(flux - J0) <= 1e-10 * (1.0 + std::abs(J0)));

  for (int j = 0; j < g.ntheta(); ++j) {
    CHECK(std::abs(g.r0() * s.w.vr(0, j) - p.f0(g.theta(j))) <= 1e-13);
    CHECK(std::abs(g.r1() * s.w.vr(g.nr() - 1, j) - p.f1(g.theta(j))) <= 1e-13);
  }
  CHECK(std::abs(radial_trapezoid(s.w.vtheta, 0) - p.j0) <= 1e-4);

  const ScalarField curl = polar_curl(s.w);
  double err = 0.0;
  for (int i = 2; i + 2 < g.nr(); ++i)
    for (int j = 0; j < g.ntheta(); ++j) err = std::max(err, std::abs(curl(i, j) - p.omega(i, j)));
  CHECK(err <= 1e-3);
}

TEST_CASE("div-curl divergence on the circles decays at second order") {
  std::vector<double> h, err;
  // Coarser levels are pre-asymptotic (the extrapolated boundary rings carry
  // an O(dr^3) term with a large constant): 1.73 over 33/65/129.
  for (int n : {129, 257, 513}) {
    const auto g = unit_grid(n, 64);
    const DivCurlSolution s = solve_div_curl_full(sample_problem(g, 42));
    h.push_back(g.dr());
    err.push_back(polar_div(s.w).max_abs());
  }
  CHECK(fitted_order(h, err) >= 1.9);
}

TEST_CASE("div-curl rejects unequal boundary fluxes") {
  const auto g = unit_grid(9, 8);
  try {
    solve_div_curl({ScalarField(g), BoundaryFunction::constant(1.0), BoundaryFunction::constant(1.1), 0.0});
    FAIL("expected FluxMismatch");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::FluxMismatch);
    CHECK(e.value() == doctest::Approx(-0.1 * kTwoPi));
  }
}
