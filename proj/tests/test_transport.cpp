#include <cmath>

#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/grad_shafranov.hpp"
#include "annulus/operators.hpp"
#include "annulus/transport.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace annulus;
using testing_support::fitted_order;
using testing_support::unit_grid;

namespace {

const BoundaryFunction kZero = BoundaryFunction::constant(0.0);

PolarVectorField swirl_perturbation(const AnnulusGrid& g, double eps) {
  return PolarVectorField::sample(
      g, [&](double r, double t) { return eps * std::cos(2 * t) / r; },
      [&](double r, double t) { return eps * std::sin(t) * (1.0 + 0.3 * r); });
}

PolarVectorField azimuthal(const AnnulusGrid& g, std::function<double(double)> f) {
  return PolarVectorField::sample(g, [](double, double) { return 0.0; },
                                  [&](double r, double) { return f(r); });
}

}  // namespace

TEST_CASE("backtrace: radial characteristics") {
  const auto g = unit_grid(17, 32);
  const PolarVectorField zero(g);
  for (double t : {0.0, 1.0, 5.5})
    CHECK(backtrace_characteristic(zero, 1.77, t, 4) == t);
}

TEST_CASE("backtrace: constant and 1/r swirl") {
  const auto g = unit_grid(33, 32);
  const double c = 0.3;
  const auto constant = azimuthal(g, [&](double) { return c; });
  const auto vortex = azimuthal(g, [&](double r) { return c / r; });
  for (double r : {1.0, 1.3, 1.77, 2.0})
    for (double t : {0.0, 2.0, 6.0}) {
      CHECK(std::abs(backtrace_characteristic(constant, r, t, 4) - (t - c * (r - 1.0))) <= 1e-13);
      // Limited by the cubic radial interpolation of c / r.
      CHECK(std::abs(backtrace_characteristic(vortex, r, t, 4) - (t - c * std::log(r))) <= 5e-8);
    }
}

TEST_CASE("backtrace: step refinement") {
  const auto g = unit_grid(33, 64);
  const auto vhat = PolarVectorField::sample(
      g, [](double, double) { return 0.0; },
      [](double r, double t) { return 0.1 * std::sin(t) * std::exp(-(r - 1.5) * (r - 1.5)); });
  const CharacteristicField field(vhat);
  for (double r : {1.2, 1.65, 2.0})
    for (double t : {0.3, 2.9, 4.4})
      CHECK(std::abs(backtrace_characteristic(field, r, t, 4) -
                     backtrace_characteristic(field, r, t, 40)) <= 1e-8);
}

TEST_CASE("forward and backward traces invert each other") {
  const auto g = unit_grid(33, 64);
  const CharacteristicField field(swirl_perturbation(g, 0.05));
  for (double t0 : {0.0, 1.1, 4.0}) {
    const auto angles = trace_forward(field, t0, 8);
    REQUIRE(angles.size() == static_cast<std::size_t>(g.nr()));
    CHECK(angles[0] == t0);
    CHECK(std::abs(backtrace_characteristic(field, g.r1(), angles.back(), 8) - t0) <= 1e-10);
  }
}

TEST_CASE("backtrace: reversed through-flow is rejected") {
  const auto g = unit_grid(17, 32);
  const auto vhat = PolarVectorField::sample(
      g, [](double r, double) { return -1.5 / r; }, [](double, double) { return 0.0; });
  try {
    backtrace_characteristic(vhat, 1.5, 0.0, 4);
    FAIL("expected ThroughflowSignChange");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::ThroughflowSignChange);
  }
  CHECK_THROWS_AS(solve_transport({vhat, BoundaryFunction(0.0, {}, {1.0})}), SolverError);
}

TEST_CASE("solve_transport examples") {
  const auto g = unit_grid(33, 64);
  const BoundaryFunction sin1(0.0, {}, {1.0});
  const BoundaryFunction omega0(0.2, {0.5, 0.1}, {1.0, 0.0, 0.3});
  const double c = 0.3;

  const ScalarField radial = solve_transport({PolarVectorField(g), omega0});
  CHECK(max_abs_diff(radial, ScalarField::sample(g, [&](double, double t) { return omega0(t); })) <= 1e-13);

  const ScalarField lin = solve_transport({azimuthal(g, [&](double) { return c; }), sin1});
  CHECK(max_abs_diff(lin, ScalarField::sample(g, [&](double r, double t) { return std::sin(t - c * (r - 1.0)); })) <= 1e-12);

  const ScalarField log = solve_transport({azimuthal(g, [&](double r) { return c / r; }), sin1});
  CHECK(max_abs_diff(log, ScalarField::sample(g, [&](double r, double t) { return std::sin(t - c * std::log(r)); })) <= 5e-8);

  const ScalarField flat = solve_transport({swirl_perturbation(g, 0.1), BoundaryFunction::constant(-0.4)});
  for (double w : flat.values()) CHECK(w == -0.4);

  const ScalarField wavy = solve_transport({swirl_perturbation(g, 0.1), omega0});
  for (int j = 0; j < g.ntheta(); ++j) CHECK(wavy(0, j) == omega0(g.theta(j)));
}

TEST_CASE("marching and per-node departure maps agree") {
  for (int n : {32, 64}) {
    const auto g = unit_grid(n + 1, 2 * n);
    const CharacteristicField field(swirl_perturbation(g, 0.05));
    const ScalarField march = kernels::departure_angles_marching(field, 4, Execution::serial);
    const ScalarField ref = kernels::departure_angles_reference(field, 4);
    CHECK(max_abs_diff(march, ref) <= 1e-9);
    CHECK(march.values() == kernels::departure_angles_marching(field, 4, Execution::parallel).values());
  }
}

TEST_CASE("omega0 forms") {
  const int n = 64;
  const std::vector<double> zero_row(n, 0.0);
  const double eps = 0.03;
  auto near = [&](const BoundaryFunction& a, auto exact) {
    double e = 0.0;
    for (int j = 0; j < 3 * n; ++j) {
      const double t = kTwoPi * j / (3 * n);
      e = std::max(e, std::abs(a(t) - exact(t)));
    }
    return e;
  };
  CHECK(omega0_pressure_form(kZero, kZero, zero_row, 1.0).sampled_sup(n) == 0.0);
  CHECK(near(omega0_pressure_form(kZero, BoundaryFunction(0.0, {eps}, {}), zero_row, 1.0),
             [&](double t) { return eps * std::sin(t); }) <= 1e-14);
  CHECK(near(omega0_pressure_form(BoundaryFunction(0.0, {0.1}, {}), kZero, zero_row, 1.5),
             [&](double t) { return 0.1 / 2.25 * std::sin(t); }) <= 1e-14);

  // A v_theta row cos t adds -d(cos^2)/2 = sin t cos t.
  std::vector<double> row(n);
  for (int j = 0; j < n; ++j) row[j] = std::cos(kTwoPi * j / n);
  CHECK(near(omega0_pressure_form(kZero, kZero, row, 1.0),
             [&](double t) { return std::sin(t) * std::cos(t); }) <= 1e-13);

  CHECK(omega0_bernoulli_form(kZero, BoundaryFunction::constant(0.3), n).sampled_sup(n) == 0.0);
  CHECK(near(omega0_bernoulli_form(kZero, BoundaryFunction(0.0, {}, {eps}), n),
             [&](double t) { return -eps * std::cos(t); }) <= 1e-14);
  CHECK(near(omega0_bernoulli_form(BoundaryFunction::constant(0.1), BoundaryFunction(0.0, {}, {eps}), n),
             [&](double t) { return -eps / 1.1 * std::cos(t); }) <= 1e-14);

  CHECK_THROWS_AS(omega0_bernoulli_form(BoundaryFunction::constant(-1.2), kZero, n), SolverError);
  CHECK_THROWS_AS(omega0_pressure_form(BoundaryFunction(-0.5, {0.8}, {}), kZero, zero_row, 1.0),
                  SolverError);
}

TEST_CASE("f1_update examples") {
  const int n = 128;
  const std::vector<double> zero_row(n, 0.0);
  const OuterFluxState none = f1_update(zero_row, kZero, zero_row, kZero, 0.0, 2.0);
  CHECK(none.f1.sampled_sup(n) == 0.0);
  CHECK(none.Rave == 0.0);

  const double J0 = 0.37;
  const OuterFluxState flat = f1_update(zero_row, kZero, zero_row, kZero, J0, 2.0);
  CHECK(std::abs(flat.f1(1.3) - J0 / kTwoPi) <= 1e-15);

  std::vector<double> omega(n);
  for (int j = 0; j < n; ++j) omega[j] = std::sin(kTwoPi * j / n);
  const double r1 = 2.0;
  const OuterFluxState s = f1_update(zero_row, kZero, omega, kZero, 0.0, r1);
  CHECK(std::abs(s.Rave) <= 1e-15);
  // int f1 = J0 forces f1(0) = (J0 - int_0^{2pi} R(z)(2pi - z) dz) / 2pi;
  // the double integral by composite Simpson.
  const int m = 20000;
  double quad = 0.0;
  for (int k = 0; k <= m; ++k) {
    const double z = kTwoPi * k / m;
    const double w = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    quad += w * (-r1 * r1 * std::sin(z)) * (kTwoPi - z);
  }
  quad *= kTwoPi / m / 3.0;
  const double f10 = -quad / kTwoPi;
  CHECK(std::abs(s.f1(0.0) - f10) <= 1e-10);
  for (double t : {0.5, 2.0, 4.0})
    CHECK(std::abs(s.f1(t) - (f10 + r1 * r1 * (std::cos(t) - 1.0))) <= 1e-10);
  CHECK(std::abs(s.f1.integral()) <= 1e-12);

  CHECK_THROWS_AS(f1_update(zero_row, BoundaryFunction::constant(-1.0), zero_row, kZero, 0.0, 2.0),
                  SolverError);
}

TEST_CASE("f1_from_diffeo examples") {
  const int n = 64;
  const double eps = 0.1;
  const CircleMap id(kZero), bent(BoundaryFunction(0.0, {}, {eps}));
  const BoundaryFunction f0(0.05, {0.1}, {0.02});
  const BoundaryFunction same = f1_from_diffeo(id, f0, n);
  const BoundaryFunction plain = f1_from_diffeo(bent, kZero, n);
  const BoundaryFunction shifted = f1_from_diffeo(bent, BoundaryFunction::constant(0.1), n);
  for (double t : {0.0, 0.7, 3.3}) {
    CHECK(std::abs(same(t) - f0(t)) <= 1e-14);
    CHECK(std::abs(plain(t) - eps * std::cos(t)) <= 1e-14);
    CHECK(std::abs(shifted(t) - (1.1 * (1.0 + eps * std::cos(t)) - 1.0)) <= 1e-14);
  }
  const BoundaryFunction mixed = f1_from_diffeo(bent, f0, n);
  CHECK(std::abs(mixed.integral() - f0.integral()) <= 1e-10);
  CHECK_THROWS_AS(f1_from_diffeo(CircleMap(BoundaryFunction(0.0, {}, {1.5})), kZero, n), SolverError);
}

TEST_CASE("every kind returns the reference flow for zero data") {
  const auto g = unit_grid(17, 32);
  for (auto kind : {VortexKind::BC4, VortexKind::BC5, VortexKind::BC1star, VortexKind::BC2star,
                    VortexKind::BC3}) {
    CAPTURE(to_string(kind));
    const VortexData d{kZero, kZero, kZero, kZero, kZero, CircleMap(kZero), 0.0};
    const VortexSolution s = fixed_point(kind, d, g);
    CHECK(s.report.converged);
    CHECK(s.report.iterations == 1);
    CHECK(s.v.max_abs() == 0.0);
    CHECK(max_abs_diff(s.u, base_flow(g)) == 0.0);
  }
}

TEST_CASE("BC4 irrotational swirl converges at second order") {
  const double a = 1.1, c = 0.1;
  std::vector<double> hs, errs;
  for (int n : {16, 32, 64}) {
    const auto g = unit_grid(n + 1, 32);
    const BoundaryFunction f = BoundaryFunction::constant(a - 1.0);
    const VortexData d{f, f, BoundaryFunction::constant((1.0 - a * a - c * c) / 2.0), kZero, kZero,
                       CircleMap(kZero), c * std::log(2.0)};
    const VortexSolution s = fixed_point(VortexKind::BC4, d, g);
    CHECK(s.report.converged);
    CHECK(s.omega.max_abs() <= 1e-12);
    hs.push_back(g.dr());
    errs.push_back(max_abs_diff(
        s.u, PolarVectorField::sample(g, [&](double r, double) { return a / r; },
                                      [&](double r, double) { return c / r; })));
  }
  CHECK(fitted_order(hs, errs) >= 1.9);
}

TEST_CASE("BC1* agrees with the Grad-Shafranov solve") {
  const auto g = unit_grid(65, 128);
  const BoundaryFunction b0(0.0, {}, {0.02});
  const VortexData d{kZero, kZero, kZero, kZero, b0, CircleMap(kZero), 0.0};
  const VortexSolution vt = fixed_point(VortexKind::BC1star, d, g);
  REQUIRE(vt.report.converged);
  const BoundaryFunction one = BoundaryFunction::constant(1.0);
  const GSSolution gs = solve_bc12(one, FluxOuter{one, 0.0}, b0, g);
  CHECK(max_abs_diff(velocity_from_stream(gs.phi), vt.u) <= 5e-3);
}

TEST_CASE("fixed-point contraction, ring flux and outer flux for small data") {
  const auto g = unit_grid(33, 64);
  const double eps = 0.01;
  const VortexData d{BoundaryFunction(0.0, {eps}, {}), BoundaryFunction(0.0, {}, {eps}),
                     BoundaryFunction(0.0, {}, {eps}), BoundaryFunction(0.0, {eps}, {}),
                     BoundaryFunction(0.0, {eps}, {eps}), CircleMap(BoundaryFunction(0.0, {}, {eps})),
                     eps};
  for (auto kind : {VortexKind::BC4, VortexKind::BC5, VortexKind::BC1star, VortexKind::BC2star,
                    VortexKind::BC3}) {
    CAPTURE(to_string(kind));
    VortexData dk = d;
    if (kind == VortexKind::BC4 || kind == VortexKind::BC1star) dk.f1 = dk.f0;
    const VortexSolution s = fixed_point(kind, dk, g);
    REQUIRE(s.report.converged);
    const auto& up = s.report.update_trace;
    for (std::size_t k = 2; k < up.size(); ++k) {
      if (up[k - 1] < 1e-12) break;
      CHECK(up[k] / up[k - 1] <= 0.5);
    }
    const double J0 = s.J0;
    for (double flux : ring_fluxes(s.u))
      CHECK(std::abs(flux - (kTwoPi + J0)) <= 1e-10 * (kTwoPi + std::abs(J0)));
    for (double defect : s.report.flux_defects) CHECK(std::abs(defect) <= 1e-10);
    CHECK(std::abs(s.f1.integral() - J0) <= 1e-10);
  }
}

TEST_CASE("serial and parallel fixed points are bit-identical") {
  const auto g = unit_grid(33, 64);
  const VortexData d{BoundaryFunction(0.0, {0.02}, {}), kZero, kZero, BoundaryFunction(0.0, {0.01}, {}),
                     BoundaryFunction(0.0, {}, {0.02}), CircleMap(kZero), 0.01};
  FixedPointConfig serial, parallel;
  serial.exec = Execution::serial;
  parallel.exec = Execution::parallel;
  const VortexSolution a = fixed_point(VortexKind::BC5, d, g, serial);
  const VortexSolution b = fixed_point(VortexKind::BC5, d, g, parallel);
  CHECK(a.v.vr.values() == b.v.vr.values());
  CHECK(a.v.vtheta.values() == b.v.vtheta.values());
}

TEST_CASE("fixed-point gates") {
  const auto g = unit_grid(17, 32);
  VortexData d{BoundaryFunction::constant(0.1), kZero, kZero, kZero, kZero, CircleMap(kZero), 0.0};
  CHECK_THROWS_AS(fixed_point(VortexKind::BC4, d, g), SolverError);
  d.f0 = BoundaryFunction::constant(-1.5);
  CHECK_THROWS_AS(fixed_point(VortexKind::BC3, d, g), SolverError);
  d.f0 = kZero;
  d.T = CircleMap(BoundaryFunction(0.0, {}, {2.0}));
  CHECK_THROWS_AS(fixed_point(VortexKind::BC2star, d, g), SolverError);

  FixedPointConfig cfg;
  cfg.max_iters = 2;
  const VortexData some{BoundaryFunction(0.0, {0.01}, {}), kZero, BoundaryFunction(0.0, {}, {0.01}),
                        kZero, kZero, CircleMap(kZero), 0.0};
  try {
    fixed_point(VortexKind::BC5, some, g, cfg);
    FAIL("expected NoConvergence");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.iteration() == 2);
  }
}
