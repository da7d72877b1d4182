#include <cmath>

#include "annulus/errors.hpp"
#include "annulus/grad_shafranov.hpp"
#include "annulus/operators.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace annulus;
using testing_support::fitted_order;
using testing_support::unit_grid;

namespace {

const BoundaryFunction kOne = BoundaryFunction::constant(1.0);
const BoundaryFunction kZero = BoundaryFunction::constant(0.0);

double max_coarse_diff(const StreamFunction& coarse, const StreamFunction& fine) {
  const AnnulusGrid& gc = coarse.psi.grid();
  const AnnulusGrid& gf = fine.psi.grid();
  const int si = (gf.nr() - 1) / (gc.nr() - 1), sj = gf.ntheta() / gc.ntheta();
  double err = 0.0;
  for (int i = 0; i < gc.nr(); ++i)
    for (int j = 0; j < gc.ntheta(); ++j)
      err = std::max(err, std::abs(coarse.value(i, j) - fine.value(i * si, j * sj)));
  return err;
}

}  // namespace

TEST_CASE("BC1 with constant data gives phi = theta") {
  const auto g = unit_grid(17, 32);
  const GSSolution s = solve_bc12(kOne, FluxOuter{kOne, 0.0}, BoundaryFunction::constant(0.3), g);
  CHECK(s.report.converged);
  CHECK(s.phi.slope == doctest::Approx(1.0));
  CHECK(s.phi.psi.max_abs() <= 1e-14);
  CHECK(max_abs_diff(velocity_from_stream(s.phi), base_flow(g)) <= 1e-13);
}

TEST_CASE("BC2 with the identity map matches BC1 with f1 = f0") {
  const auto g = unit_grid(33, 64);
  const BoundaryFunction f0(1.0, {0.1}, {0.05});
  const BoundaryFunction b0(0.0, {0.02}, {0.03});
  const GSSolution bc2 = solve_bc12(f0, DiffeoOuter{CircleMap(kZero)}, b0, g);
  // phi1 = phi0 vanishes at theta = 0, so the realised circulation is zero.
  const GSSolution bc1 = solve_bc12(f0, FluxOuter{f0, 0.0}, b0, g);
  CHECK(bc1.report.converged);
  CHECK(bc2.report.iterations == bc1.report.iterations);
  CHECK(max_abs_diff(bc1.phi.psi, bc2.phi.psi) <= 1e-12);
}

TEST_CASE("BC1 boundary residuals, Bernoulli identity and circulation") {
  const auto g = unit_grid(65, 64);
  const BoundaryFunction f0(1.0, {0.1}, {0.05});
  const BoundaryFunction f1(1.0, {-0.05}, {0.0, 0.02});
  const BoundaryFunction b0(0.1, {0.02}, {0.03});
  const double j0 = 0.05;
  const GSSolution s = solve_bc12(f0, FluxOuter{f1, j0}, b0, g);
  REQUIRE(s.report.converged);
  const PolarVectorField u = velocity_from_stream(s.phi);
  const ScalarField p = pressure_from_stream(s.phi, s.profile, u);
  for (int j = 0; j < g.ntheta(); ++j) {
    const double t = g.theta(j);
    CHECK(std::abs(g.r0() * u.vr(0, j) - f0(t)) <= 1e-12);
    CHECK(std::abs(g.r1() * u.vr(g.nr() - 1, j) - f1(t)) <= 1e-12);
    const double q = 0.5 * (u.vr(0, j) * u.vr(0, j) + u.vtheta(0, j) * u.vtheta(0, j));
    CHECK(std::abs(q + p(0, j) - b0(t)) <= 1e-10);
  }
  CHECK(std::abs(radial_trapezoid(u.vtheta, 0) - j0) <= 1e-3);
  CHECK(polar_div(u).interior_max_abs() <= 1e-10);
}

TEST_CASE("BC2 outer row carries b0 along T") {
  const auto g = unit_grid(33, 64);
  const BoundaryFunction f0(1.0, {0.1}, {});
  const BoundaryFunction b0(0.0, {0.02}, {0.03});
  const CircleMap T(BoundaryFunction(0.0, {0.02}, {0.05}));
  const GSSolution s = solve_bc12(f0, DiffeoOuter{T}, b0, g);
  REQUIRE(s.report.converged);
  const PolarVectorField u = velocity_from_stream(s.phi);
  const ScalarField p = pressure_from_stream(s.phi, s.profile, u);
  const int o = g.nr() - 1;
  for (int j = 0; j < g.ntheta(); ++j) {
    const double q = 0.5 * (u.vr(o, j) * u.vr(o, j) + u.vtheta(o, j) * u.vtheta(o, j));
    CHECK(std::abs(q + p(o, j) - b0(T(g.theta(j)))) <= 1e-9);
  }
}

TEST_CASE("BC1 self-convergence against a 256 x 512 reference") {
  const BoundaryFunction b0(0.0, {}, {0.05});
  const GSSolution ref = solve_bc12(kOne, FluxOuter{kOne, 0.0}, b0, unit_grid(257, 512));
  std::vector<double> hs, errs;
  for (int n : {32, 64, 128}) {
    const auto g = unit_grid(n + 1, 2 * n);
    const GSSolution s = solve_bc12(kOne, FluxOuter{kOne, 0.0}, b0, g);
    CHECK(s.report.converged);
    hs.push_back(g.dr());
    errs.push_back(max_coarse_diff(s.phi, ref.phi));
  }
  INFO(errs[0] << " " << errs[1] << " " << errs[2]);
  CHECK(fitted_order(hs, errs) >= 1.9);
  CHECK(errs[1] <= 10.0 * hs[1] * hs[1]);
}

TEST_CASE("serial and parallel GS solves are bit-identical") {
  const auto g = unit_grid(33, 64);
  const BoundaryFunction b0(0.0, {0.04}, {0.05});
  GSConfig serial, parallel;
  serial.exec = Execution::serial;
  parallel.exec = Execution::parallel;
  const GSSolution a = solve_bc12(kOne, FluxOuter{kOne, 0.1}, b0, g, serial);
  const GSSolution b = solve_bc12(kOne, FluxOuter{kOne, 0.1}, b0, g, parallel);
  CHECK(a.phi.psi.values() == b.phi.psi.values());
  CHECK(a.report.update_trace == b.report.update_trace);
}

TEST_CASE("Picard contraction grows with the data size") {
  const auto g = unit_grid(33, 64);
  std::vector<double> ratio;
  for (double eps : {0.01, 0.02, 0.04}) {
    const BoundaryFunction b0(0.0, {eps}, {eps});
    const GSSolution s = solve_bc12(kOne, FluxOuter{kOne, 0.0}, b0, g);
    CHECK(s.report.converged);
    CHECK(s.report.energy_trace.size() == s.report.update_trace.size() + 1);
    const auto r = contraction_ratios(s.report.update_trace);
    REQUIRE(r.size() >= 2);
    ratio.push_back(r[1]);
  }
  CHECK(ratio[0] < 1.0);
  CHECK(ratio[0] < ratio[1]);
  CHECK(ratio[1] < ratio[2]);
}

TEST_CASE("large data reports NoConvergence") {
  const auto g = unit_grid(17, 32);
  GSConfig cfg;
  cfg.max_iters = 3;
  cfg.relaxation_fallback = false;
  try {
    solve_bc12(kOne, FluxOuter{kOne, 0.0}, BoundaryFunction(0.0, {0.5}, {0.5}), g, cfg);
    FAIL("expected NoConvergence");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.kind() == ErrorKind::NoConvergence);
    CHECK(e.iteration() == 3);
    CHECK(e.trace().size() == 3);
  }
}

TEST_CASE("gates propagate from the Bernoulli construction") {
  const auto g = unit_grid(17, 32);
  CHECK_THROWS_AS(solve_bc12(BoundaryFunction(0.1, {1.0}, {}), FluxOuter{kOne, 0.0}, kZero, g),
                  SolverError);
  CHECK_THROWS_AS(solve_bc12(kOne, FluxOuter{BoundaryFunction::constant(2.0), 0.0}, kZero, g),
                  SolverError);
  CHECK_THROWS_AS(
      solve_bc12(kOne, DiffeoOuter{CircleMap(BoundaryFunction(0.0, {}, {1.5}))}, kZero, g),
      SolverError);
}

TEST_CASE("BC3 with zero data is the reference flow") {
  const auto g = unit_grid(17, 32);
  const GSSolution s = solve_bc3_gs(kZero, kZero, kZero, 0.0, g);
  CHECK(s.report.converged);
  CHECK(s.phi.psi.max_abs() <= 1e-14);
  CHECK(s.f1.sampled_sup(64) <= 1e-14);
  CHECK(max_abs_diff(velocity_from_stream(s.phi), base_flow(g)) <= 1e-13);

  const GSSolution flat = solve_bc3_gs(kZero, BoundaryFunction::constant(0.4), kZero, 0.0, g);
  CHECK(flat.f1.sampled_sup(64) <= 1e-14);
}

TEST_CASE("BC3 small data converges with flux conservation") {
  const auto g = unit_grid(65, 128);
  const BoundaryFunction b0(0.0, {}, {0.02});
  const BoundaryFunction p1prime(0.0, {0.02}, {});
  const GSSolution s = solve_bc3_gs(kZero, b0, p1prime, 0.01, g);
  REQUIRE(s.report.converged);
  const auto r = contraction_ratios(s.report.update_trace);
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (s.report.update_trace[k + 1] < 1e-13) break;
    CHECK(r[k] <= 0.5);
  }
  for (double d : s.report.flux_defects) CHECK(std::abs(d) <= 1e-10);
  CHECK(s.report.warnings.empty());

  const PolarVectorField u = velocity_from_stream(s.phi);
  for (int j = 0; j < g.ntheta(); ++j) {
    const double t = g.theta(j);
    CHECK(std::abs(g.r0() * u.vr(0, j) - 1.0) <= 1e-12);
    CHECK(std::abs(g.r1() * u.vr(g.nr() - 1, j) - 1.0 - s.f1(t)) <= 1e-10);
  }
}

TEST_CASE("BC3 smallness warning") {
  const auto g = unit_grid(17, 32);
  const GSSolution s =
      solve_bc3_gs(BoundaryFunction(0.0, {0.3}, {}), kZero, kZero, 0.0, g);
  CHECK(s.report.converged);
  CHECK_FALSE(s.report.warnings.empty());
}

TEST_CASE("velocity_from_stream examples") {
  std::vector<double> hs, e_log, e_pert;
  const double eps = 0.1;
  for (int n : {16, 32, 64, 128}) {
    const auto g = unit_grid(n + 1, 16);
    const StreamFunction log_r{ScalarField::sample(g, [](double r, double) { return std::log(r); }), 0.0};
    const StreamFunction pert{
        ScalarField::sample(g, [&](double r, double t) { return eps * r * std::sin(t); }), 1.0};
    hs.push_back(g.dr());
    e_log.push_back(max_abs_diff(
        velocity_from_stream(log_r),
        PolarVectorField::sample(g, [](double, double) { return 0.0; },
                                 [](double r, double) { return -1.0 / r; })));
    e_pert.push_back(max_abs_diff(
        velocity_from_stream(pert),
        PolarVectorField::sample(g, [&](double r, double t) { return (1.0 + eps * r * std::cos(t)) / r; },
                                 [&](double, double t) { return -eps * std::sin(t); })));
  }
  CHECK(fitted_order(hs, e_log) >= 1.9);
  // Linear in r, so the radial stencils are exact.
  for (double e : e_pert) CHECK(e <= 1e-13);
}

TEST_CASE("pressure_from_stream with a flat profile") {
  const auto g = unit_grid(17, 32);
  const double bbar = 0.7;
  const StreamFunction phi{ScalarField(g), 1.0};
  const BernoulliProfile prof = build_profile(kOne, BoundaryFunction::constant(bbar), false, 128);
  const ScalarField p = pressure_from_stream(phi, prof, velocity_from_stream(phi));
  const ScalarField expect = ScalarField::sample(g, [&](double r, double) { return bbar - 0.5 / (r * r); });
  CHECK(max_abs_diff(p, expect) <= 1e-14);
}
