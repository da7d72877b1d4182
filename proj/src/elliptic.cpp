#include "annulus/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "annulus/errors.hpp"
#include "annulus/operators.hpp"

namespace annulus {

namespace {

std::span<const double> checked_boundary(const std::vector<double>& data, int n,
                                         const char* which) {
  for (double v : data)
    if (!std::isfinite(v))
      throw SolverError(ErrorKind::NonPeriodicData,
                        std::string(which) + " boundary data is not finite");
  if (data.size() == static_cast<std::size_t>(n)) return {data.data(), data.size()};
  if (data.size() == static_cast<std::size_t>(n) + 1) {
    double scale = 1.0;
    for (double v : data) scale = std::max(scale, std::abs(v));
    const double jump = data.back() - data.front();
    if (std::abs(jump) > 1e-12 * scale)
      throw SolverError(ErrorKind::NonPeriodicData,
                        std::string(which) + " boundary data is not 2pi-periodic",
                        jump);
    return {data.data(), static_cast<std::size_t>(n)};
  }
  std::ostringstream msg;
  msg << which << " boundary data has " << data.size() << " entries, expected " << n;
  throw SolverError(ErrorKind::NonPeriodicData, msg.str());
}

// Thomas algorithm on the interior rows of one mode; rows 0 and nr-1 of x are
// the pinned Dirichlet values. x has stride `stride`.
void solve_mode(const AnnulusGrid& g, int k, Complex* x, std::size_t stride,
                std::vector<double>& cp, std::vector<Complex>& dp) {
  const int nr = g.nr();
  const double h = g.dr();
  const double k2h2 = static_cast<double>(k) * k * h * h;
  cp.resize(nr);
  dp.resize(nr);
  const Complex x0 = x[0];
  const Complex xn = x[(nr - 1) * stride];
  for (int i = 1; i + 1 < nr; ++i) {
    const double ri = g.r(i);
    const double a = ri - 0.5 * h;
    const double c = ri + 0.5 * h;
    const double b = -(a + c) - k2h2 / ri;
    Complex d = x[i * stride];
    if (i == 1) d -= a * x0;
    if (i == nr - 2) d -= c * xn;
    const double lower = i == 1 ? 0.0 : a;
    const double denom = b - lower * (i == 1 ? 0.0 : cp[i - 1]);
    if (std::abs(denom) <= 1e-14 * (std::abs(a) + std::abs(b) + std::abs(c))) {
      std::ostringstream msg;
      msg << "mode " << k << " pivot " << denom << " at ring " << i;
      throw SolverError(ErrorKind::SingularMode, msg.str(), denom);
    }
    cp[i] = (i == nr - 2 ? 0.0 : c) / denom;
    dp[i] = (d - (i == 1 ? Complex(0.0) : lower * dp[i - 1])) / denom;
  }
  x[(nr - 2) * stride] = dp[nr - 2];
  for (int i = nr - 3; i >= 1; --i) x[i * stride] = dp[i] - cp[i] * x[(i + 1) * stride];
}

}  // namespace

namespace kernels {

void solve_modes_reference(const AnnulusGrid& grid, std::vector<Complex>& spectra) {
  const int nk = grid.ntheta() / 2 + 1;
  std::vector<double> cp;
  std::vector<Complex> dp;
  for (int k = 0; k < nk; ++k) solve_mode(grid, k, spectra.data() + k, nk, cp, dp);
}

void solve_modes_parallel(const AnnulusGrid& grid, std::vector<Complex>& spectra) {
  const int nk = grid.ntheta() / 2 + 1;
  // SingularMode must cross the parallel region as a value, not an
  // exception.
  std::string failure;
  double failure_value = 0.0;
#pragma omp parallel
  {
    std::vector<double> cp;
    std::vector<Complex> dp;
#pragma omp for schedule(static)
    for (int k = 0; k < nk; ++k) {
      try {
        solve_mode(grid, k, spectra.data() + k, nk, cp, dp);
      } catch (const SolverError& e) {
#pragma omp critical(annulus_modal_failure)
        if (failure.empty()) {
          failure = e.what();
          failure_value = e.value();
        }
      }
    }
  }
  if (!failure.empty()) throw SolverError(ErrorKind::SingularMode, failure, failure_value);
}

}  // namespace kernels

ScalarField solve_elliptic(const EllipticProblem& p, Execution exec) {
  const AnnulusGrid& g = p.grid();
  const int nr = g.nr(), nt = g.ntheta(), nk = nt / 2 + 1;
  const auto inner = checked_boundary(p.dirichlet_inner, nt, "inner");
  const auto outer = checked_boundary(p.dirichlet_outer, nt, "outer");
  for (double v : p.rhs.values())
    if (!std::isfinite(v)) throw std::invalid_argument("elliptic source is not finite");

  std::vector<Complex> spectra(static_cast<std::size_t>(nr) * nk);
  const double h2 = g.dr() * g.dr();
  auto transform_row = [&](int i) {
    std::span<Complex> row(spectra.data() + static_cast<std::size_t>(i) * nk, nk);
    if (i == 0) {
      forward_dft(inner, row);
    } else if (i == nr - 1) {
      forward_dft(outer, row);
    } else {
      forward_dft(p.rhs.ring(i), row);
      const double w = p.op == EllipticOperator::weighted_K ? -h2 : h2 * g.r(i);
      for (Complex& c : row) c *= w;
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nr; ++i) transform_row(i);
    kernels::solve_modes_parallel(g, spectra);
  } else {
    for (int i = 0; i < nr; ++i) transform_row(i);
    kernels::solve_modes_reference(g, spectra);
  }

  ScalarField phi(g);
  auto invert_row = [&](int i) {
    std::span<const Complex> row(spectra.data() + static_cast<std::size_t>(i) * nk, nk);
    inverse_dft(row, phi.ring(i));
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 1; i < nr - 1; ++i) invert_row(i);
  } else {
    for (int i = 1; i < nr - 1; ++i) invert_row(i);
  }
  std::copy(inner.begin(), inner.end(), phi.ring(0).begin());
  std::copy(outer.begin(), outer.end(), phi.ring(nr - 1).begin());
  return phi;
}

ScalarField apply_elliptic(EllipticOperator op, const ScalarField& phi) {
  const AnnulusGrid& g = phi.grid();
  const int nr = g.nr(), nt = g.ntheta(), nk = nt / 2 + 1;
  const double h = g.dr();
  ScalarField out(g);
  std::vector<Complex> spec(nk);
  std::vector<double> phi_tt(nt);
  for (int i = 1; i + 1 < nr; ++i) {
    forward_dft(phi.ring(i), spec);
    for (int k = 0; k < nk; ++k) spec[k] *= -static_cast<double>(k) * k;
    inverse_dft(spec, phi_tt);
    const double ri = g.r(i);
    const double a = ri - 0.5 * h, c = ri + 0.5 * h;
    for (int j = 0; j < nt; ++j) {
      const double radial =
          (c * (phi(i + 1, j) - phi(i, j)) - a * (phi(i, j) - phi(i - 1, j))) / (h * h);
      const double div_k_grad = radial + phi_tt[j] / ri;
      out(i, j) = op == EllipticOperator::weighted_K ? -div_k_grad : div_k_grad / ri;
    }
  }
  return out;
}

double flux_tolerance(double J0) { return 1e-10 * (1.0 + std::abs(J0)); }

DivCurlSolution solve_div_curl_full(const DivCurlProblem& p, Execution exec) {
  const AnnulusGrid& g = p.grid();
  const int nr = g.nr(), nt = g.ntheta();
  const double J0 = p.f0.integral();
  const double defect = J0 - p.f1.integral();
  if (std::abs(defect) > flux_tolerance(J0)) {
    std::ostringstream msg;
    msg << "inner flux " << J0 << " differs from outer flux " << p.f1.integral();
    throw SolverError(ErrorKind::FluxMismatch, msg.str(), defect);
  }

  const BoundaryFunction P0 = p.f0.periodic_antiderivative();
  const BoundaryFunction P1 = p.f1.periodic_antiderivative();
  const double P00 = P0(0.0), P10 = P1(0.0);
  EllipticProblem ep{-1.0 * p.omega, std::vector<double>(nt), std::vector<double>(nt),
                     EllipticOperator::laplace_c};
  for (int j = 0; j < nt; ++j) {
    const double t = g.theta(j);
    ep.dirichlet_inner[j] = P0(t) - P00;
    ep.dirichlet_outer[j] = -p.j0 + P1(t) - P10;
  }
  DivCurlSolution out{PolarVectorField(g), solve_elliptic(ep, exec), defect};

  const ScalarField phi_t = d_theta(out.phi, exec);
  const ScalarField phi_r = d_r_smooth(out.phi);
  const double jbar = J0 / kTwoPi;
  for (int i = 0; i < nr; ++i) {
    const double inv_r = 1.0 / g.r(i);
    for (int j = 0; j < nt; ++j) {
      out.w.vr(i, j) = (phi_t(i, j) + jbar) * inv_r;
      out.w.vtheta(i, j) = -phi_r(i, j);
    }
  }
  return out;
}

}  // namespace annulus
