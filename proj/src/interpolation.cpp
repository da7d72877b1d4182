#include "annulus/interpolation.hpp"

#include <algorithm>
#include <cmath>

namespace annulus {

int radial_cell(const AnnulusGrid& grid, double r) {
  const int c = static_cast<int>(std::floor((r - grid.r0()) / grid.dr()));
  return std::clamp(c, 0, grid.nr() - 2);
}

RadialStencil cubic_stencil(const AnnulusGrid& grid, int cell, double r) {
  RadialStencil s;
  s.first = std::clamp(cell - 1, 0, grid.nr() - 4);
  double x[4];
  for (int m = 0; m < 4; ++m) x[m] = grid.r(s.first + m);
  for (int m = 0; m < 4; ++m) {
    double w = 1.0;
    for (int q = 0; q < 4; ++q)
      if (q != m) w *= (r - x[q]) / (x[m] - x[q]);
    s.w[m] = w;
  }
  return s;
}

FieldInterpolator::FieldInterpolator(const ScalarField& f)
    : grid_(f.grid()), ring_coeffs_(f.grid().nr()) {
  for (int i = 0; i < grid_.nr(); ++i) {
    const auto spec = forward_dft(f.ring(i));
    const int n = grid_.ntheta();
    auto& c = ring_coeffs_[i];
    c.resize(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const bool unpaired = k == 0 || static_cast<int>(k) == n / 2;
      c[k] = unpaired ? Complex(spec[k].real() / n, 0.0) : 2.0 / n * spec[k];
    }
  }
}

TrigSeries FieldInterpolator::series_at(double r, int cell) const {
  const RadialStencil s = cubic_stencil(grid_, cell, r);
  std::vector<Complex> c(ring_coeffs_[0].size(), Complex(0.0, 0.0));
  for (int m = 0; m < 4; ++m) {
    const auto& ring = ring_coeffs_[s.first + m];
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += s.w[m] * ring[k];
  }
  return TrigSeries::from_coefficients(std::move(c));
}

TrigSeries FieldInterpolator::series_at(double r) const {
  return series_at(r, radial_cell(grid_, r));
}

double FieldInterpolator::operator()(double r, double theta) const {
  return series_at(r)(theta);
}

}  // namespace annulus
