#pragma once

#include <array>
#include <vector>

#include "annulus/field.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

// Four-point Lagrange weights for the radial stencil starting at ring
// `first`. The stencil is the one containing cell `cell` (clamped at the
// circles).
struct RadialStencil {
  int first = 0;
  std::array<double, 4> w{};
};

RadialStencil cubic_stencil(const AnnulusGrid& grid, int cell, double r);
// Cell c with r_c <= r <= r_{c+1}, clamped to [0, nr-2].
int radial_cell(const AnnulusGrid& grid, double r);

// Per-ring spectra of a field, reused for evaluation off the grid: cubic
// Lagrange in r, trigonometric in theta.
class FieldInterpolator {
 public:
  explicit FieldInterpolator(const ScalarField& f);

  double operator()(double r, double theta) const;
  // The degree <= N/2 interpolant in theta at radius r, built in the stencil
  // of cell `cell`.
  TrigSeries series_at(double r, int cell) const;
  TrigSeries series_at(double r) const;

  const AnnulusGrid& grid() const noexcept { return grid_; }

 private:
  AnnulusGrid grid_;
  std::vector<std::vector<Complex>> ring_coeffs_;
};

}  // namespace annulus
