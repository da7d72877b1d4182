#pragma once

#include <functional>
#include <span>
#include <vector>

#include "annulus/grid.hpp"

namespace annulus {

// Nodal values on an AnnulusGrid, stored ring by ring (index i*ntheta + j).
class ScalarField {
 public:
  explicit ScalarField(const AnnulusGrid& grid, double fill = 0.0);
  ScalarField(const AnnulusGrid& grid, std::vector<double> values);

  static ScalarField sample(const AnnulusGrid& grid,
                            const std::function<double(double, double)>& f);

  const AnnulusGrid& grid() const noexcept { return grid_; }

  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

  std::span<const double> ring(int i) const;
  std::span<double> ring(int i);
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  double max_abs() const;
  // Max over rings 1..nr-2 only.
  double interior_max_abs() const;
  double mean() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);

 private:
  AnnulusGrid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

double max_abs_diff(const ScalarField& a, const ScalarField& b);
// sup |a - b - c| with c the mean of a - b.
double max_abs_diff_mod_const(const ScalarField& a, const ScalarField& b);

// Physical components along (e_r, e_theta), e_theta = (-sin, cos).
struct PolarVectorField {
  ScalarField vr;
  ScalarField vtheta;

  explicit PolarVectorField(const AnnulusGrid& grid)
      : vr(grid), vtheta(grid) {}
  PolarVectorField(ScalarField r_part, ScalarField theta_part);

  static PolarVectorField sample(
      const AnnulusGrid& grid,
      const std::function<double(double, double)>& fr,
      const std::function<double(double, double)>& ftheta);

  const AnnulusGrid& grid() const noexcept { return vr.grid(); }
  double max_abs() const;

  PolarVectorField& operator+=(const PolarVectorField& other);
  PolarVectorField& operator-=(const PolarVectorField& other);
  PolarVectorField& operator*=(double s);
};

PolarVectorField operator+(PolarVectorField a, const PolarVectorField& b);
PolarVectorField operator-(PolarVectorField a, const PolarVectorField& b);
PolarVectorField operator*(double s, PolarVectorField a);

double max_abs_diff(const PolarVectorField& a, const PolarVectorField& b);

// The reference flow u = (1/r, 0).
PolarVectorField base_flow(const AnnulusGrid& grid);

}  // namespace annulus
