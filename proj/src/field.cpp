#include "annulus/field.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace annulus {

ScalarField::ScalarField(const AnnulusGrid& grid, double fill)
    : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const AnnulusGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  assert(values_.size() == grid_.size());
}

ScalarField ScalarField::sample(
    const AnnulusGrid& grid, const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  for (int i = 0; i < grid.nr(); ++i)
    for (int j = 0; j < grid.ntheta(); ++j) out(i, j) = f(grid.r(i), grid.theta(j));
  return out;
}

std::span<const double> ScalarField::ring(int i) const {
  return {values_.data() + grid_.index(i, 0),
          static_cast<std::size_t>(grid_.ntheta())};
}

std::span<double> ScalarField::ring(int i) {
  return {values_.data() + grid_.index(i, 0),
          static_cast<std::size_t>(grid_.ntheta())};
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::interior_max_abs() const {
  double m = 0.0;
  for (int i = 1; i + 1 < grid_.nr(); ++i)
    for (double v : ring(i)) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  assert(grid_ == other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  assert(grid_ == other.grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  assert(a.grid() == b.grid());
  double m = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k)
    m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
  return m;
}

double max_abs_diff_mod_const(const ScalarField& a, const ScalarField& b) {
  ScalarField d = a - b;
  const double c = d.mean();
  double m = 0.0;
  for (double v : d.values()) m = std::max(m, std::abs(v - c));
  return m;
}

PolarVectorField::PolarVectorField(ScalarField r_part, ScalarField theta_part)
    : vr(std::move(r_part)), vtheta(std::move(theta_part)) {
  assert(vr.grid() == vtheta.grid());
}

PolarVectorField PolarVectorField::sample(
    const AnnulusGrid& grid, const std::function<double(double, double)>& fr,
    const std::function<double(double, double)>& ftheta) {
  return {ScalarField::sample(grid, fr), ScalarField::sample(grid, ftheta)};
}

double PolarVectorField::max_abs() const {
  return std::max(vr.max_abs(), vtheta.max_abs());
}

PolarVectorField& PolarVectorField::operator+=(const PolarVectorField& other) {
  vr += other.vr;
  vtheta += other.vtheta;
  return *this;
}

PolarVectorField& PolarVectorField::operator-=(const PolarVectorField& other) {
  vr -= other.vr;
  vtheta -= other.vtheta;
  return *this;
}

PolarVectorField& PolarVectorField::operator*=(double s) {
  vr *= s;
  vtheta *= s;
  return *this;
}

PolarVectorField operator+(PolarVectorField a, const PolarVectorField& b) { return a += b; }
PolarVectorField operator-(PolarVectorField a, const PolarVectorField& b) { return a -= b; }
PolarVectorField operator*(double s, PolarVectorField a) { return a *= s; }

double max_abs_diff(const PolarVectorField& a, const PolarVectorField& b) {
  return std::max(max_abs_diff(a.vr, b.vr), max_abs_diff(a.vtheta, b.vtheta));
}

PolarVectorField base_flow(const AnnulusGrid& grid) {
  PolarVectorField u(grid);
  for (int i = 0; i < grid.nr(); ++i) {
    const double ur = 1.0 / grid.r(i);
    for (double& v : u.vr.ring(i)) v = ur;
  }
  return u;
}

}  // namespace annulus
