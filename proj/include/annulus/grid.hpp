#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace annulus {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tensor grid on r0 <= r <= r1 (both circles included) times a uniform
// periodic angular grid. theta = 2*pi is identified with theta = 0 and is not
// stored.
class AnnulusGrid {
 public:
  AnnulusGrid(double r0, double r1, int nr, int ntheta);

  double r0() const noexcept { return r0_; }
  double r1() const noexcept { return r1_; }
  int nr() const noexcept { return nr_; }
  int ntheta() const noexcept { return ntheta_; }
  double dr() const noexcept { return dr_; }
  double dtheta() const noexcept { return dtheta_; }

  // The last node is r1 exactly, not r0 + (nr-1)*dr.
  double r(int i) const noexcept { return i == nr_ - 1 ? r1_ : r0_ + i * dr_; }
  double theta(int j) const noexcept { return j * dtheta_; }

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nr_) * static_cast<std::size_t>(ntheta_);
  }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ntheta_) +
           static_cast<std::size_t>(j);
  }

  std::vector<double> radii() const;
  std::vector<double> angles() const;

  // Trapezoid weights in r (dr/2 at both circles).
  std::vector<double> radial_weights() const;

  bool operator==(const AnnulusGrid&) const = default;

 private:
  double r0_, r1_;
  int nr_, ntheta_;
  double dr_, dtheta_;
};

}  // namespace annulus
