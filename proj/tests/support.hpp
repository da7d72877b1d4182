#pragma once

#include <cmath>
#include <vector>

#include "annulus/grid.hpp"

namespace testing_support {

// Least-squares slope of log(err) against log(h).
inline double fitted_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(h[k]), y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline annulus::AnnulusGrid unit_grid(int nr, int nt) { return {1.0, 2.0, nr, nt}; }

}  // namespace testing_support
