#include "annulus/grid.hpp"

#include <cmath>
#include <sstream>

#include "annulus/errors.hpp"

namespace annulus {

AnnulusGrid::AnnulusGrid(double r0, double r1, int nr, int ntheta)
    : r0_(r0), r1_(r1), nr_(nr), ntheta_(ntheta) {
  std::ostringstream why;
  if (!(std::isfinite(r0) && std::isfinite(r1) && r0 > 0.0 && r1 > r0))
    why << "need 0 < r0 < r1, got r0=" << r0 << " r1=" << r1;
  else if (nr < 8)
    why << "need nr >= 8, got " << nr;
  else if (ntheta < 8 || ntheta % 2 != 0)
    why << "need an even ntheta >= 8, got " << ntheta;
  if (!why.str().empty()) throw SolverError(ErrorKind::InvalidGrid, why.str());
  dr_ = (r1 - r0) / (nr - 1);
  dtheta_ = kTwoPi / ntheta;
}

std::vector<double> AnnulusGrid::radii() const {
  std::vector<double> out(nr_);
  for (int i = 0; i < nr_; ++i) out[i] = r(i);
  return out;
}

std::vector<double> AnnulusGrid::angles() const {
  std::vector<double> out(ntheta_);
  for (int j = 0; j < ntheta_; ++j) out[j] = theta(j);
  return out;
}

std::vector<double> AnnulusGrid::radial_weights() const {
  std::vector<double> w(nr_, dr_);
  w.front() = w.back() = 0.5 * dr_;
  return w;
}

}  // namespace annulus
