#include "annulus/bernoulli.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/grid.hpp"

namespace annulus {

BoundaryStream BoundaryStream::from_flux(BoundaryFunction flux, double offset) {
  BoundaryStream s;
  s.primitive_ = flux.periodic_antiderivative();
  s.primitive_at_zero_ = s.primitive_(0.0);
  s.flux_ = std::move(flux);
  s.offset_ = offset;
  return s;
}

BoundaryStream BoundaryStream::composed_with(const CircleMap& map) const {
  BoundaryStream s = *this;
  s.map_ = map;
  return s;
}

double BoundaryStream::operator()(double theta) const {
  const double x = map_ ? (*map_)(theta) : theta;
  return offset_ + flux_.mean() * x + primitive_(x) - primitive_at_zero_;
}

double BoundaryStream::derivative(double theta) const {
  if (!map_) return flux_(theta);
  return flux_((*map_)(theta)) * map_->derivative(theta);
}

BoundaryStream build_phi0(const BoundaryFunction& f0, bool normalized,
                          int gate_samples) {
  BoundaryFunction through = normalized ? f0 + BoundaryFunction::constant(1.0) : f0;
  const double h = kTwoPi / gate_samples;
  for (int j = 0; j < gate_samples; ++j) {
    const double t = j * h;
    if (!(through(t) > 0.0)) {
      std::ostringstream msg;
      msg << "inner through-flow " << through(t) << " at theta=" << t;
      throw SolverError(ErrorKind::NonPositiveThroughflow, msg.str(), t);
    }
  }
  return BoundaryStream::from_flux(std::move(through));
}

BernoulliProfile::BernoulliProfile(BoundaryStream phi0, BoundaryFunction b0)
    : phi0_(std::move(phi0)),
      b0_(std::move(b0)),
      db0_(b0_.derivative()),
      J_(phi0_.increment()) {}

double BernoulliProfile::reduced_root(double tau, double& n) const {
  n = std::floor(tau / J_);
  const double s = tau - n * J_;
  double lo = 0.0, hi = kTwoPi;
  double x = s / phi0_.slope();
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  const double tol = 1e-13 * std::max(1.0, std::abs(s));
  for (int it = 0; it < 200; ++it) {
    const double f = phi0_(x) - s;
    if (std::abs(f) <= tol) break;
    if (f > 0.0) hi = x; else lo = x;
    const double step = f / phi0_.derivative(x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * kTwoPi) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double BernoulliProfile::Z(double tau) const {
  double n = 0.0;
  const double x = reduced_root(tau, n);
  return x + kTwoPi * n;
}

double BernoulliProfile::Zprime(double tau) const {
  double n = 0.0;
  return 1.0 / phi0_.derivative(reduced_root(tau, n));
}

double BernoulliProfile::B(double tau) const {
  double n = 0.0;
  return b0_(reduced_root(tau, n));
}

double BernoulliProfile::Bprime(double tau) const {
  double n = 0.0;
  const double x = reduced_root(tau, n);
  return db0_(x) / phi0_.derivative(x);
}

BernoulliProfile build_profile(const BoundaryFunction& f0,
                               const BoundaryFunction& b0, bool normalized,
                               int gate_samples) {
  return BernoulliProfile(build_phi0(f0, normalized, gate_samples), b0);
}

BoundaryStream build_phi1_flux(const BoundaryStream& phi0,
                               const BoundaryFunction& f1, double j0) {
  const double J0 = phi0.increment();
  const double defect = J0 - f1.integral();
  if (std::abs(defect) > flux_tolerance(J0)) {
    std::ostringstream msg;
    msg << "outer flux " << f1.integral() << " differs from inner flux " << J0;
    throw SolverError(ErrorKind::FluxMismatch, msg.str(), defect);
  }
  return BoundaryStream::from_flux(f1, -j0);
}

void check_monotone(const CircleMap& T, int gate_samples) {
  const double h = kTwoPi / gate_samples;
  for (int j = 0; j < gate_samples; ++j) {
    const double t = j * h;
    if (!(T.derivative(t) > 0.0)) {
      std::ostringstream msg;
      msg << "T' = " << T.derivative(t) << " at theta=" << t;
      throw SolverError(ErrorKind::NonMonotoneDiffeo, msg.str(), t);
    }
  }
}

BoundaryStream build_phi1_diffeo(const BoundaryStream& phi0, const CircleMap& T,
                                 int gate_samples) {
  check_monotone(T, gate_samples);
  return phi0.composed_with(T);
}

}  // namespace annulus
