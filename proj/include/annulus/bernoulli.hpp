#pragma once

#include <optional>

#include "annulus/boundary_function.hpp"

namespace annulus {

// A boundary stream function offset + int_0^{T(theta)} flux, with T the
// identity unless a circle map is attached. Increases by 2 pi * mean(flux)
// over every period.
class BoundaryStream {
 public:
  BoundaryStream() = default;
  static BoundaryStream from_flux(BoundaryFunction flux, double offset = 0.0);
  BoundaryStream composed_with(const CircleMap& map) const;

  double operator()(double theta) const;
  double derivative(double theta) const;
  // phi(theta + 2 pi) - phi(theta).
  double increment() const { return flux_.integral(); }
  double slope() const { return flux_.mean(); }
  const BoundaryFunction& flux() const noexcept { return flux_; }

 private:
  BoundaryFunction flux_;
  BoundaryFunction primitive_;  // periodic antiderivative of flux - mean
  double primitive_at_zero_ = 0.0;
  double offset_ = 0.0;
  std::optional<CircleMap> map_;
};

// Positivity is checked at `gate_samples` uniform points; throws
// NonPositiveThroughflow with the first offending angle.
BoundaryStream build_phi0(const BoundaryFunction& f0, bool normalized,
                          int gate_samples);

// Z = phi0^{-1} with Z(tau + J) = Z(tau) + 2 pi, B = b0(Z), B' = b0'(Z) Z'.
class BernoulliProfile {
 public:
  BernoulliProfile(BoundaryStream phi0, BoundaryFunction b0);

  double period() const noexcept { return J_; }
  double Z(double tau) const;
  double Zprime(double tau) const;
  double B(double tau) const;
  double Bprime(double tau) const;

  const BoundaryStream& phi0() const noexcept { return phi0_; }
  const BoundaryFunction& b0() const noexcept { return b0_; }

 private:
  // Z restricted to one period: tau = n J + s with s in [0, J), returns the
  // root in [0, 2 pi] and n.
  double reduced_root(double tau, double& n) const;

  BoundaryStream phi0_;
  BoundaryFunction b0_;
  BoundaryFunction db0_;
  double J_;
};

BernoulliProfile build_profile(const BoundaryFunction& f0,
                               const BoundaryFunction& b0, bool normalized,
                               int gate_samples);

// BC1: phi1 = -j0 + int_0^theta f1, gated on int f1 = int f0.
BoundaryStream build_phi1_flux(const BoundaryStream& phi0,
                               const BoundaryFunction& f1, double j0);
// BC2: phi1 = phi0 o T, gated on T' > 0 at `gate_samples` points.
BoundaryStream build_phi1_diffeo(const BoundaryStream& phi0, const CircleMap& T,
                                 int gate_samples);

// Throws NonMonotoneDiffeo at the first sample with T' <= 0.
void check_monotone(const CircleMap& T, int gate_samples);

}  // namespace annulus
