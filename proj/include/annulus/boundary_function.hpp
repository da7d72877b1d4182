#pragma once

#include <span>
#include <vector>

namespace annulus {

// f(theta) = mean + sum_{k=1}^{M} (a_k cos k theta + b_k sin k theta).
// cos_coeffs()[k-1] holds a_k, sin_coeffs()[k-1] holds b_k.
class BoundaryFunction {
 public:
  BoundaryFunction() = default;
  BoundaryFunction(double mean, std::vector<double> cos_coeffs,
                   std::vector<double> sin_coeffs);

  static BoundaryFunction constant(double value);
  // Projection of N uniform samples onto modes 0..max_mode (default N/2,
  // the Nyquist term kept as a cosine).
  static BoundaryFunction from_samples(std::span<const double> samples,
                                       int max_mode = -1);

  double operator()(double theta) const;

  double mean() const noexcept { return mean_; }
  double average() const noexcept { return mean_; }
  // Integral over one period.
  double integral() const;
  int modes() const noexcept { return static_cast<int>(cos_.size()); }
  const std::vector<double>& cos_coeffs() const noexcept { return cos_; }
  const std::vector<double>& sin_coeffs() const noexcept { return sin_; }

  BoundaryFunction derivative() const;
  // Zero-mean P with P' = f - mean.
  BoundaryFunction periodic_antiderivative() const;
  // int_0^theta f(s) ds.
  double integral_from_zero(double theta) const;

  std::vector<double> sample(int n) const;
  // sum of |coefficients|, an upper bound for the sup norm.
  double coefficient_norm() const;
  // max |f| over n uniform samples.
  double sampled_sup(int n) const;

  BoundaryFunction& operator+=(const BoundaryFunction& other);
  BoundaryFunction& operator*=(double s);

 private:
  double mean_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b);
BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b);
BoundaryFunction operator*(double s, BoundaryFunction a);

// f(theta) = f(0) + int_0^theta (g - mean g) with
// f(0) = (J0 - int_0^{2pi} (g - mean g)(s) (2pi - s) ds) / (2pi),
// so that int f = J0. g is given by N uniform samples.
struct FluxProfile {
  BoundaryFunction f;
  double integrand_mean = 0.0;
  double value_at_zero = 0.0;
};

FluxProfile flux_profile_from_integrand(std::span<const double> g_samples, double J0);

// theta -> theta + shift(theta), an orientation-preserving circle map when
// 1 + shift' > 0.
class CircleMap {
 public:
  CircleMap() = default;
  explicit CircleMap(BoundaryFunction shift)
      : shift_(std::move(shift)), dshift_(shift_.derivative()) {}

  double operator()(double theta) const { return theta + shift_(theta); }
  double derivative(double theta) const { return 1.0 + dshift_(theta); }
  const BoundaryFunction& shift() const noexcept { return shift_; }
  bool is_identity() const;

 private:
  BoundaryFunction shift_;
  BoundaryFunction dshift_;
};

}  // namespace annulus
