#include "annulus/boundary_function.hpp"

#include <algorithm>
#include <cmath>

#include "annulus/grid.hpp"
#include "annulus/spectral.hpp"

namespace annulus {

BoundaryFunction::BoundaryFunction(double mean, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs)
    : mean_(mean), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  const std::size_t m = std::max(cos_.size(), sin_.size());
  cos_.resize(m, 0.0);
  sin_.resize(m, 0.0);
}

BoundaryFunction BoundaryFunction::constant(double value) {
  return BoundaryFunction(value, {}, {});
}

BoundaryFunction BoundaryFunction::from_samples(std::span<const double> samples,
                                                int max_mode) {
  const int n = static_cast<int>(samples.size());
  const int nyquist = n / 2;
  const int m = max_mode < 0 ? nyquist : std::min(max_mode, nyquist);
  const auto spec = forward_dft(samples);
  std::vector<double> a(m), b(m);
  for (int k = 1; k <= m; ++k) {
    if (n % 2 == 0 && k == nyquist) {
      a[k - 1] = spec[k].real() / n;
    } else {
      a[k - 1] = 2.0 * spec[k].real() / n;
      b[k - 1] = -2.0 * spec[k].imag() / n;
    }
  }
  return BoundaryFunction(spec[0].real() / n, std::move(a), std::move(b));
}

double BoundaryFunction::operator()(double theta) const {
  double acc = mean_;
  const double zc = std::cos(theta), zs = std::sin(theta);
  double c = zc, s = zs;
  const int m = modes();
  for (int k = 1; k <= m; ++k) {
    if ((k & 31) == 0) {
      c = std::cos(k * theta);
      s = std::sin(k * theta);
    }
    acc += cos_[k - 1] * c + sin_[k - 1] * s;
    const double t = c * zc - s * zs;
    s = s * zc + c * zs;
    c = t;
  }
  return acc;
}

double BoundaryFunction::integral() const { return kTwoPi * mean_; }

BoundaryFunction BoundaryFunction::derivative() const {
  const int m = modes();
  std::vector<double> a(m), b(m);
  for (int k = 1; k <= m; ++k) {
    a[k - 1] = k * sin_[k - 1];
    b[k - 1] = -k * cos_[k - 1];
  }
  return BoundaryFunction(0.0, std::move(a), std::move(b));
}

BoundaryFunction BoundaryFunction::periodic_antiderivative() const {
  const int m = modes();
  std::vector<double> a(m), b(m);
  for (int k = 1; k <= m; ++k) {
    a[k - 1] = -sin_[k - 1] / k;
    b[k - 1] = cos_[k - 1] / k;
  }
  return BoundaryFunction(0.0, std::move(a), std::move(b));
}

double BoundaryFunction::integral_from_zero(double theta) const {
  double acc = mean_ * theta;
  const double zc = std::cos(theta), zs = std::sin(theta);
  double c = zc, s = zs;
  const int m = modes();
  for (int k = 1; k <= m; ++k) {
    if ((k & 31) == 0) {
      c = std::cos(k * theta);
      s = std::sin(k * theta);
    }
    acc += (cos_[k - 1] * s + sin_[k - 1] * (1.0 - c)) / k;
    const double t = c * zc - s * zs;
    s = s * zc + c * zs;
    c = t;
  }
  return acc;
}

std::vector<double> BoundaryFunction::sample(int n) const {
  std::vector<double> out(n);
  const double h = kTwoPi / n;
  for (int j = 0; j < n; ++j) out[j] = (*this)(j * h);
  return out;
}

double BoundaryFunction::coefficient_norm() const {
  double s = std::abs(mean_);
  for (int k = 0; k < modes(); ++k) s += std::abs(cos_[k]) + std::abs(sin_[k]);
  return s;
}

double BoundaryFunction::sampled_sup(int n) const {
  double m = 0.0;
  for (double v : sample(n)) m = std::max(m, std::abs(v));
  return m;
}

BoundaryFunction& BoundaryFunction::operator+=(const BoundaryFunction& other) {
  mean_ += other.mean_;
  const int m = std::max(modes(), other.modes());
  cos_.resize(m, 0.0);
  sin_.resize(m, 0.0);
  for (int k = 0; k < other.modes(); ++k) {
    cos_[k] += other.cos_[k];
    sin_[k] += other.sin_[k];
  }
  return *this;
}

BoundaryFunction& BoundaryFunction::operator*=(double s) {
  mean_ *= s;
  for (double& v : cos_) v *= s;
  for (double& v : sin_) v *= s;
  return *this;
}

BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b) { return a += b; }
BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b) {
  return a += -1.0 * b;
}
BoundaryFunction operator*(double s, BoundaryFunction a) { return a *= s; }

FluxProfile flux_profile_from_integrand(std::span<const double> g_samples,
                                        double J0) {
  const BoundaryFunction g = BoundaryFunction::from_samples(g_samples);
  // int_0^{2pi} sin(ks) (2pi - s) ds = 2pi/k; the cosine terms integrate to 0.
  double weighted = 0.0;
  for (int k = 1; k <= g.modes(); ++k) weighted += kTwoPi * g.sin_coeffs()[k - 1] / k;
  FluxProfile out;
  out.integrand_mean = g.mean();
  out.value_at_zero = (J0 - weighted) / kTwoPi;
  BoundaryFunction osc = (g - BoundaryFunction::constant(g.mean())).periodic_antiderivative();
  out.f = osc + BoundaryFunction::constant(out.value_at_zero - osc(0.0));
  return out;
}

bool CircleMap::is_identity() const {
  return shift_.coefficient_norm() == 0.0;
}

}  // namespace annulus
