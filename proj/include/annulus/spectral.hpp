#pragma once

#include <complex>
#include <span>
#include <vector>

namespace annulus {

using Complex = std::complex<double>;

// Real-to-complex DFT of one periodic ring, X_k = sum_j x_j exp(-2 pi i jk/N)
// for k = 0..N/2. Backed by FFTW; plans are cached per length.
void forward_dft(std::span<const double> x, std::span<Complex> out);
std::vector<Complex> forward_dft(std::span<const double> x);

// Inverse of forward_dft, including the 1/N factor.
void inverse_dft(std::span<const Complex> spectrum, std::span<double> x);

// Spectral d/dtheta of a periodic ring. The Nyquist mode is dropped.
void spectral_derivative(std::span<const double> in, std::span<double> out);
std::vector<double> spectral_derivative(std::span<const double> in);

// The trigonometric interpolant of degree <= N/2 of N uniform samples,
// stored as value(theta) = Re sum_k c_k exp(i k theta) with c_{N/2} real
// (the cos-only Nyquist convention). Trailing coefficients below round-off
// relative to the largest one are trimmed so smooth data evaluates fast.
class TrigSeries {
 public:
  TrigSeries() = default;

  static TrigSeries from_samples(std::span<const double> samples);
  // `spectrum` is forward_dft output of a length-n ring.
  static TrigSeries from_spectrum(std::span<const Complex> spectrum, int n);
  // Takes ownership of already-scaled coefficients.
  static TrigSeries from_coefficients(std::vector<Complex> c);

  double operator()(double theta) const;
  double derivative(double theta) const;

  const std::vector<Complex>& coefficients() const noexcept { return c_; }
  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }

 private:
  void trim();
  std::vector<Complex> c_;
};

// Evaluates two series at the same angle, sharing the exp(ik theta) powers.
void evaluate_pair(const TrigSeries& a, const TrigSeries& b, double theta,
                   double& va, double& vb);

// Re sum_{k=0}^{n-1} c[k] exp(i k theta).
double sum_series(const Complex* c, int n, double theta);

// Value of the trigonometric interpolant of `samples` at theta (mod 2 pi).
// Returns the stored sample unchanged when theta falls on a node.
double trig_interpolate(std::span<const double> samples, double theta);

}  // namespace annulus
