#include "annulus/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>

#include "annulus/grid.hpp"

namespace annulus {

namespace {

struct PlanPair {
  fftw_plan r2c;
  fftw_plan c2r;
};

// The FFTW planner is not thread-safe; execution with the new-array
// interface is. Plans are created once per length under a lock and then
// looked up through a per-thread cache.
const PlanPair& plans_for(int n) {
  thread_local std::map<int, const PlanPair*> local;
  if (auto it = local.find(n); it != local.end()) return *it->second;

  static std::mutex mutex;
  static std::map<int, PlanPair> shared;
  std::lock_guard lock(mutex);
  auto it = shared.find(n);
  if (it == shared.end()) {
    std::vector<double> in(n);
    std::vector<fftw_complex> out(n / 2 + 1);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_r2c_1d(n, in.data(), out.data(), flags),
               fftw_plan_dft_c2r_1d(n, out.data(), in.data(), flags)};
    it = shared.emplace(n, p).first;
  }
  local.emplace(n, &it->second);
  return it->second;
}

}  // namespace

void forward_dft(std::span<const double> x, std::span<Complex> out) {
  const int n = static_cast<int>(x.size());
  assert(out.size() == static_cast<std::size_t>(n / 2 + 1));
  fftw_execute_dft_r2c(plans_for(n).r2c, const_cast<double*>(x.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

std::vector<Complex> forward_dft(std::span<const double> x) {
  std::vector<Complex> out(x.size() / 2 + 1);
  forward_dft(x, out);
  return out;
}

void inverse_dft(std::span<const Complex> spectrum, std::span<double> x) {
  const int n = static_cast<int>(x.size());
  assert(spectrum.size() == static_cast<std::size_t>(n / 2 + 1));
  // c2r overwrites its input.
  thread_local std::vector<Complex> scratch;
  scratch.assign(spectrum.begin(), spectrum.end());
  fftw_execute_dft_c2r(plans_for(n).c2r,
                       reinterpret_cast<fftw_complex*>(scratch.data()), x.data());
  const double scale = 1.0 / n;
  for (double& v : x) v *= scale;
}

void spectral_derivative(std::span<const double> in, std::span<double> out) {
  const int n = static_cast<int>(in.size());
  thread_local std::vector<Complex> spec;
  spec.resize(n / 2 + 1);
  forward_dft(in, spec);
  for (int k = 0; k <= n / 2; ++k) spec[k] *= Complex(0.0, k);
  if (n % 2 == 0) spec[n / 2] = 0.0;
  inverse_dft(spec, out);
}

std::vector<double> spectral_derivative(std::span<const double> in) {
  std::vector<double> out(in.size());
  spectral_derivative(in, out);
  return out;
}

TrigSeries TrigSeries::from_samples(std::span<const double> samples) {
  const auto spec = forward_dft(samples);
  return from_spectrum(spec, static_cast<int>(samples.size()));
}

TrigSeries TrigSeries::from_spectrum(std::span<const Complex> spectrum, int n) {
  TrigSeries s;
  s.c_.resize(spectrum.size());
  const double inv = 1.0 / n;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const bool unpaired = k == 0 || (n % 2 == 0 && static_cast<int>(k) == n / 2);
    s.c_[k] = unpaired ? Complex(spectrum[k].real() * inv, 0.0)
                       : 2.0 * inv * spectrum[k];
  }
  s.trim();
  return s;
}

TrigSeries TrigSeries::from_coefficients(std::vector<Complex> c) {
  TrigSeries s;
  s.c_ = std::move(c);
  s.trim();
  return s;
}

void TrigSeries::trim() {
  double biggest = 0.0;
  for (const Complex& c : c_) biggest = std::max(biggest, std::abs(c));
  const double floor = 1e-16 * biggest;
  std::size_t keep = c_.size();
  while (keep > 1 && std::abs(c_[keep - 1]) <= floor) --keep;
  c_.resize(std::max<std::size_t>(keep, 1));
}

double sum_series(const Complex* c, int n, double theta) {
  if (n <= 0) return 0.0;
  double acc = c[0].real();
  const double zr = std::cos(theta), zi = std::sin(theta);
  double wr = zr, wi = zi;
  for (int k = 1; k < n; ++k) {
    if ((k & 31) == 0) {
      wr = std::cos(k * theta);
      wi = std::sin(k * theta);
    }
    acc += c[k].real() * wr - c[k].imag() * wi;
    const double t = wr * zr - wi * zi;
    wi = wr * zi + wi * zr;
    wr = t;
  }
  return acc;
}

double TrigSeries::operator()(double theta) const {
  return sum_series(c_.data(), static_cast<int>(c_.size()), theta);
}

double TrigSeries::derivative(double theta) const {
  const int n = static_cast<int>(c_.size());
  double acc = 0.0;
  const double zr = std::cos(theta), zi = std::sin(theta);
  double wr = zr, wi = zi;
  for (int k = 1; k < n; ++k) {
    if ((k & 31) == 0) {
      wr = std::cos(k * theta);
      wi = std::sin(k * theta);
    }
    acc -= k * (c_[k].imag() * wr + c_[k].real() * wi);
    const double t = wr * zr - wi * zi;
    wi = wr * zi + wi * zr;
    wr = t;
  }
  return acc;
}

void evaluate_pair(const TrigSeries& a, const TrigSeries& b, double theta,
                   double& va, double& vb) {
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  const int na = static_cast<int>(ca.size());
  const int nb = static_cast<int>(cb.size());
  const int n = std::max(na, nb);
  double sa = na > 0 ? ca[0].real() : 0.0;
  double sb = nb > 0 ? cb[0].real() : 0.0;
  const double zr = std::cos(theta), zi = std::sin(theta);
  double wr = zr, wi = zi;
  for (int k = 1; k < n; ++k) {
    if ((k & 31) == 0) {
      wr = std::cos(k * theta);
      wi = std::sin(k * theta);
    }
    if (k < na) sa += ca[k].real() * wr - ca[k].imag() * wi;
    if (k < nb) sb += cb[k].real() * wr - cb[k].imag() * wi;
    const double t = wr * zr - wi * zi;
    wi = wr * zi + wi * zr;
    wr = t;
  }
  va = sa;
  vb = sb;
}

double trig_interpolate(std::span<const double> samples, double theta) {
  const int n = static_cast<int>(samples.size());
  const double t = theta / (kTwoPi / n);
  if (std::abs(t - std::nearbyint(t)) <= 1e-12 * std::max(1.0, std::abs(t))) {
    const long j = static_cast<long>(std::nearbyint(t));
    return samples[static_cast<std::size_t>(((j % n) + n) % n)];
  }
  return TrigSeries::from_samples(samples)(theta);
}

}  // namespace annulus
