#include "smisim/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "smisim/errors.hpp"

namespace smisim::dsp {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

double peak_to_peak(std::span<const double> x) {
  if (x.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw InvalidInputError("fft size must be a nonzero power of two");

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<double> magnitude_spectrum(std::span<const double> x,
                                       std::size_t n_fft) {
  std::vector<std::complex<double>> buf(n_fft, {0.0, 0.0});
  const std::size_t n = std::min(x.size(), n_fft);
  for (std::size_t i = 0; i < n; ++i) buf[i] = {x[i], 0.0};
  fft(buf);
  std::vector<double> mag(n_fft / 2 + 1);
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(buf[i]);
  return mag;
}

double power_fraction_above(std::span<const double> x, double rate_hz,
                            double cutoff_hz) {
  if (x.size() < 2) throw InvalidInputError("power_fraction_above: trace too short");
  const std::size_t n_fft = next_pow2(x.size());
  const auto mag = magnitude_spectrum(x, n_fft);
  const double bin_hz = rate_hz / static_cast<double>(n_fft);
  double total = 0.0, above = 0.0;
  for (std::size_t i = 1; i < mag.size(); ++i) {  // skip DC
    const double p = mag[i] * mag[i];
    total += p;
    if (static_cast<double>(i) * bin_hz > cutoff_hz) above += p;
  }
  return total > 0.0 ? above / total : 0.0;
}

OnePoleHighPass::OnePoleHighPass(double cutoff_hz, double rate_hz) {
  if (cutoff_hz <= 0.0 || rate_hz <= 0.0 || cutoff_hz >= rate_hz / 2.0)
    throw ConfigError("high-pass cutoff must lie in (0, rate/2)");
  k_ = std::tan(kPi * cutoff_hz / rate_hz);
}

BiquadBandPass::BiquadBandPass(double center_hz, double bandwidth_hz,
                               double rate_hz) {
  if (center_hz <= 0.0 || bandwidth_hz <= 0.0 || center_hz >= rate_hz / 2.0)
    throw ConfigError("band-pass center must lie in (0, rate/2)");
  const double w0 = 2.0 * kPi * center_hz / rate_hz;
  const double q = center_hz / bandwidth_hz;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  b0_ = alpha / a0;
  b1_ = 0.0;
  b2_ = -alpha / a0;
  a1_ = -2.0 * std::cos(w0) / a0;
  a2_ = (1.0 - alpha) / a0;
}

double BiquadBandPass::step(double x) {
  // Transposed direct form II.
  const double y = b0_ * x + z1_;
  z1_ = b1_ * x - a1_ * y + z2_;
  z2_ = b2_ * x - a2_ * y;
  return y;
}

std::vector<double> BiquadBandPass::process(std::span<const double> x) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = step(x[i]);
  return y;
}

namespace {

double bessel_i0(double x) {
  // Series expansion; converges quickly for the beta values used here.
  double sum = 1.0, term = 1.0;
  const double half_x = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace

std::vector<double> design_kaiser_lowpass(double cutoff_norm,
                                          double transition_norm,
                                          double attenuation_db) {
  // cutoff_norm / transition_norm are in cycles per sample (0 .. 0.5).
  if (cutoff_norm <= 0.0 || cutoff_norm >= 0.5 || transition_norm <= 0.0)
    throw InvalidInputError("bad low-pass design parameters");
  const double a = attenuation_db;
  const double beta = a > 50.0   ? 0.1102 * (a - 8.7)
                      : a >= 21.0 ? 0.5842 * std::pow(a - 21.0, 0.4) +
                                        0.07886 * (a - 21.0)
                                  : 0.0;
  std::size_t taps = static_cast<std::size_t>(
      std::ceil((a - 8.0) / (2.285 * 2.0 * kPi * transition_norm)) + 1);
  if (taps % 2 == 0) ++taps;  // odd length, symmetric, integer group delay
  const double c = static_cast<double>(taps - 1) / 2.0;
  const double i0_beta = bessel_i0(beta);
  std::vector<double> h(taps);
  for (std::size_t i = 0; i < taps; ++i) {
    const double t = static_cast<double>(i) - c;
    const double sinc =
        t == 0.0 ? 2.0 * cutoff_norm
                 : std::sin(2.0 * kPi * cutoff_norm * t) / (kPi * t);
    const double r = t / c;
    const double w = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - r * r))) /
                     i0_beta;
    h[i] = sinc * w;
  }
  return h;
}

Resampler::Resampler(int in_rate_hz, int out_rate_hz)
    : in_rate_(in_rate_hz), out_rate_(out_rate_hz) {
  if (in_rate_hz <= 0 || out_rate_hz <= 0)
    throw InvalidInputError("sample rates must be positive");
  if (in_rate_hz == out_rate_hz) return;  // identity, no filter

  const int g = std::gcd(in_rate_hz, out_rate_hz);
  up_ = out_rate_hz / g;
  down_ = in_rate_hz / g;

  // Prototype designed in the upsampled domain (rate = in_rate * up).
  const double up_rate = static_cast<double>(in_rate_) * up_;
  const double band = 0.5 * std::min(in_rate_, out_rate_);
  const double cutoff_hz = 0.92 * band;      // passband edge
  const double transition_hz = 0.16 * band;  // stopband by ~1.08 * Nyquist
  auto proto = design_kaiser_lowpass(cutoff_hz / up_rate,
                                     transition_hz / up_rate, 80.0);
  // Compensate the 1/up amplitude loss of zero-stuffed upsampling.
  for (auto& v : proto) v *= static_cast<double>(up_);
  center_ = static_cast<int>((proto.size() - 1) / 2);

  phase_taps_.assign(up_, {});
  for (int r = 0; r < up_; ++r)
    for (std::size_t i = static_cast<std::size_t>(r); i < proto.size();
         i += up_)
      phase_taps_[r].push_back(proto[i]);
}

std::size_t Resampler::output_length(std::size_t n_in) const {
  if (in_rate_ == out_rate_) return n_in;
  return (n_in * static_cast<std::size_t>(up_) +
          static_cast<std::size_t>(down_) / 2) /
         static_cast<std::size_t>(down_);
}

std::vector<double> Resampler::process(std::span<const double> x) const {
  if (in_rate_ == out_rate_) return {x.begin(), x.end()};
  const std::size_t n_out = output_length(x.size());
  std::vector<double> y(n_out, 0.0);
  const long n_in = static_cast<long>(x.size());
  for (std::size_t n = 0; n < n_out; ++n) {
    // Position in the upsampled grid, shifted so the filter is zero-phase.
    const long pos = static_cast<long>(n) * down_ + center_;
    const long q = pos / up_;
    const int r = static_cast<int>(pos - q * static_cast<long>(up_));
    const auto& taps = phase_taps_[r];
    double acc = 0.0;
    for (std::size_t j = 0; j < taps.size(); ++j) {
      const long idx = q - static_cast<long>(j);
      if (idx >= 0 && idx < n_in) acc += taps[j] * x[static_cast<std::size_t>(idx)];
    }
    y[n] = acc;
  }
  return y;
}

std::vector<double> resample(std::span<const double> x, int in_rate_hz,
                             int out_rate_hz) {
  return Resampler(in_rate_hz, out_rate_hz).process(x);
}

}  // namespace smisim::dsp
