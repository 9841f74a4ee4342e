// Shared signal-processing primitives: FFT, one-pole/biquad filters,
// windowed-sinc rational resampling, pink noise, small vector helpers.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace smisim::dsp {

inline constexpr double kPi = 3.14159265358979323846;

// ---- small helpers ---------------------------------------------------------

double mean(std::span<const double> x);
double rms(std::span<const double> x);
double peak_to_peak(std::span<const double> x);

// ---- FFT -------------------------------------------------------------------

// In-place iterative radix-2 FFT; size must be a power of two.
void fft(std::vector<std::complex<double>>& data);

std::size_t next_pow2(std::size_t n);

// Magnitude spectrum of a real signal zero-padded to n_fft (power of two).
// Returns n_fft/2 + 1 bins.
std::vector<double> magnitude_spectrum(std::span<const double> x,
                                       std::size_t n_fft);

// Fraction of total spectral power (DC excluded) at frequencies strictly
// above `cutoff_hz`. Pads to the next power of two internally.
double power_fraction_above(std::span<const double> x, double rate_hz,
                            double cutoff_hz);

// ---- filters ---------------------------------------------------------------

// First-order high-pass, bilinear transform with frequency prewarp.
// |H| at the cutoff is exactly 1/sqrt(2).
class OnePoleHighPass {
public:
  OnePoleHighPass(double cutoff_hz, double rate_hz);

  // Prime the state so a signal starting at x0 produces no DC step
  // transient (output starts at 0 for constant input).
  void prime(double x0) { x_prev_ = x0; y_prev_ = 0.0; }

  double step(double x) {
    const double y = (x - x_prev_ + (1.0 - k_) * y_prev_) / (1.0 + k_);
    x_prev_ = x;
    y_prev_ = y;
    return y;
  }

private:
  double k_;
  double x_prev_ = 0.0;
  double y_prev_ = 0.0;
};

// RBJ constant-peak-gain band-pass biquad.
class BiquadBandPass {
public:
  BiquadBandPass(double center_hz, double bandwidth_hz, double rate_hz);
  double step(double x);
  std::vector<double> process(std::span<const double> x);

private:
  double b0_, b1_, b2_, a1_, a2_;
  double z1_ = 0.0, z2_ = 0.0;
};

// Paul Kellet's 3-pole pink noise shaper; feed white noise in.
class PinkFilter {
public:
  double step(double white) {
    b0_ = 0.99765 * b0_ + white * 0.0990460;
    b1_ = 0.96300 * b1_ + white * 0.2965164;
    b2_ = 0.57000 * b2_ + white * 1.0526913;
    return b0_ + b1_ + b2_ + white * 0.1848;
  }

private:
  double b0_ = 0.0, b1_ = 0.0, b2_ = 0.0;
};

// ---- resampling ------------------------------------------------------------

// Band-limited rational resampler (polyphase windowed sinc, Kaiser window,
// 80 dB stopband). Integer sample rates only; the ratio is reduced to
// lowest terms internally. Output length is round(n_in * out/in).
class Resampler {
public:
  Resampler(int in_rate_hz, int out_rate_hz);

  std::vector<double> process(std::span<const double> x) const;
  std::size_t output_length(std::size_t n_in) const;

  int in_rate() const { return in_rate_; }
  int out_rate() const { return out_rate_; }

private:
  int in_rate_, out_rate_;
  int up_ = 1, down_ = 1;        // L, M in lowest terms
  int center_ = 0;               // prototype center tap (upsampled domain)
  std::vector<std::vector<double>> phase_taps_;  // [up_] rows
};

std::vector<double> resample(std::span<const double> x, int in_rate_hz,
                             int out_rate_hz);

// Kaiser-windowed low-pass prototype used by Resampler; exposed for tests.
std::vector<double> design_kaiser_lowpass(double cutoff_norm,
                                          double transition_norm,
                                          double attenuation_db);

}  // namespace smisim::dsp
