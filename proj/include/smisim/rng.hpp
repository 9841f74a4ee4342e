// Deterministic random number generation.
//
// Every stochastic quantity in the toolkit flows from one master seed
// through named substreams, so runs are reproducible bit-for-bit and
// independent of thread scheduling. We roll our own generator instead of
// <random> distributions because libstdc++'s normal/poisson algorithms
// are implementation-defined and would tie output bytes to the standard
// library version.
#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace smisim {

// SplitMix64 step; used for seeding and for hashing seed components.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive combine of seed material (integers and names).
inline std::uint64_t hash_seed(std::uint64_t a) {
  std::uint64_t s = a;
  return splitmix64(s);
}

inline std::uint64_t hash_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2));
  std::uint64_t h = splitmix64(s);
  s ^= b;
  return h ^ splitmix64(s);
}

inline std::uint64_t hash_seed(std::uint64_t a, std::string_view name) {
  std::uint64_t h = hash_seed(a);
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;  // FNV-1a prime
    std::uint64_t s = h;
    h = splitmix64(s);
  }
  return h;
}

inline std::uint64_t hash_seed(std::uint64_t a, std::string_view name,
                               std::uint64_t index) {
  return hash_seed(hash_seed(a, name), index);
}

// xoshiro256++ with SplitMix64 state expansion.
class Rng {
public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal, Box-Muller (trig form, pair cached).
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  double gaussian(double mean, double sigma) {
    return mean + sigma * gaussian();
  }

  // Knuth's method; fine for the small event rates used here.
  std::uint32_t poisson(double lambda) {
    const double limit = std::exp(-lambda);
    double p = 1.0;
    std::uint32_t k = 0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo bias is negligible for the small n used here,
    // but do it properly anyway.
    const std::uint64_t threshold = -n % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace smisim
