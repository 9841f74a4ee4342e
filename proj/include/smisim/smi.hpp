// Self-mixing interferometry forward model.
//
// Maps target displacement to the photodiode interference signal. The
// optical feedback is described by the transcendental excess-phase
// relation
//
//     phi_F = phi_0 - C * sin(phi_F + atan(alpha))
//
// which is single-valued for C < 1 and multivalued for C >= 1. In the
// strong-feedback regime the physical solution follows one branch until
// it folds, then jumps to the neighbouring branch; each jump is one
// fringe in the output signal. Output power is modelled as
// 1 + m * cos(phi_F).
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace smisim::smi {

struct LaserParams {
  double wavelength_m = 650e-9;
  double feedback_c = 3.0;       // C; >= 1 gives hysteretic sawtooth fringes
  double linewidth_alpha = 4.6;  // alpha
  double modulation_depth = 0.1; // m, in (0, 1]

  void validate() const;
};

// Fingertip surface displacement in meters at a fixed sample rate.
struct DisplacementTrace {
  std::vector<double> samples_m;
  double sample_rate_hz = 0.0;

  void validate() const;
  double duration_s() const {
    return sample_rate_hz > 0.0
               ? static_cast<double>(samples_m.size()) / sample_rate_hz
               : 0.0;
  }
};

// Dimensionless sensor output trace (shared layout with the readout stage).
struct SmiSignal {
  std::vector<double> samples;
  double sample_rate_hz = 0.0;
};

// Solve phi_F = phi0 - C*sin(phi_F + atan(alpha)).
//
// For C >= 1 the previous solution must be supplied; the returned root
// stays on the branch continuous with `prev_phi_f` and only jumps when
// that branch ceases to exist (the jump direction follows the direction
// in which phi0 moved, which is what produces hysteresis).
double excess_phase_solve(double phi0, double feedback_c, double alpha,
                          std::optional<double> prev_phi_f);

// Render the interference signal 1 + m*cos(phi_F) for a displacement
// trace. phi0_i = 4*pi*D_i / lambda; branch state carries across samples.
SmiSignal simulate_smi(const DisplacementTrace& displacement,
                       const LaserParams& laser);

// Count fringe discontinuities: sample-to-sample jumps larger than
// threshold * (signal peak-to-peak).
std::size_t count_fringes(const SmiSignal& signal, double threshold = 0.25);

}  // namespace smisim::smi
