#include "smisim/smi.hpp"

#include <algorithm>
#include <cmath>

#include "smisim/errors.hpp"

namespace smisim::smi {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kTol = 1e-10;
constexpr int kMaxIter = 100;

struct PhaseEquation {
  double phi0;
  double c;
  double atn;  // atan(alpha)

  double g(double phi) const { return phi + c * std::sin(phi + atn) - phi0; }
  double dg(double phi) const { return 1.0 + c * std::cos(phi + atn); }
};

// Newton iteration with bisection fallback on a bracketing interval
// [lo, hi] where g(lo) <= 0 <= g(hi) and g is nondecreasing.
double newton_bisect(const PhaseEquation& eq, double lo, double hi,
                     double seed) {
  double x = std::clamp(seed, lo, hi);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const double y = eq.g(x);
    if (std::abs(y) < 1e-13) return x;
    if (y > 0.0)
      hi = x;
    else
      lo = x;
    if (hi - lo < kTol) return 0.5 * (lo + hi);

    const double dy = eq.dg(x);
    double next = x - y / dy;  // Newton step
    if (!(dy > 1e-12) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);  // step left the bracket or slope vanished
    x = next;
  }
  throw SolverError("excess-phase solver did not converge", eq.phi0, eq.c);
}

}  // namespace

void LaserParams::validate() const {
  if (!(wavelength_m > 0.0))
    throw InvalidInputError("wavelength must be positive");
  if (!(feedback_c >= 0.0) || !std::isfinite(feedback_c))
    throw InvalidInputError("feedback C must be finite and >= 0");
  if (!(linewidth_alpha >= 0.0) || !std::isfinite(linewidth_alpha))
    throw InvalidInputError("linewidth alpha must be finite and >= 0");
  if (!(modulation_depth > 0.0) || !(modulation_depth <= 1.0))
    throw InvalidInputError("modulation depth must be in (0, 1]");
}

void DisplacementTrace::validate() const {
  if (!(sample_rate_hz > 0.0))
    throw InvalidInputError("displacement sample rate must be positive");
  for (double v : samples_m)
    if (!std::isfinite(v))
      throw InvalidInputError("displacement trace contains non-finite samples");
}

double excess_phase_solve(double phi0, double feedback_c, double alpha,
                          std::optional<double> prev_phi_f) {
  if (!std::isfinite(phi0) || !std::isfinite(feedback_c) ||
      !std::isfinite(alpha))
    throw InvalidInputError("excess_phase_solve: non-finite input");
  if (feedback_c < 0.0 || alpha < 0.0)
    throw InvalidInputError("excess_phase_solve: C and alpha must be >= 0");
  if (prev_phi_f && !std::isfinite(*prev_phi_f))
    throw InvalidInputError("excess_phase_solve: non-finite previous phase");

  if (feedback_c == 0.0) return phi0;

  const PhaseEquation eq{phi0, feedback_c, std::atan(alpha)};

  if (feedback_c < 1.0) {
    // g is strictly increasing: a unique root inside [phi0 - C, phi0 + C].
    return newton_bisect(eq, phi0 - feedback_c, phi0 + feedback_c,
                         prev_phi_f.value_or(phi0));
  }

  if (!prev_phi_f)
    throw InvalidInputError(
        "excess_phase_solve: previous phase required when C >= 1");

  // g is increasing on u = phi + atan(alpha) in (2*pi*k - a, 2*pi*k + a)
  // with a = acos(-1/C), and decreasing in between. Each increasing
  // interval is one solution branch.
  const double a = std::acos(-1.0 / feedback_c);
  const double u_prev = *prev_phi_f + eq.atn;
  long k = static_cast<long>(std::lround(u_prev / kTwoPi));

  const long max_jumps =
      static_cast<long>(std::abs(phi0 - *prev_phi_f) / kTwoPi) + 4;
  for (long hop = 0; hop <= max_jumps; ++hop) {
    const double lo = kTwoPi * static_cast<double>(k) - a - eq.atn;
    const double hi = kTwoPi * static_cast<double>(k) + a - eq.atn;
    const double g_lo = eq.g(lo);
    const double g_hi = eq.g(hi);
    if (g_lo <= 0.0 && g_hi >= 0.0)
      return newton_bisect(eq, lo, hi, *prev_phi_f);
    // Branch no longer covers phi0: jump toward it. This is the fringe.
    k += (g_hi < 0.0) ? 1 : -1;
  }
  throw SolverError("excess-phase branch search did not terminate", phi0,
                    feedback_c);
}

SmiSignal simulate_smi(const DisplacementTrace& displacement,
                       const LaserParams& laser) {
  laser.validate();
  displacement.validate();

  const double phase_per_meter = 4.0 * kPi / laser.wavelength_m;
  SmiSignal out;
  out.sample_rate_hz = displacement.sample_rate_hz;
  out.samples.resize(displacement.samples_m.size());

  std::optional<double> prev;
  for (std::size_t i = 0; i < displacement.samples_m.size(); ++i) {
    const double phi0 = phase_per_meter * displacement.samples_m[i];
    try {
      // First sample: seed with phi0 itself, i.e. the branch nearest the
      // no-feedback solution.
      const double phi_f = excess_phase_solve(
          phi0, laser.feedback_c, laser.linewidth_alpha,
          prev ? prev : std::optional<double>(phi0));
      out.samples[i] = 1.0 + laser.modulation_depth * std::cos(phi_f);
      prev = phi_f;
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (during trace simulation)",
                        e.phi0, e.feedback_c, static_cast<long>(i));
    }
  }
  return out;
}

std::size_t count_fringes(const SmiSignal& signal, double threshold) {
  if (signal.samples.empty())
    throw InvalidInputError("count_fringes: empty signal");
  if (!(threshold > 0.0))
    throw InvalidInputError("count_fringes: threshold must be positive");

  double lo = signal.samples[0], hi = signal.samples[0];
  for (double v : signal.samples) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double jump_limit = threshold * (hi - lo);

  std::size_t count = 0;
  for (std::size_t i = 1; i < signal.samples.size(); ++i)
    if (std::abs(signal.samples[i] - signal.samples[i - 1]) > jump_limit)
      ++count;
  return count;
}

}  // namespace smisim::smi
