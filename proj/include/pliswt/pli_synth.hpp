#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

/// Mains interference model: a drifting fundamental plus harmonics 2..5
/// whose power is bounded by fractions of the fundamental power.
struct PliConfig {
  double fundamental_hz = 50.0;
  double freq_tolerance_fraction = 0.01;
  std::array<double, 4> harmonic_power_caps{0.02, 0.05, 0.01, 0.06};
  double amplitude_mod_depth = 0.05;
  double drift_bandwidth_hz = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct PliRealization {
  Signal signal;
  std::vector<double> instantaneous_hz;        ///< fundamental frequency track
  std::array<double, 4> harmonic_power_fractions{};  ///< drawn in [0, cap]
};

/**
 * Sum of five phase-continuous tones at m * f(t), m = 1..5.
 *
 * f(t) is white noise through two cascaded one-pole lowpasses at
 * drift_bandwidth_hz, normalized to unit variance y and mapped to
 * fundamental_hz * (1 + freq_tolerance_fraction * tanh(y / 2)), which never
 * leaves the tolerance band and has no clipping kinks. A second
 * process of the same shape modulates the common amplitude by up to
 * amplitude_mod_depth. Harmonic m has amplitude sqrt(fraction) relative to
 * the unit-amplitude fundamental, so its power ratio is exactly the drawn
 * fraction. Deterministic for a given seed.
 */
PliRealization synthesize_pli_detailed(double duration_s, double sample_rate_hz,
                                       const PliConfig& config);

Signal synthesize_pli(double duration_s, double sample_rate_hz, const PliConfig& config);

struct MixResult {
  Signal noisy;
  double scale = 0.0;  ///< factor applied to the interference
};

/// noisy = clean + scale * interference with scale chosen so that
/// 10 log10(P(clean) / P(scale * interference)) equals the target.
MixResult mix_at_sir(const Signal& clean, const Signal& interference, SirLevelDb sir);

/// Measured SIR in dB between a clean signal and an additive interference.
double measured_sir_db(std::span<const double> clean, std::span<const double> interference);

}  // namespace pliswt
