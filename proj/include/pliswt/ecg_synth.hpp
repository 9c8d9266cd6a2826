#pragma once

#include <cstdint>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

struct EcgSynthOptions {
  double rr_jitter_fraction = 0.03;    ///< std of RR interval relative to the mean
  double morphology_variation = 0.1;   ///< per-record wave amplitude spread (+-)
};

struct SyntheticEcg {
  Signal signal;
  std::vector<double> beat_times_s;  ///< ground-truth R-peak times
};

/// Gaussian-bump P, Q, R, S, T beats (R = 1 mV nominal). The first R peak
/// sits half an RR interval into the record; later beats follow with
/// seeded RR jitter. Deterministic per seed.
SyntheticEcg synth_ecg(double duration_s, double sample_rate_hz, double heart_rate_bpm,
                       std::uint64_t seed, const EcgSynthOptions& options = {});

}  // namespace pliswt
