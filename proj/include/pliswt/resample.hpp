#pragma once

#include <cstdint>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

struct ResampleSpec {
  double source_hz = 0.0;
  double target_hz = 0.0;
  std::int64_t up = 1;
  std::int64_t down = 1;
  int filter_half_taps = 64;  ///< sinc zero crossings kept on each side

  /// Reduces target/source to up/down. Throws when no ratio with terms
  /// <= max_term reproduces the rates to 1e-12 relative.
  static ResampleSpec from_rates(double source_hz, double target_hz, int filter_half_taps = 64,
                                 std::int64_t max_term = 10000);

  /// Kaiser-windowed sinc prototype at source_hz * up, cutoff at
  /// min(source, target) / 2, unit DC gain per output phase on average.
  std::vector<double> prototype_filter() const;
};

/**
 * Polyphase rational resampling with a linear-phase windowed-sinc lowpass.
 * The input is extended by symmetric reflection so the first and last
 * samples see no start-up transient; output sample m sits at time
 * m / target_hz. Output length is ceil(L * up / down).
 */
Signal resample(const Signal& s, double target_hz, int filter_half_taps = 64);

}  // namespace pliswt
