#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

/// Per-sample adaptive threshold for one detail scale.
struct ThresholdSeries {
  std::vector<double> values;
  int scale = 1;
  double window_ms = 0.0;
};

/// Boolean per-sample mask; true marks a QRS region.
struct RegionMask {
  std::vector<bool> flags;

  std::size_t size() const noexcept { return flags.size(); }
  std::size_t count() const noexcept;
};

/// Odd window length in samples for a duration: round(ms * fs / 1000),
/// bumped by one when even.
std::size_t odd_window_samples(double window_ms, double sample_rate_hz);

/**
 * Moving median of |band| over a centred window of odd_window_samples().
 *
 * Near the edges the window shrinks to the samples that exist. When the
 * available count is even the lower of the two middle values is taken, so
 * every output is a data value and positive scaling of the band scales the
 * output exactly.
 */
ThresholdSeries moving_median_threshold(std::span<const double> band, double window_ms,
                                        double sample_rate_hz, int scale = 1);

double soft_shrink(double c, double lambda);
double hard_shrink(double c, double lambda);

/// Hard shrinkage inside QRS regions, soft shrinkage elsewhere.
std::vector<double> hybrid_shrink_band(std::span<const double> band,
                                       const ThresholdSeries& thresholds,
                                       const RegionMask& qrs);

}  // namespace pliswt
