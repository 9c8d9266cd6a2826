#pragma once

#include <cstddef>
#include <vector>

#include "pliswt/shrinkage.hpp"
#include "pliswt/signal.hpp"

namespace pliswt {

/// Energy-based QRS detector settings.
struct QrsDetectorConfig {
  double bandpass_low_hz = 5.0;
  double bandpass_high_hz = 15.0;
  double integration_window_ms = 150.0;
  double refractory_ms = 250.0;
  double learning_s = 2.0;         ///< initial span used to seed the adaptive levels
  double fiducial_search_ms = 75.0;  ///< half-width of the R-peak search around an energy peak
  double mask_window_ms = 120.0;     ///< total width of each marked QRS region
};

/**
 * Bandpass (zero-phase Butterworth), derivative, square, centred moving
 * integration, then peak picking against an adaptive signal/noise level
 * threshold with a refractory period. Returns R-peak fiducial indices in
 * ascending order; complexes whose fiducial search window does not fit inside
 * the record are not reported. Every threshold is relative to the signal's own energy,
 * so the result does not change under positive amplitude scaling.
 */
std::vector<std::size_t> detect_qrs_peaks(const Signal& s, const QrsDetectorConfig& cfg = {});

/// Marks [peak - w/2, peak - w/2 + w) for each peak, clipped to the signal.
RegionMask qrs_region_mask(const std::vector<std::size_t>& peaks, std::size_t length,
                           double sample_rate_hz, double window_ms);

RegionMask detect_qrs_regions(const Signal& s, const QrsDetectorConfig& cfg = {});

}  // namespace pliswt
