#pragma once

#include <vector>

#include "pliswt/qrs_detector.hpp"
#include "pliswt/shrinkage.hpp"
#include "pliswt/signal.hpp"

namespace pliswt {

struct DenoiseConfig {
  int levels = 4;
  int wavelet_order = 6;
  double median_window_ms = 200.0;
  double qrs_window_ms = 120.0;
  QrsDetectorConfig detector{};

  /// Throws InputError on levels < 1 or non-positive windows.
  void validate() const;
};

/// Intermediate products of one denoising run.
struct DenoiseTrace {
  Signal output;
  RegionMask qrs;
  std::vector<ThresholdSeries> thresholds;  ///< one per detail scale
};

/**
 * Powerline interference removal: SWT decomposition, per-scale moving-median
 * thresholds, hard shrinkage inside detected QRS regions and soft shrinkage
 * elsewhere, then inverse SWT. The approximation band is left untouched.
 * QRS regions are detected once on the input and shared by all scales.
 */
Signal denoise(const Signal& s, const DenoiseConfig& config = {});

DenoiseTrace denoise_traced(const Signal& s, const DenoiseConfig& config = {});

}  // namespace pliswt
