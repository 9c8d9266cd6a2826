#include "pliswt/denoiser.hpp"

#include "pliswt/swt.hpp"

namespace pliswt {

void DenoiseConfig::validate() const {
  if (levels < 1) throw InputError("levels must be >= 1");
  if (!(median_window_ms > 0.0)) throw InputError("median window must be positive");
  if (!(qrs_window_ms > 0.0)) throw InputError("QRS window must be positive");
}

DenoiseTrace denoise_traced(const Signal& s, const DenoiseConfig& config) {
  config.validate();
  require_non_empty(s.samples(), "empty signal");
  const auto filter = daubechies_filters(config.wavelet_order);
  auto decomposition = swt_forward(s, config.levels, filter);

  QrsDetectorConfig detector = config.detector;
  detector.mask_window_ms = config.qrs_window_ms;
  DenoiseTrace trace{.output = {}, .qrs = detect_qrs_regions(s, detector), .thresholds = {}};

  for (int j = 0; j < config.levels; ++j) {
    auto& band = decomposition.details[static_cast<std::size_t>(j)];
    auto lambda = moving_median_threshold(band, config.median_window_ms, s.sample_rate_hz(), j + 1);
    band = hybrid_shrink_band(band, lambda, trace.qrs);
    trace.thresholds.push_back(std::move(lambda));
  }
  trace.output = swt_inverse(decomposition);
  return trace;
}

Signal denoise(const Signal& s, const DenoiseConfig& config) {
  return denoise_traced(s, config).output;
}

}  // namespace pliswt
