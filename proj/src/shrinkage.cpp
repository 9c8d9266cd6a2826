#include "pliswt/shrinkage.hpp"

#include <algorithm>
#include <cmath>

namespace pliswt {

std::size_t RegionMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

std::size_t odd_window_samples(double window_ms, double sample_rate_hz) {
  if (!(window_ms > 0.0)) throw InputError("window duration must be positive");
  if (!(sample_rate_hz > 0.0)) throw InputError("sample rate must be positive");
  const double raw = std::round(window_ms * sample_rate_hz / 1000.0);
  if (raw < 1.0) throw InputError("window is shorter than one sample");
  auto w = static_cast<std::size_t>(raw);
  if (w % 2 == 0) ++w;
  return w;
}

ThresholdSeries moving_median_threshold(std::span<const double> band, double window_ms,
                                        double sample_rate_hz, int scale) {
  require_non_empty(band, "empty coefficient band");
  const std::size_t half = odd_window_samples(window_ms, sample_rate_hz) / 2;
  const std::size_t n = band.size();

  ThresholdSeries out{.values = std::vector<double>(n), .scale = scale, .window_ms = window_ms};

  // Sorted copy of the current window; insert/erase keeps it ordered.
  std::vector<double> window;
  window.reserve(2 * half + 1);
  auto insert = [&](double v) {
    window.insert(std::upper_bound(window.begin(), window.end(), v), v);
  };
  auto erase = [&](double v) { window.erase(std::lower_bound(window.begin(), window.end(), v)); };

  for (std::size_t i = 0; i <= std::min(half, n - 1); ++i) insert(std::abs(band[i]));
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      if (i + half < n) insert(std::abs(band[i + half]));
      if (i > half) erase(std::abs(band[i - half - 1]));
    }
    out.values[i] = window[(window.size() - 1) / 2];
  }
  return out;
}

double soft_shrink(double c, double lambda) {
  if (lambda < 0.0) throw InputError("threshold must be non-negative");
  const double mag = std::abs(c) - lambda;
  return mag > 0.0 ? std::copysign(mag, c) : 0.0;
}

double hard_shrink(double c, double lambda) {
  if (lambda < 0.0) throw InputError("threshold must be non-negative");
  return std::abs(c) > lambda ? c : 0.0;
}

std::vector<double> hybrid_shrink_band(std::span<const double> band,
                                       const ThresholdSeries& thresholds,
                                       const RegionMask& qrs) {
  if (thresholds.values.size() != band.size() || qrs.size() != band.size()) {
    throw InputError("band, thresholds and QRS mask must have the same length");
  }
  std::vector<double> out(band.size());
  for (std::size_t i = 0; i < band.size(); ++i) {
    out[i] = qrs.flags[i] ? hard_shrink(band[i], thresholds.values[i])
                          : soft_shrink(band[i], thresholds.values[i]);
  }
  return out;
}

}  // namespace pliswt
