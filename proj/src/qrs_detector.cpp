#include "pliswt/qrs_detector.hpp"

#include <algorithm>
#include <cmath>

#include "biquad.hpp"

namespace pliswt {
namespace {

std::size_t samples_for(double ms, double fs) {
  return static_cast<std::size_t>(std::lround(ms * fs / 1000.0));
}

std::vector<double> bandpass(std::span<const double> x, const QrsDetectorConfig& cfg, double fs) {
  using detail::Biquad;
  std::vector<Biquad> sections;
  sections.push_back(Biquad::highpass(cfg.bandpass_low_hz, fs, 1.0 / std::sqrt(2.0)));
  for (double q : detail::butterworth_qs(4)) {
    sections.push_back(Biquad::lowpass(cfg.bandpass_high_hz, fs, q));
  }
  const auto pad = static_cast<std::size_t>(3.0 * fs / cfg.bandpass_low_hz);
  return detail::filtfilt(x, sections, pad);
}

// Centred moving average of odd length.
std::vector<double> moving_average(const std::vector<double>& x, std::size_t width) {
  const std::size_t n = x.size();
  const std::size_t half = width / 2;
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n, i + half + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(width);
  }
  return out;
}

void validate(const QrsDetectorConfig& cfg, double fs) {
  if (!(cfg.bandpass_low_hz > 0.0) || !(cfg.bandpass_high_hz > cfg.bandpass_low_hz)) {
    throw InputError("detector bandpass edges must satisfy 0 < low < high");
  }
  if (!(cfg.bandpass_high_hz < fs / 2.0)) {
    throw InputError("detector bandpass exceeds the Nyquist frequency");
  }
  if (!(cfg.integration_window_ms > 0.0) || !(cfg.refractory_ms > 0.0) ||
      !(cfg.learning_s > 0.0) || !(cfg.fiducial_search_ms >= 0.0) ||
      !(cfg.mask_window_ms > 0.0)) {
    throw InputError("detector durations must be positive");
  }
}

}  // namespace

std::vector<std::size_t> detect_qrs_peaks(const Signal& s, const QrsDetectorConfig& cfg) {
  const double fs = s.sample_rate_hz();
  validate(cfg, fs);
  const std::size_t integration = odd_window_samples(cfg.integration_window_ms, fs);
  if (s.size() < integration) {
    throw InputError("signal is shorter than one detector integration window");
  }

  const std::vector<double> bp = bandpass(s.samples(), cfg, fs);
  const std::size_t n = bp.size();

  std::vector<double> energy(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d = bp[i + 1] - bp[i - 1];
    energy[i] = d * d;
  }
  const std::vector<double> mwi = moving_average(energy, integration);

  const std::size_t learn = std::min(n, std::max<std::size_t>(1, samples_for(cfg.learning_s * 1000.0, fs)));
  const double global_max = *std::max_element(mwi.begin(), mwi.end());
  // Energy at rounding-noise level relative to the input is not a beat.
  double peak_abs = 0.0;
  for (double v : s.samples()) peak_abs = std::max(peak_abs, std::abs(v));
  const double floor = 1e-10 * peak_abs;
  if (!(global_max > floor * floor)) return {};
  double learn_max = *std::max_element(mwi.begin(), mwi.begin() + static_cast<std::ptrdiff_t>(learn));
  if (!(learn_max > 0.0)) learn_max = global_max;  // silent lead-in
  double learn_mean = 0.0;
  for (std::size_t i = 0; i < learn; ++i) learn_mean += mwi[i];
  learn_mean /= static_cast<double>(learn);

  double signal_level = 0.25 * learn_max;
  double noise_level = 0.5 * learn_mean;
  double threshold = noise_level + 0.25 * (signal_level - noise_level);

  const std::size_t refractory = samples_for(cfg.refractory_ms, fs);
  std::vector<std::size_t> energy_peaks;
  // The centred integration is incomplete within half a window of either
  // end, and that is also where padding artifacts of a large interferer
  // land, so energy peaks there are not candidates.
  const std::size_t guard = std::max<std::size_t>(1, integration / 2);
  for (std::size_t i = guard; i + guard < n; ++i) {
    if (!(mwi[i] > mwi[i - 1] && mwi[i] >= mwi[i + 1])) continue;
    const double v = mwi[i];
    if (v > threshold) {
      if (!energy_peaks.empty() && i - energy_peaks.back() < refractory) {
        // Same complex: keep the larger of the two.
        if (v > mwi[energy_peaks.back()]) energy_peaks.back() = i;
      } else {
        energy_peaks.push_back(i);
      }
      signal_level = 0.125 * v + 0.875 * signal_level;
    } else {
      noise_level = 0.125 * v + 0.875 * noise_level;
    }
    threshold = noise_level + 0.25 * (signal_level - noise_level);
  }

  // R fiducial: largest bandpassed deflection near each energy peak.
  const std::size_t search = samples_for(cfg.fiducial_search_ms, fs);
  std::vector<std::size_t> peaks;
  peaks.reserve(energy_peaks.size());
  for (std::size_t p : energy_peaks) {
    const std::size_t lo = p >= search ? p - search : 0;
    const std::size_t hi = std::min(n, p + search + 1);
    std::size_t best = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (std::abs(bp[i]) > std::abs(bp[best])) best = i;
    }
    // A complex must lie wholly inside the record; this also drops padding
    // artifacts that a strong interferer leaves at the very ends.
    if (best < search || best + search >= n) continue;
    if (peaks.empty() || best != peaks.back()) peaks.push_back(best);
  }
  return peaks;
}

RegionMask qrs_region_mask(const std::vector<std::size_t>& peaks, std::size_t length,
                           double sample_rate_hz, double window_ms) {
  if (!(window_ms > 0.0)) throw InputError("QRS window must be positive");
  const std::size_t width = std::max<std::size_t>(1, samples_for(window_ms, sample_rate_hz));
  RegionMask mask{std::vector<bool>(length, false)};
  for (std::size_t p : peaks) {
    const auto start = static_cast<std::ptrdiff_t>(p) - static_cast<std::ptrdiff_t>(width / 2);
    const auto lo = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, start));
    const auto end = start + static_cast<std::ptrdiff_t>(width);
    const std::size_t hi = end <= 0 ? 0 : std::min(length, static_cast<std::size_t>(end));
    for (std::size_t i = lo; i < hi; ++i) mask.flags[i] = true;
  }
  return mask;
}

RegionMask detect_qrs_regions(const Signal& s, const QrsDetectorConfig& cfg) {
  require_non_empty(s.samples(), "empty signal");
  return qrs_region_mask(detect_qrs_peaks(s, cfg), s.size(), s.sample_rate_hz(),
                         cfg.mask_window_ms);
}

}  // namespace pliswt
