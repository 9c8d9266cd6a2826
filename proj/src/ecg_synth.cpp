#include "pliswt/ecg_synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace pliswt {
namespace {

struct Wave {
  double amplitude_mv;
  double offset_s;  // relative to R at RR = 1 s
  double width_s;   // Gaussian sigma
  bool rate_scaled;  // offset follows sqrt(RR)
};

constexpr std::array<Wave, 5> kTemplate{{
    {0.15, -0.20, 0.025, false},  // P
    {-0.10, -0.025, 0.008, false},  // Q
    {1.00, 0.0, 0.010, false},  // R
    {-0.25, 0.025, 0.008, false},  // S
    {0.30, 0.30, 0.060, true},  // T
}};

}  // namespace

SyntheticEcg synth_ecg(double duration_s, double sample_rate_hz, double heart_rate_bpm,
                       std::uint64_t seed, const EcgSynthOptions& options) {
  if (!(duration_s > 0.0)) throw InputError("duration must be positive");
  if (!(sample_rate_hz > 0.0)) throw InputError("sample rate must be positive");
  if (!(heart_rate_bpm >= 20.0 && heart_rate_bpm <= 240.0)) {
    throw InputError("heart rate must lie in [20, 240] bpm");
  }
  if (!(options.rr_jitter_fraction >= 0.0) || !(options.morphology_variation >= 0.0) ||
      options.morphology_variation >= 1.0) {
    throw InputError("invalid synthetic ECG options");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> spread(-1.0, 1.0);

  std::array<double, kTemplate.size()> gain{};
  for (double& g : gain) g = 1.0 + options.morphology_variation * spread(rng);

  const double rr = 60.0 / heart_rate_bpm;
  std::vector<double> beats;
  for (double t = 0.5 * rr; t < duration_s;) {
    beats.push_back(t);
    const double jitter = std::clamp(options.rr_jitter_fraction * normal(rng), -0.5, 0.5);
    t += rr * (1.0 + jitter);
  }

  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  std::vector<double> x(n, 0.0);
  const double t_scale = std::sqrt(rr);
  for (double tr : beats) {
    for (std::size_t w = 0; w < kTemplate.size(); ++w) {
      const Wave& wave = kTemplate[w];
      const double centre = tr + wave.offset_s * (wave.rate_scaled ? t_scale : 1.0);
      const double reach = 6.0 * wave.width_s;
      const auto lo = static_cast<std::ptrdiff_t>(std::ceil((centre - reach) * sample_rate_hz));
      const auto hi = static_cast<std::ptrdiff_t>(std::floor((centre + reach) * sample_rate_hz));
      for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(lo, 0);
           i <= std::min<std::ptrdiff_t>(hi, static_cast<std::ptrdiff_t>(n) - 1); ++i) {
        const double dt = static_cast<double>(i) / sample_rate_hz - centre;
        x[static_cast<std::size_t>(i)] +=
            gain[w] * wave.amplitude_mv * std::exp(-0.5 * dt * dt / (wave.width_s * wave.width_s));
      }
    }
  }
  return {Signal(std::move(x), sample_rate_hz), std::move(beats)};
}

}  // namespace pliswt
