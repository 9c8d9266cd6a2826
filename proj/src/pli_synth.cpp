#include "pliswt/pli_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pliswt {
namespace {

constexpr int kTones = 5;

// Unit-variance lowpass noise: two cascaded one-pole sections, started
// after a burn-in so the output is stationary from the first sample.
class SlowProcess {
public:
  SlowProcess(double bandwidth_hz, double fs, std::mt19937_64& rng)
      : alpha_(std::exp(-2.0 * std::numbers::pi * bandwidth_hz / fs)), rng_(rng) {
    const double a = alpha_;
    stddev_ = std::sqrt((1.0 - a) * (1.0 + a * a) / std::pow(1.0 + a, 3));
    const auto burn_in = static_cast<long long>(std::ceil(10.0 / (1.0 - a)));
    for (long long i = 0; i < burn_in; ++i) step();
  }

  double next() { return step() / stddev_; }

private:
  double step() {
    s1_ = alpha_ * s1_ + (1.0 - alpha_) * normal_(rng_);
    s2_ = alpha_ * s2_ + (1.0 - alpha_) * s1_;
    return s2_;
  }

  double alpha_;
  double stddev_ = 1.0;
  std::mt19937_64& rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  double s1_ = 0.0;
  double s2_ = 0.0;
};

// Smooth saturation of a unit-variance process into (-1, 1).
double bounded(double unit_variance) { return std::tanh(unit_variance / 2.0); }

}  // namespace

void PliConfig::validate() const {
  if (!(fundamental_hz > 0.0)) throw InputError("fundamental frequency must be positive");
  if (!(freq_tolerance_fraction >= 0.0) || freq_tolerance_fraction >= 1.0) {
    throw InputError("frequency tolerance must lie in [0, 1)");
  }
  for (double cap : harmonic_power_caps) {
    if (!(cap >= 0.0 && cap <= 1.0)) throw InputError("harmonic power caps must lie in [0, 1]");
  }
  if (!(amplitude_mod_depth >= 0.0) || amplitude_mod_depth >= 1.0) {
    throw InputError("amplitude modulation depth must lie in [0, 1)");
  }
  if (!(drift_bandwidth_hz > 0.0)) throw InputError("drift bandwidth must be positive");
}

PliRealization synthesize_pli_detailed(double duration_s, double sample_rate_hz,
                                       const PliConfig& config) {
  config.validate();
  if (!(duration_s > 0.0)) throw InputError("duration must be positive");
  if (!(sample_rate_hz > 2.0 * kTones * config.fundamental_hz)) {
    throw InputError("sample rate must exceed twice the fifth harmonic (Nyquist)");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n == 0) throw InputError("duration is shorter than one sample");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  PliRealization out;
  std::array<double, kTones> amplitude{1.0};
  for (std::size_t h = 0; h < config.harmonic_power_caps.size(); ++h) {
    out.harmonic_power_fractions[h] = config.harmonic_power_caps[h] * unit(rng);
    amplitude[h + 1] = std::sqrt(out.harmonic_power_fractions[h]);
  }
  std::array<double, kTones> phase0{};
  for (double& p : phase0) p = 2.0 * std::numbers::pi * unit(rng);

  SlowProcess drift(config.drift_bandwidth_hz, sample_rate_hz, rng);
  SlowProcess envelope(config.drift_bandwidth_hz, sample_rate_hz, rng);

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> samples(n);
  out.instantaneous_hz.resize(n);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = config.fundamental_hz *
                     (1.0 + config.freq_tolerance_fraction * bounded(drift.next()));
    const double a = 1.0 + config.amplitude_mod_depth * bounded(envelope.next());
    double v = 0.0;
    for (int m = 0; m < kTones; ++m) {
      if (amplitude[m] == 0.0) continue;
      v += amplitude[m] * std::sin((m + 1) * phase + phase0[m]);
    }
    samples[i] = a * v;
    out.instantaneous_hz[i] = f;
    phase = std::fmod(phase + two_pi * f / sample_rate_hz, two_pi);
  }
  out.signal = Signal(std::move(samples), sample_rate_hz);
  return out;
}

Signal synthesize_pli(double duration_s, double sample_rate_hz, const PliConfig& config) {
  return synthesize_pli_detailed(duration_s, sample_rate_hz, config).signal;
}

double measured_sir_db(std::span<const double> clean, std::span<const double> interference) {
  return 10.0 * std::log10(signal_power(clean) / signal_power(interference));
}

MixResult mix_at_sir(const Signal& clean, const Signal& interference, SirLevelDb sir) {
  if (clean.size() != interference.size()) throw InputError("signal lengths differ");
  if (clean.sample_rate_hz() != interference.sample_rate_hz()) {
    throw InputError("sample rates differ");
  }
  const double pc = signal_power(clean);
  const double pi = signal_power(interference);
  if (!(pc > 0.0)) throw InputError("clean signal has zero power");
  if (!(pi > 0.0)) throw InputError("interference has zero power");

  const double scale = std::sqrt(pc / (pi * std::pow(10.0, sir.value() / 10.0)));
  std::vector<double> noisy(clean.size());
  for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] = clean[i] + scale * interference[i];
  return {Signal(std::move(noisy), clean.sample_rate_hz()), scale};
}

}  // namespace pliswt
