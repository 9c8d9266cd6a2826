#include "pliswt/notch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pliswt {

void NotchConfig::validate(double sample_rate_hz) const {
  if (!(fundamental_hz > 0.0)) throw InputError("notch fundamental must be positive");
  if (num_harmonics < 1) throw InputError("num_harmonics must be >= 1");
  if (!(adaptation_rate > 0.0)) throw InputError("adaptation rate must be positive");
  if (!(notch_pole_radius > 0.0 && notch_pole_radius < 1.0)) {
    throw InputError("notch pole radius must lie in (0, 1)");
  }
  if (!(max_deviation_fraction >= 0.0 && max_deviation_fraction < 1.0)) {
    throw InputError("max deviation fraction must lie in [0, 1)");
  }
  if (!(power_smoothing > 0.0 && power_smoothing <= 1.0)) {
    throw InputError("power smoothing must lie in (0, 1]");
  }
  if (!(sample_rate_hz > 2.0 * num_harmonics * fundamental_hz)) {
    throw InputError("sample rate must exceed twice the highest notched harmonic (Nyquist)");
  }
}

AdaptiveNotch::AdaptiveNotch(const NotchConfig& config, double sample_rate_hz)
    : config_(config), fs_(sample_rate_hz) {
  config_.validate(fs_);
  const double to_rad = 2.0 * std::numbers::pi / fs_;
  omega_ = config_.fundamental_hz * to_rad;
  omega_min_ = omega_ * (1.0 - config_.max_deviation_fraction);
  // Highest harmonic must stay strictly below Nyquist.
  omega_max_ = std::min(omega_ * (1.0 + config_.max_deviation_fraction),
                        std::numbers::pi * (1.0 - 1e-6) / config_.num_harmonics);
  sections_.resize(static_cast<std::size_t>(config_.num_harmonics));
}

double AdaptiveNotch::frequency_hz() const noexcept {
  return omega_ * fs_ / (2.0 * std::numbers::pi);
}

double AdaptiveNotch::process(double x) {
  const double r = config_.notch_pole_radius;
  const double r2 = r * r;
  const double q = 1.0 + r2;

  double u = x;
  double gradient = 0.0;  // d(output)/d(omega)
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    Section& sec = sections_[i];
    const double m = static_cast<double>(i + 1);
    const double c = std::cos(m * omega_);
    // y = q/2 (u - 2c u1 + u2) + q c y1 - r^2 y2
    const double y = 0.5 * q * (u - 2.0 * c * sec.u1 + sec.u2) + q * c * sec.y1 - r2 * sec.y2;
    // dy/dc, with this section's input treated as independent of c
    const double s = q * (sec.y1 - sec.u1) + q * c * sec.s1 - r2 * sec.s2;
    gradient += -m * std::sin(m * omega_) * s;

    sec.u2 = sec.u1;
    sec.u1 = u;
    sec.y2 = sec.y1;
    sec.y1 = y;
    sec.s2 = sec.s1;
    sec.s1 = s;
    u = y;
  }

  ++count_;
  const double beta = std::max(config_.power_smoothing, 1.0 / static_cast<double>(count_));
  grad_power_ = (1.0 - beta) * grad_power_ + beta * gradient * gradient;
  if (grad_power_ > 0.0) {
    omega_ -= config_.adaptation_rate * u * gradient / grad_power_;
    omega_ = std::clamp(omega_, omega_min_, omega_max_);
  }
  return u;
}

std::vector<std::complex<double>> AdaptiveNotch::section_poles(int m) const {
  const double r = config_.notch_pole_radius;
  const double b = (1.0 + r * r) * std::cos(m * omega_);
  // z^2 - b z + r^2 = 0
  const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4.0 * r * r, 0.0));
  return {(b + disc) / 2.0, (b - disc) / 2.0};
}

NotchTrace adaptive_notch_traced(const Signal& s, const NotchConfig& config) {
  AdaptiveNotch filter(config, s.sample_rate_hz());
  std::vector<double> out(s.size());
  std::vector<double> track(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = filter.process(s[i]);
    track[i] = filter.frequency_hz();
  }
  return {Signal(std::move(out), s.sample_rate_hz()), std::move(track)};
}

Signal adaptive_notch(const Signal& s, const NotchConfig& config) {
  return adaptive_notch_traced(s, config).output;
}

}  // namespace pliswt
