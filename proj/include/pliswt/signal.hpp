#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pliswt {

/// Raised for any precondition violation on user-supplied data or settings.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Uniformly sampled single-lead waveform, amplitudes in millivolts.
 *
 * Immutable once built. Construction rejects a non-positive rate and
 * non-finite samples; emptiness is checked by the operations that consume
 * a signal, not here.
 */
class Signal {
public:
  Signal() = default;
  Signal(std::vector<double> samples, double sample_rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double operator[](std::size_t i) const noexcept { return samples_[i]; }

  /// Duration in seconds.
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

  friend bool operator==(const Signal&, const Signal&) = default;

private:
  std::vector<double> samples_;
  double sample_rate_hz_ = 1.0;
};

/// Signal-to-interference ratio in decibels.
class SirLevelDb {
public:
  explicit SirLevelDb(double value);
  double value() const noexcept { return value_; }

private:
  double value_;
};

/// Mean squared amplitude (mV^2).
double signal_power(const Signal& s);
double signal_power(std::span<const double> s);

double mean(std::span<const double> s);

/// Standard deviation with the population convention (divide by L).
double population_std(const Signal& s);
double population_std(std::span<const double> s);

/// Throws InputError(what) when s is empty.
void require_non_empty(std::span<const double> s, const std::string& what);

}  // namespace pliswt
