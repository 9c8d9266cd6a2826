#include "pliswt/signal.hpp"

#include <cmath>
#include <numeric>

namespace pliswt {

Signal::Signal(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw InputError("sample rate must be a positive finite number");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw InputError("non-finite sample at index " + std::to_string(i));
    }
  }
}

SirLevelDb::SirLevelDb(double value) : value_(value) {
  if (!std::isfinite(value)) throw InputError("SIR must be finite");
}

void require_non_empty(std::span<const double> s, const std::string& what) {
  if (s.empty()) throw InputError(what);
}

double signal_power(std::span<const double> s) {
  require_non_empty(s, "empty signal");
  const double sum_sq = std::transform_reduce(s.begin(), s.end(), s.begin(), 0.0);
  return sum_sq / static_cast<double>(s.size());
}

double signal_power(const Signal& s) { return signal_power(s.samples()); }

double mean(std::span<const double> s) {
  require_non_empty(s, "empty signal");
  return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
}

double population_std(std::span<const double> s) {
  const double mu = mean(s);
  double acc = 0.0;
  for (double v : s) acc += (v - mu) * (v - mu);
  return std::sqrt(acc / static_cast<double>(s.size()));
}

double population_std(const Signal& s) { return population_std(s.samples()); }

}  // namespace pliswt
