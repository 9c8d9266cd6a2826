#include "pliswt/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pliswt {
namespace {

constexpr double kStopbandDb = 80.0;

double kaiser_beta(double attenuation_db) { return 0.1102 * (attenuation_db - 8.7); }

// Index into a whole-sample symmetric extension of [0, n).
std::size_t reflect(std::int64_t i, std::int64_t n) {
  if (n == 1) return 0;
  const std::int64_t period = 2 * (n - 1);
  std::int64_t k = i % period;
  if (k < 0) k += period;
  return static_cast<std::size_t>(k < n ? k : period - k);
}

}  // namespace

ResampleSpec ResampleSpec::from_rates(double source_hz, double target_hz, int filter_half_taps,
                                      std::int64_t max_term) {
  if (!(source_hz > 0.0) || !(target_hz > 0.0) || !std::isfinite(source_hz) ||
      !std::isfinite(target_hz)) {
    throw InputError("sample rates must be positive and finite");
  }
  if (filter_half_taps < 1) throw InputError("filter_half_taps must be >= 1");
  const double ratio = target_hz / source_hz;
  for (std::int64_t down = 1; down <= max_term; ++down) {
    const double up_real = ratio * static_cast<double>(down);
    const auto up = static_cast<std::int64_t>(std::llround(up_real));
    if (up < 1 || up > max_term) continue;
    if (std::abs(static_cast<double>(up) - up_real) <= 1e-12 * up_real) {
      const std::int64_t g = std::gcd(up, down);
      return ResampleSpec{source_hz, target_hz, up / g, down / g, filter_half_taps};
    }
  }
  throw InputError("resampling ratio is not a rational number with small terms");
}

std::vector<double> ResampleSpec::prototype_filter() const {
  // Sinc zero-crossing spacing, in samples of the upsampled stream.
  const auto spacing = static_cast<double>(std::max(up, down));
  const auto half = static_cast<std::int64_t>(filter_half_taps) * std::max(up, down);
  const double beta = kaiser_beta(kStopbandDb);
  const double norm = std::cyl_bessel_i(0.0, beta);

  std::vector<double> h(static_cast<std::size_t>(2 * half + 1));
  for (std::int64_t k = -half; k <= half; ++k) {
    const double t = static_cast<double>(k) / spacing;
    const double sinc = k == 0 ? 1.0 : std::sin(std::numbers::pi * t) / (std::numbers::pi * t);
    const double ratio = static_cast<double>(k) / static_cast<double>(half);
    const double window = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(0.0, 1.0 - ratio * ratio))) / norm;
    h[static_cast<std::size_t>(k + half)] = sinc * window;
  }
  const double sum = std::accumulate(h.begin(), h.end(), 0.0);
  for (double& v : h) v *= static_cast<double>(up) / sum;
  return h;
}

Signal resample(const Signal& s, double target_hz, int filter_half_taps) {
  require_non_empty(s.samples(), "empty signal");
  const auto spec = ResampleSpec::from_rates(s.sample_rate_hz(), target_hz, filter_half_taps);
  if (spec.up == 1 && spec.down == 1) return Signal({s.samples().begin(), s.samples().end()}, target_hz);

  const auto h = spec.prototype_filter();
  const auto half = static_cast<std::int64_t>(h.size() / 2);
  const auto n_in = static_cast<std::int64_t>(s.size());
  const std::int64_t n_out = (n_in * spec.up + spec.down - 1) / spec.down;
  const auto x = s.samples();

  std::vector<double> y(static_cast<std::size_t>(n_out));
  for (std::int64_t m = 0; m < n_out; ++m) {
    const std::int64_t t = m * spec.down;  // position on the upsampled grid
    // Input samples n with |t - n * up| <= half.
    const std::int64_t first = (t - half + spec.up - 1 + half * spec.up) / spec.up - half;
    const std::int64_t last = (t + half) / spec.up;
    double acc = 0.0;
    for (std::int64_t n = first; n <= last; ++n) {
      acc += x[reflect(n, n_in)] * h[static_cast<std::size_t>(t - n * spec.up + half)];
    }
    y[static_cast<std::size_t>(m)] = acc;
  }
  return Signal(std::move(y), target_hz);
}

}  // namespace pliswt
