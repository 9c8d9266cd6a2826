#include "pliswt/swt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pliswt {
namespace {

std::ptrdiff_t energy_centroid(const std::vector<double>& taps) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < taps.size(); ++k) {
    num += static_cast<double>(k) * taps[k] * taps[k];
    den += taps[k] * taps[k];
  }
  return static_cast<std::ptrdiff_t>(std::lround(num / den));
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// out[n] += gain * in[(n + offset) mod N], split into two contiguous runs.
void accumulate_shifted(std::vector<double>& out, const std::vector<double>& in, double gain,
                        std::size_t offset) {
  const std::size_t n = in.size();
  const std::size_t head = n - offset;
  for (std::size_t i = 0; i < head; ++i) out[i] += gain * in[i + offset];
  for (std::size_t i = head; i < n; ++i) out[i] += gain * in[i - head];
}

// y[n] = sum_k f[k] x[n - (k - delay) * step]   (periodic)
std::vector<double> dilated_filter(const std::vector<double>& x, const std::vector<double>& f,
                                   std::ptrdiff_t delay, std::size_t step) {
  std::vector<double> y(x.size(), 0.0);
  const auto s = static_cast<std::ptrdiff_t>(step);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto shift = -(static_cast<std::ptrdiff_t>(k) - delay) * s;
    accumulate_shifted(y, x, f[k], wrap(shift, x.size()));
  }
  return y;
}

// Adjoint of dilated_filter: x[m] += sum_k f[k] y[m + (k - delay) * step].
void dilated_filter_adjoint(std::vector<double>& out, const std::vector<double>& y,
                            const std::vector<double>& f, std::ptrdiff_t delay, std::size_t step) {
  const auto s = static_cast<std::ptrdiff_t>(step);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto shift = (static_cast<std::ptrdiff_t>(k) - delay) * s;
    accumulate_shifted(out, y, f[k], wrap(shift, y.size()));
  }
}

}  // namespace

WaveletFilterPair::WaveletFilterPair(std::string name, std::vector<double> lowpass)
    : name_(std::move(name)), lowpass_(std::move(lowpass)) {
  const std::size_t n = lowpass_.size();
  if (n < 2 || n % 2 != 0) throw InputError("wavelet filter length must be even and >= 2");
  highpass_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    highpass_[k] = sign * lowpass_[n - 1 - k];
  }
  const double lo_sum = std::accumulate(lowpass_.begin(), lowpass_.end(), 0.0);
  const double hi_sum = std::accumulate(highpass_.begin(), highpass_.end(), 0.0);
  if (std::abs(lo_sum - std::sqrt(2.0)) > 1e-12) {
    throw InputError("lowpass taps must sum to sqrt(2)");
  }
  if (std::abs(hi_sum) > 1e-12) throw InputError("highpass taps must sum to zero");
  lowpass_delay_ = energy_centroid(lowpass_);
  highpass_delay_ = energy_centroid(highpass_);
}

std::size_t swt_min_length(std::size_t filter_length, int levels) {
  if (levels < 1) throw InputError("levels must be >= 1");
  return (filter_length - 1) * ((std::size_t{1} << levels) - 1) + 1;
}

WaveletDecomposition swt_forward(const Signal& s, int levels, const WaveletFilterPair& filter) {
  if (levels < 1) throw InputError("levels must be >= 1");
  if (levels > 30) throw InputError("levels must be <= 30");
  require_non_empty(s.samples(), "empty signal");
  const std::size_t need = swt_min_length(filter.length(), levels);
  if (s.size() < need) {
    throw InputError("signal of " + std::to_string(s.size()) + " samples is shorter than the " +
                     std::to_string(need) + "-sample support of a " + std::to_string(levels) +
                     "-level " + filter.name() + " decomposition");
  }

  WaveletDecomposition out{.details = {},
                           .approximation = {s.samples().begin(), s.samples().end()},
                           .filter = filter,
                           .original_length = s.size(),
                           .sample_rate_hz = s.sample_rate_hz()};
  out.details.reserve(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j) {
    const std::size_t step = std::size_t{1} << j;
    out.details.push_back(
        dilated_filter(out.approximation, filter.highpass(), filter.highpass_delay(), step));
    out.approximation =
        dilated_filter(out.approximation, filter.lowpass(), filter.lowpass_delay(), step);
  }
  return out;
}

Signal swt_inverse(const WaveletDecomposition& d) {
  const std::size_t n = d.original_length;
  if (d.details.empty()) throw InputError("decomposition has no detail bands");
  if (d.approximation.size() != n) throw InputError("approximation band length mismatch");
  for (const auto& band : d.details) {
    if (band.size() != n) throw InputError("detail band length mismatch");
  }

  // H^T H + G^T G = 2 I for any periodic length, so each level inverts as
  // the averaged adjoint.
  std::vector<double> approx = d.approximation;
  const auto& f = d.filter;
  for (int j = d.levels() - 1; j >= 0; --j) {
    const std::size_t step = std::size_t{1} << j;
    std::vector<double> prev(n, 0.0);
    dilated_filter_adjoint(prev, approx, f.lowpass(), f.lowpass_delay(), step);
    dilated_filter_adjoint(prev, d.details[static_cast<std::size_t>(j)], f.highpass(),
                           f.highpass_delay(), step);
    for (double& v : prev) v *= 0.5;
    approx = std::move(prev);
  }
  return Signal(std::move(approx), d.sample_rate_hz);
}

}  // namespace pliswt
