#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

/**
 * Orthogonal two-channel analysis filter pair.
 *
 * The highpass is always derived from the lowpass through the quadrature
 * mirror relation highpass[k] = (-1)^k lowpass[N-1-k], so a pair cannot be
 * built inconsistent.
 */
class WaveletFilterPair {
public:
  /// Validates length (even, >= 2), sum(lowpass) == sqrt(2) and
  /// sum(highpass) == 0, both within 1e-12.
  WaveletFilterPair(std::string name, std::vector<double> lowpass);

  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& lowpass() const noexcept { return lowpass_; }
  const std::vector<double>& highpass() const noexcept { return highpass_; }
  std::size_t length() const noexcept { return lowpass_.size(); }

  /// Tap offsets that centre each filter on its energy centroid.
  std::ptrdiff_t lowpass_delay() const noexcept { return lowpass_delay_; }
  std::ptrdiff_t highpass_delay() const noexcept { return highpass_delay_; }

private:
  std::string name_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
  std::ptrdiff_t lowpass_delay_ = 0;
  std::ptrdiff_t highpass_delay_ = 0;
};

/// Extremal-phase Daubechies pair with `order` vanishing moments
/// (2 * order taps). Orders 1..10 are tabulated; order 6 is db6.
WaveletFilterPair daubechies_filters(int order);

/// Number of input samples spanned by the level-`levels` dilated filter.
std::size_t swt_min_length(std::size_t filter_length, int levels);

/// Undecimated decomposition: every band has the input length.
struct WaveletDecomposition {
  std::vector<std::vector<double>> details;  ///< details[j-1] is scale j
  std::vector<double> approximation;         ///< final lowpass band
  WaveletFilterPair filter;
  std::size_t original_length = 0;
  double sample_rate_hz = 1.0;

  int levels() const noexcept { return static_cast<int>(details.size()); }
};

/// Stationary (a trous) wavelet transform with periodic extension.
/// At level j the filters are dilated by 2^(j-1); nothing is downsampled.
WaveletDecomposition swt_forward(const Signal& s, int levels, const WaveletFilterPair& filter);

/// Exact inverse of swt_forward for unmodified coefficients; linear in the
/// bands otherwise.
Signal swt_inverse(const WaveletDecomposition& d);

}  // namespace pliswt
