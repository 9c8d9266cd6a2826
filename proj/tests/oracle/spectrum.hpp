#pragma once

// Test-only spectral oracles. Nothing here shares code with the library's
// filters or transforms.

#include <complex>
#include <span>
#include <vector>

namespace oracle {

struct Spectrum {
  double bin_hz = 0.0;
  std::vector<double> power;  ///< one-sided; sums to the mean square of the input
};

Spectrum power_spectrum(std::span<const double> x, double fs);

/// Sum of spectrum bins whose centre lies in [lo_hz, hi_hz].
double band_power(const Spectrum& s, double lo_hz, double hi_hz);

/// Analytic signal restricted to [lo_hz, hi_hz] (brick-wall in frequency).
std::vector<std::complex<double>> band_analytic(std::span<const double> x, double fs, double lo_hz,
                                                double hi_hz);

/// Frequency of the phase increment between consecutive analytic samples.
std::vector<double> phase_derivative_hz(const std::vector<std::complex<double>>& z, double fs);

/// Direct evaluation of sum_k taps[k] e^{-i omega k}.
std::complex<double> frequency_response(std::span<const double> taps, double omega);

}  // namespace oracle
