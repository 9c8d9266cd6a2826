#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

/// Adaptive signed correlation index between a reference and an estimate.
struct AsciReport {
  double value = 0.0;      ///< in [-1, 1]
  double xi = 0.0;         ///< agreement tolerance, same unit as the samples
  std::vector<bool> agreement;  ///< |x - x_hat| <= xi, one flag per sample
  std::size_t excluded_prefix_samples = 0;

  std::size_t scored_length() const noexcept { return agreement.size() - excluded_prefix_samples; }
};

/**
 * Mean of +1 (|x - x_hat| <= xi) / -1 (otherwise) over the samples after the
 * excluded prefix. Without an override xi is 5% of the population standard
 * deviation of the reference x, taken over the whole record.
 */
AsciReport asci(const Signal& x, const Signal& x_hat, std::optional<double> xi_override = {},
                std::size_t excluded_prefix_samples = 0);

/// Default tolerance: 0.05 * population_std(x).
double asci_tolerance(const Signal& x);

/// ASCI over consecutive windows of `window` scored samples, using the
/// report's agreement flags (a trailing partial window is included).
std::vector<double> asci_windows(const AsciReport& report, std::size_t window);

}  // namespace pliswt
