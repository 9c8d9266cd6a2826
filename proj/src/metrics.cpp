#include "pliswt/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace pliswt {

double asci_tolerance(const Signal& x) { return 0.05 * population_std(x); }

AsciReport asci(const Signal& x, const Signal& x_hat, std::optional<double> xi_override,
                std::size_t excluded_prefix_samples) {
  require_non_empty(x.samples(), "empty signal");
  if (x.size() != x_hat.size()) throw InputError("signal lengths differ");
  if (x.sample_rate_hz() != x_hat.sample_rate_hz()) throw InputError("sample rates differ");
  if (excluded_prefix_samples >= x.size()) {
    throw InputError("excluded prefix leaves no samples to score");
  }
  const double xi = xi_override ? *xi_override : asci_tolerance(x);
  if (!(xi >= 0.0) || !std::isfinite(xi)) throw InputError("xi must be a finite non-negative value");

  AsciReport report{.value = 0.0,
                    .xi = xi,
                    .agreement = std::vector<bool>(x.size()),
                    .excluded_prefix_samples = excluded_prefix_samples};
  std::size_t matches = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool agree = std::abs(x[i] - x_hat[i]) <= xi;
    report.agreement[i] = agree;
    if (i >= excluded_prefix_samples && agree) ++matches;
  }
  const std::size_t scored = report.scored_length();
  const auto mismatches = static_cast<double>(scored - matches);
  report.value = (static_cast<double>(matches) - mismatches) / static_cast<double>(scored);
  return report;
}

std::vector<double> asci_windows(const AsciReport& report, std::size_t window) {
  if (window == 0) throw InputError("window must be positive");
  std::vector<double> out;
  const std::size_t n = report.agreement.size();
  for (std::size_t start = report.excluded_prefix_samples; start < n; start += window) {
    const std::size_t end = std::min(n, start + window);
    long long acc = 0;
    for (std::size_t i = start; i < end; ++i) acc += report.agreement[i] ? 1 : -1;
    out.push_back(static_cast<double>(acc) / static_cast<double>(end - start));
  }
  return out;
}

}  // namespace pliswt
