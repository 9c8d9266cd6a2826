#pragma once

#include <complex>
#include <vector>

#include "pliswt/signal.hpp"

namespace pliswt {

struct NotchConfig {
  double fundamental_hz = 50.0;
  int num_harmonics = 5;  ///< fundamental plus four harmonics
  /// Normalized-gradient step: relative correction per sample, so the
  /// frequency estimate settles with a time constant of ~1/rate samples.
  double adaptation_rate = 1e-3;
  double notch_pole_radius = 0.985;
  /// Estimate is confined to fundamental_hz * (1 +- this).
  double max_deviation_fraction = 0.05;
  /// Forgetting factor of the gradient power estimate.
  double power_smoothing = 1e-3;

  void validate(double sample_rate_hz) const;
};

/**
 * Cascade of second-order allpass-based notches, one per harmonic, all
 * locked to a single adapted fundamental estimate (harmonic m sits at m
 * times the estimate).
 *
 * Each section is H(z) = (1 + A(z)) / 2 with A a second-order allpass, so
 * the poles have radius r for every notch angle and the gain at DC is
 * exactly one. The estimate follows a normalized stochastic gradient that
 * minimizes output power.
 */
class AdaptiveNotch {
public:
  AdaptiveNotch(const NotchConfig& config, double sample_rate_hz);

  double process(double x);

  double frequency_hz() const noexcept;

  /// Denominator roots of section m (1-based) at the current estimate.
  std::vector<std::complex<double>> section_poles(int m) const;

private:
  struct Section {
    double u1 = 0, u2 = 0, y1 = 0, y2 = 0;  // filter memory
    double s1 = 0, s2 = 0;                  // sensitivity memory
  };

  NotchConfig config_;
  double fs_;
  double omega_;  // rad/sample
  double omega_min_, omega_max_;
  double grad_power_ = 0.0;
  long long count_ = 0;
  std::vector<Section> sections_;
};

struct NotchTrace {
  Signal output;
  std::vector<double> frequency_hz;  ///< estimate after each sample
};

Signal adaptive_notch(const Signal& s, const NotchConfig& config = {});

NotchTrace adaptive_notch_traced(const Signal& s, const NotchConfig& config = {});

}  // namespace pliswt
