#pragma once

// Internal second-order sections (RBJ bilinear-transform designs).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace pliswt::detail {

struct Biquad {
  double b0, b1, b2, a1, a2;

  static Biquad lowpass(double cutoff_hz, double fs, double q) {
    const double w = 2.0 * std::numbers::pi * cutoff_hz / fs;
    const double alpha = std::sin(w) / (2.0 * q);
    const double c = std::cos(w);
    const double a0 = 1.0 + alpha;
    return {(1.0 - c) / 2.0 / a0, (1.0 - c) / a0, (1.0 - c) / 2.0 / a0, -2.0 * c / a0,
            (1.0 - alpha) / a0};
  }

  static Biquad highpass(double cutoff_hz, double fs, double q) {
    const double w = 2.0 * std::numbers::pi * cutoff_hz / fs;
    const double alpha = std::sin(w) / (2.0 * q);
    const double c = std::cos(w);
    const double a0 = 1.0 + alpha;
    return {(1.0 + c) / 2.0 / a0, -(1.0 + c) / a0, (1.0 + c) / 2.0 / a0, -2.0 * c / a0,
            (1.0 - alpha) / a0};
  }

  double dc_gain() const { return (b0 + b1 + b2) / (1.0 + a1 + a2); }

  // Direct form I in place, starting in the steady state of a constant
  // input equal to x[0] (no start-up step).
  void run(std::vector<double>& x) const {
    if (x.empty()) return;
    double x1 = x[0], x2 = x[0];
    double y1 = dc_gain() * x[0], y2 = y1;
    for (double& v : x) {
      const double y = b0 * v + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
      x2 = x1;
      x1 = v;
      y2 = y1;
      y1 = y;
      v = y;
    }
  }
};

/// Butterworth section Qs for an even order.
inline std::vector<double> butterworth_qs(int order) {
  std::vector<double> qs;
  for (int k = 0; k < order / 2; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + 1.0) / (2.0 * order);
    qs.push_back(1.0 / (2.0 * std::cos(theta)));
  }
  return qs;
}

/// Forward-backward cascade with odd reflection padding at both ends.
inline std::vector<double> filtfilt(std::span<const double> x, std::span<const Biquad> sections,
                                    std::size_t pad) {
  const std::size_t n = x.size();
  pad = std::min(pad, n > 0 ? n - 1 : 0);
  std::vector<double> buf;
  buf.reserve(n + 2 * pad);
  for (std::size_t i = pad; i >= 1; --i) buf.push_back(2.0 * x[0] - x[i]);
  buf.insert(buf.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) buf.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

  for (const auto& s : sections) s.run(buf);
  std::reverse(buf.begin(), buf.end());
  for (const auto& s : sections) s.run(buf);
  std::reverse(buf.begin(), buf.end());
  return {buf.begin() + static_cast<std::ptrdiff_t>(pad),
          buf.begin() + static_cast<std::ptrdiff_t>(pad + n)};
}

}  // namespace pliswt::detail
