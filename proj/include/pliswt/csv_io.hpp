#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "pliswt/signal.hpp"

namespace pliswt {

class CsvError : public InputError {
public:
  enum class Kind { missing_file, malformed_row, non_finite, empty, missing_rate, io };

  CsvError(Kind kind, const std::string& what, std::size_t row = 0)
      : InputError(what), kind_(kind), row_(row) {}

  Kind kind() const noexcept { return kind_; }
  /// 1-based line number for row errors, 0 otherwise.
  std::size_t row() const noexcept { return row_; }

private:
  Kind kind_;
  std::size_t row_;
};

/**
 * Single-column decimal CSV, one sample per line. Lines starting with '#'
 * are comments; a comment of the form "# sample_rate_hz=<value>" supplies
 * the rate when the caller does not. Blank lines are ignored.
 */
Signal load_signal_csv(const std::filesystem::path& path,
                       std::optional<double> sample_rate_hz = std::nullopt);

/// Writes the rate comment and every sample with 17 significant digits.
void save_signal_csv(const std::filesystem::path& path, const Signal& s);

/// Shortest-safe round-trip text for a double (17 significant digits).
std::string format_double(double v);

}  // namespace pliswt
