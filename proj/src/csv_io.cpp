#include "pliswt/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

namespace pliswt {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
  double v = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

Signal load_signal_csv(const std::filesystem::path& path, std::optional<double> sample_rate_hz) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError(CsvError::Kind::missing_file, "cannot open " + path.string());
  }
  std::vector<double> samples;
  std::optional<double> header_rate;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const auto body = trim(text.substr(1));
      constexpr std::string_view key = "sample_rate_hz=";
      if (body.starts_with(key)) header_rate = parse_double(trim(body.substr(key.size())));
      continue;
    }
    const auto value = parse_double(text);
    if (!value) {
      throw CsvError(CsvError::Kind::malformed_row,
                     path.string() + ": row " + std::to_string(row) + ": malformed value '" +
                         std::string(text) + "'",
                     row);
    }
    if (!std::isfinite(*value)) {
      throw CsvError(CsvError::Kind::non_finite,
                     path.string() + ": row " + std::to_string(row) + ": non-finite sample", row);
    }
    samples.push_back(*value);
  }
  if (samples.empty()) throw CsvError(CsvError::Kind::empty, "empty signal: " + path.string());

  const auto rate = sample_rate_hz ? sample_rate_hz : header_rate;
  if (!rate) {
    throw CsvError(CsvError::Kind::missing_rate,
                   path.string() + ": no sample rate given and no '# sample_rate_hz=' header");
  }
  return Signal(std::move(samples), *rate);
}

void save_signal_csv(const std::filesystem::path& path, const Signal& s) {
  std::ofstream out(path);
  if (!out) throw CsvError(CsvError::Kind::io, "cannot write " + path.string());
  out << "# sample_rate_hz=" << format_double(s.sample_rate_hz()) << '\n';
  for (double v : s.samples()) out << format_double(v) << '\n';
  if (!out) throw CsvError(CsvError::Kind::io, "write failed: " + path.string());
}

}  // namespace pliswt
