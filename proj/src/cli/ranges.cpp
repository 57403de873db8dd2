#include "palmpat/cli/ranges.hpp"

#include <charconv>
#include <cmath>

namespace palmpat::cli {

namespace {

constexpr double kRangeTolerance = 1e-9;
constexpr std::size_t kMaxRangeLength = 1'000'000;

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<double> split_numbers(std::string_view text, char sep) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(parse_double(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double snap(double v) {
  const double snapped = std::round(v * 1e12) / 1e12;
  return std::abs(snapped - v) <= 1e-12 * std::max(1.0, std::abs(v)) ? snapped : v;
}

}  // namespace

std::vector<double> parse_value_list(std::string_view text) {
  if (text.find(':') == std::string_view::npos) return split_numbers(text, ',');
  const auto parts = split_numbers(text, ':');
  if (parts.size() != 3) throw UsageError("range must be start:stop:step, got '" + std::string(text) + "'");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0)) throw UsageError("range step must be positive");
  if (stop < start) throw UsageError("range stop must not be below start");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v > stop + kRangeTolerance) break;
    if (out.size() >= kMaxRangeLength) throw UsageError("range has too many members");
    out.push_back(snap(v));
  }
  return out;
}

Window parse_window(std::string_view text) {
  const auto v = split_numbers(text, ',');
  if (v.size() != 4) throw UsageError("window must be x_min,y_min,x_max,y_max");
  Window w{v[0], v[1], v[2], v[3]};
  try {
    validate(w);
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
  return w;
}

Point parse_point(std::string_view text) {
  const auto v = split_numbers(text, ',');
  if (v.size() != 2) throw UsageError("point must be x,y");
  return {v[0], v[1]};
}

}  // namespace palmpat::cli
