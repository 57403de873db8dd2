#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "palmpat/geometry.hpp"

namespace palmpat::cli {

/// Malformed or out-of-range command-line values (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `start:stop:step` (inclusive of stop within 1e-9), a comma list, or
/// a single value. Range members are start + i*step snapped to 1e-12 so that
/// e.g. 0.3:0.7:0.05 yields 0.35 rather than 0.35000000000000003.
std::vector<double> parse_value_list(std::string_view text);

/// `x_min,y_min,x_max,y_max`.
Window parse_window(std::string_view text);

/// `x,y`.
Point parse_point(std::string_view text);

}  // namespace palmpat::cli
