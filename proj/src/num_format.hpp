#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

#include "stylometer/error.hpp"

namespace stylometer::detail {

// Shortest text that parses back to exactly `v`.
inline std::string round_trip(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::ModelFormat, "'" + std::string(s) + "' is not a number");
  }
  return v;
}

}  // namespace stylometer::detail
