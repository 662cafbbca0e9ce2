#pragma once

// Number formatting for CSV artifacts: shortest-faithful decimal at a
// configurable significant-digit count, LF line endings.

#include <cstdio>
#include <string>

namespace chainlab {

inline std::string format_double(double x, int significant_digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, x);
  return buf;
}

}  // namespace chainlab
