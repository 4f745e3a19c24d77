#pragma once

#include <cstdio>
#include <string>

namespace dirichlet {

/// 17 significant digits: enough for any double to round-trip.
inline std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace dirichlet
