#pragma once

#include <cstdio>
#include <string>

namespace tslab {

/// Compact "%.4g" rendering for diagnostics.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace tslab
