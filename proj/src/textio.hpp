#pragma once

#include <cstdio>
#include <string>

namespace ucirc {

/// Doubles are printed with 17 significant digits so that text output
/// round-trips exactly.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace ucirc
