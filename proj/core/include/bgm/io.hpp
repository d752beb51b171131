// Small I/O helpers shared by the CSV writers and the CLI.

#pragma once

#include <cstdio>
#include <string>

namespace bgm {

// Render a double with 17 significant digits (round-trip exact), '.' decimal.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace bgm
