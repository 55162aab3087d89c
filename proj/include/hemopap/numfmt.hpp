#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace hemopap {

// Shortest decimal form that round-trips the exact double (scenario files).
inline std::string fmt_shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Fixed 12-significant-digit form (CSV and reports).
inline std::string fmt_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace hemopap
