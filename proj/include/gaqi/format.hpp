#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace gaqi {

// Locale-independent, 15 significant digits.
inline std::string fmt(double v) {
  if (v == 0) return "0";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  if (r.ec != std::errc{}) return "nan";
  return std::string(buf, r.ptr);
}

// Values within tol of zero print as 0.
inline std::string fmt(double v, double tol) { return fmt(std::abs(v) <= tol ? 0.0 : v); }

}  // namespace gaqi
