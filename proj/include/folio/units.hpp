#pragma once

#include <cmath>
#include <string>

#include <fmt/format.h>

namespace folio {

inline constexpr double kMmPerPt = 25.4 / 72.0;

constexpr double pt_to_mm(double pt) { return pt * kMmPerPt; }
constexpr double mm_to_pt(double mm) { return mm / kMmPerPt; }

/// Rounds to the nearest multiple of `step`.
inline double quantize(double value, double step) { return std::round(value / step) * step; }

/// Shortest decimal form with at most three fractional digits ("13.7", "12", "97.5").
inline std::string format_number(double value) {
  std::string s = fmt::format("{:.3f}", value);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace folio
