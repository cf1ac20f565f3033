#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace bilocal {

inline constexpr int kPrintDigits = 12;

/// Locale-independent shortest `%g`-style rendering with `digits`
/// significant digits.
inline std::string format_number(double value, int digits = kPrintDigits) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
  return std::string(buf.data(), res.ptr);
}

/// Round to `digits` significant digits, so that a shortest-round-trip
/// printer (nlohmann::json) emits at most that many.
inline double round_significant(double value, int digits = kPrintDigits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  const std::string text = format_number(value, digits);
  double out = value;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace bilocal
