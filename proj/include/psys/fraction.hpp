#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

namespace psys {

/// A count ratio kept exactly as computed (77/92 stays 77/92, 90/92 is not
/// reduced). Equality and ordering compare the rational values.
struct Fraction {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }

  Fraction reduced() const {
    const auto g = std::gcd(numerator, denominator);
    return g == 0 ? *this : Fraction{numerator / g, denominator / g};
  }

  std::string to_string() const { return std::to_string(numerator) + "/" + std::to_string(denominator); }

  /// "77/92 0.8370"
  std::string to_display(int digits = 4) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value());
    return to_string() + " " + buf;
  }

  /// Half-up rounding of the exact rational to `digits` decimals, returned as
  /// an integer count of 10^-digits units.
  std::int64_t rounded_units(int digits) const {
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const __int128 twice = static_cast<__int128>(2) * numerator * scale + denominator;
    return static_cast<std::int64_t>(twice / (static_cast<__int128>(2) * denominator));
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.numerator) * b.denominator ==
           static_cast<__int128>(b.numerator) * a.denominator;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.numerator) * b.denominator <
           static_cast<__int128>(b.numerator) * a.denominator;
  }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
  friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.to_string(); }
};

}  // namespace psys
