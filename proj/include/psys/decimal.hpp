#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "psys/error.hpp"

namespace psys {

/// Exact base-10 number: mantissa * 10^-scale, stored normalized (no trailing
/// fractional zeros) so that equal values have equal representations.
class Decimal {
 public:
  static constexpr int max_scale = 18;

  constexpr Decimal() = default;
  constexpr Decimal(std::int64_t integer) : mantissa_(integer) {}

  static Decimal from_parts(std::int64_t mantissa, int scale) {
    if (scale < 0 || scale > max_scale) {
      throw Error(ErrorCode::invalid_argument, "decimal scale out of range");
    }
    Decimal d;
    d.mantissa_ = mantissa;
    d.scale_ = scale;
    d.normalize();
    return d;
  }

  /// Accepts `[+-]digits[.digits]` or `[+-].digits`; nothing else.
  static Decimal parse(std::string_view text) {
    auto fail = [&] { throw Error(ErrorCode::invalid_argument, "not a decimal: '" + std::string(text) + "'"); };
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      negative = text[i] == '-';
      ++i;
    }
    __int128 mantissa = 0;
    int scale = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '.') {
        if (seen_point) fail();
        seen_point = true;
        continue;
      }
      if (c < '0' || c > '9') fail();
      seen_digit = true;
      if (seen_point) {
        if (scale == max_scale) {
          if (c != '0') fail();
          continue;
        }
        ++scale;
      }
      mantissa = mantissa * 10 + (c - '0');
      if (mantissa > std::numeric_limits<std::int64_t>::max()) fail();
    }
    if (!seen_digit) fail();
    return from_parts(static_cast<std::int64_t>(negative ? -mantissa : mantissa), scale);
  }

  std::int64_t mantissa() const noexcept { return mantissa_; }
  int scale() const noexcept { return scale_; }

  double to_double() const { return static_cast<double>(mantissa_) / pow10(scale_); }

  std::string to_string() const {
    const bool negative = mantissa_ < 0;
    const __int128 magnitude = negative ? -static_cast<__int128>(mantissa_) : mantissa_;
    std::string digits = std::to_string(static_cast<unsigned long long>(magnitude));
    if (scale_ > 0) {
      if (digits.size() <= static_cast<std::size_t>(scale_)) {
        digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
      }
      digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
    }
    return negative ? "-" + digits : digits;
  }

  Decimal operator-() const { return from_wide(-static_cast<__int128>(mantissa_), scale_); }

  friend Decimal operator+(const Decimal& a, const Decimal& b) {
    const int s = std::max(a.scale_, b.scale_);
    return from_wide(a.widened(s) + b.widened(s), s);
  }
  friend Decimal operator-(const Decimal& a, const Decimal& b) { return a + (-b); }
  friend Decimal operator*(const Decimal& a, const Decimal& b) {
    __int128 m = static_cast<__int128>(a.mantissa_) * b.mantissa_;
    int s = a.scale_ + b.scale_;
    while (s > max_scale) {
      if (m % 10 != 0) throw Error(ErrorCode::invalid_argument, "decimal product exceeds precision");
      m /= 10;
      --s;
    }
    return from_wide(m, s);
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.mantissa_ == b.mantissa_ && a.scale_ == b.scale_;
  }
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    const int s = std::max(a.scale_, b.scale_);
    const __int128 x = a.widened(s);
    const __int128 y = b.widened(s);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Decimal& d) { return os << d.to_string(); }

 private:
  static constexpr double pow10(int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= 10.0;
    return p;
  }

  static __int128 ipow10(int k) {
    __int128 p = 1;
    for (int i = 0; i < k; ++i) p *= 10;
    return p;
  }

  __int128 widened(int scale) const { return static_cast<__int128>(mantissa_) * ipow10(scale - scale_); }

  static Decimal from_wide(__int128 m, int scale) {
    while (scale > 0 && m % 10 == 0) {
      m /= 10;
      --scale;
    }
    if (m > std::numeric_limits<std::int64_t>::max() || m < std::numeric_limits<std::int64_t>::min()) {
      throw Error(ErrorCode::invalid_argument, "decimal overflow");
    }
    Decimal d;
    d.mantissa_ = static_cast<std::int64_t>(m);
    d.scale_ = scale;
    return d;
  }

  void normalize() {
    while (scale_ > 0 && mantissa_ % 10 == 0) {
      mantissa_ /= 10;
      --scale_;
    }
  }

  std::int64_t mantissa_ = 0;
  int scale_ = 0;
};

}  // namespace psys

template <>
struct std::hash<psys::Decimal> {
  std::size_t operator()(const psys::Decimal& d) const noexcept {
    return std::hash<std::int64_t>{}(d.mantissa()) * 31u + static_cast<std::size_t>(d.scale());
  }
};
