#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ekac {

using u128 = unsigned __int128;

/// Exact unsigned 128-bit integer with overflow-checked arithmetic.
///
/// Large enough for the integers near e^(e^4) (about 2^79) with plenty of
/// headroom; every operation that would wrap throws OverflowError.
class WideInteger {
 public:
  constexpr WideInteger() = default;
  constexpr WideInteger(std::uint64_t v) : value_(v) {}  // NOLINT implicit
  static constexpr WideInteger from_raw(u128 v) {
    WideInteger w;
    w.value_ = v;
    return w;
  }

  /// Parses a plain decimal string (digits only, no sign, no exponent).
  static WideInteger parse(std::string_view text);

  constexpr u128 raw() const { return value_; }
  bool fits_u64() const { return value_ >> 64 == 0; }
  std::uint64_t to_u64() const;
  double to_double() const { return static_cast<double>(value_); }
  std::string to_string() const;

  WideInteger operator+(const WideInteger& rhs) const;
  WideInteger operator-(const WideInteger& rhs) const;
  WideInteger operator*(const WideInteger& rhs) const;
  WideInteger operator/(const WideInteger& rhs) const;
  WideInteger operator%(const WideInteger& rhs) const;
  std::uint64_t operator%(std::uint64_t rhs) const;

  constexpr auto operator<=>(const WideInteger&) const = default;

 private:
  u128 value_ = 0;
};

std::string to_string(u128 v);

}  // namespace ekac
