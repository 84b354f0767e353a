#include "ekac/wide_integer.hpp"

#include <algorithm>

#include "ekac/errors.hpp"

namespace ekac {

namespace {
constexpr u128 kMax = ~u128{0};
}

WideInteger WideInteger::parse(std::string_view text) {
  if (text.empty()) {
    throw UsageError("empty integer literal");
  }
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw UsageError("invalid decimal integer '" + std::string(text) +
                       "': only digits are accepted");
    }
    const unsigned digit = static_cast<unsigned>(c - '0');
    if (v > (kMax - digit) / 10) {
      throw OverflowError("integer '" + std::string(text) +
                          "' exceeds 128 bits");
    }
    v = v * 10 + digit;
  }
  return from_raw(v);
}

std::uint64_t WideInteger::to_u64() const {
  if (!fits_u64()) {
    throw OverflowError(to_string() + " does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(value_);
}

std::string to_string(u128 v) {
  if (v == 0) {
    return "0";
  }
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string WideInteger::to_string() const { return ekac::to_string(value_); }

WideInteger WideInteger::operator+(const WideInteger& rhs) const {
  if (value_ > kMax - rhs.value_) {
    throw OverflowError("addition overflow: " + to_string() + " + " +
                        rhs.to_string());
  }
  return from_raw(value_ + rhs.value_);
}

WideInteger WideInteger::operator-(const WideInteger& rhs) const {
  if (rhs.value_ > value_) {
    throw OverflowError("subtraction underflow: " + to_string() + " - " +
                        rhs.to_string());
  }
  return from_raw(value_ - rhs.value_);
}

WideInteger WideInteger::operator*(const WideInteger& rhs) const {
  if (value_ != 0 && rhs.value_ > kMax / value_) {
    throw OverflowError("multiplication overflow: " + to_string() + " * " +
                        rhs.to_string());
  }
  return from_raw(value_ * rhs.value_);
}

WideInteger WideInteger::operator/(const WideInteger& rhs) const {
  if (rhs.value_ == 0) {
    throw UsageError("division by zero");
  }
  return from_raw(value_ / rhs.value_);
}

WideInteger WideInteger::operator%(const WideInteger& rhs) const {
  if (rhs.value_ == 0) {
    throw UsageError("division by zero");
  }
  return from_raw(value_ % rhs.value_);
}

std::uint64_t WideInteger::operator%(std::uint64_t rhs) const {
  if (rhs == 0) {
    throw UsageError("division by zero");
  }
  return static_cast<std::uint64_t>(value_ % rhs);
}

}  // namespace ekac
