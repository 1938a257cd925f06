// SPDX-License-Identifier: MIT
//
// Exact half-integer arithmetic. Angular-momentum quantum numbers are either
// integers or half-odd integers; storing twice the value as a plain signed
// integer keeps every comparison and every index computation exact, with no
// floating-point rounding anywhere in the bookkeeping.

#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spinwalk {

class HalfInt {
 public:
  /// Zero by default.
  constexpr HalfInt() = default;

  /// Implicit construction from a whole number (value = n, twice = 2n).
  constexpr HalfInt(int n) : twice_(2 * static_cast<std::int64_t>(n)) {}

  /// Named constructor from the doubled value (twice = t, value = t/2).
  static constexpr HalfInt from_twice(std::int64_t t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }

  /// Doubled value; always exact.
  constexpr std::int64_t twice() const { return twice_; }

  /// True when the value is a whole number (doubled value is even).
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  /// Floating-point value, for use in actual numerics only.
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }

  /// Scaling by a whole number stays exact.
  constexpr HalfInt operator*(std::int64_t n) const { return from_twice(twice_ * n); }
  friend constexpr HalfInt operator*(std::int64_t n, HalfInt h) { return h * n; }

  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  friend constexpr bool operator==(HalfInt a, HalfInt b) = default;
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

  /// Render as "n" for whole values or "p/2" in lowest terms otherwise.
  std::string str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  friend std::ostream& operator<<(std::ostream& os, HalfInt h) { return os << h.str(); }

 private:
  std::int64_t twice_ = 0;
};

/// Parse "n" or "p/2" (p odd, i.e. already in lowest terms) into a HalfInt.
/// Throws std::invalid_argument on malformed text, naming the offending token.
inline HalfInt parse_halfint(std::string_view text) {
  const std::string token(text);
  auto fail = [&]() -> HalfInt {
    throw std::invalid_argument("parse_halfint: malformed half-integer '" + token + "'");
  };
  if (token.empty()) return fail();
  const auto slash = token.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long n = std::stoll(token, &used);
      if (used != token.size()) return fail();
      return HalfInt(static_cast<int>(n));
    }
    if (token.substr(slash + 1) != "2") return fail();
    const long long p = std::stoll(token.substr(0, slash), &used);
    if (used != slash) return fail();
    if (p % 2 == 0) return fail();  // "4/2" is not in lowest terms
    return HalfInt::from_twice(p);
  } catch (const std::invalid_argument&) {
    return fail();
  } catch (const std::out_of_range&) {
    return fail();
  }
}

}  // namespace spinwalk
