#pragma once

#include <cstdint>
#include <string>

namespace maass::num {

// Nonnegative-or-signed real with a 64-bit binary exponent: value = m·2^e,
// m ∈ [0.5, 1) or m = 0. The Whittaker tail at T ~ e^{11} is ~e^{−10⁶}, far
// below double range, and ε inherits that scale.
struct WideReal {
  double m = 0.0;
  std::int64_t e = 0;

  WideReal() = default;
  WideReal(double v);  // NOLINT: implicit from double is intended
  static WideReal from_parts(double mant, std::int64_t exp2);
  static WideReal exp(double ln_value);  // e^{ln_value} without overflow

  double ln() const;     // natural log (−inf for 0)
  double log10() const;
  double to_double() const;  // may under/overflow to 0/inf
  bool is_zero() const { return m == 0.0; }
  bool finite_positive() const;

  std::string to_string(int sig = 17) const;  // scientific, decimal exponent unbounded

  WideReal operator*(const WideReal& o) const;
  WideReal operator/(const WideReal& o) const;
  WideReal operator+(const WideReal& o) const;
  WideReal operator-(const WideReal& o) const;
  bool operator<(const WideReal& o) const;
  bool operator==(const WideReal& o) const { return m == o.m && e == o.e; }
};

}  // namespace maass::num
