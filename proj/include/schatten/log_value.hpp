#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace schatten {

/// Signed log-space scalar: value = sign * exp(log_mag).
/// Products and quotients stay in log-space, so quantities spanning
/// hundreds of orders of magnitude (volumes, partition functions) never
/// overflow a double.
struct LogValue {
  int sign = 0;          // -1, 0, +1
  double log_mag = 0.0;  // ln|value|; ignored when sign == 0

  LogValue() = default;
  LogValue(int s, double lm) : sign(s), log_mag(lm) {}

  static LogValue zero() { return LogValue(0, 0.0); }
  static LogValue one() { return LogValue(1, 0.0); }

  static LogValue from_log(double lm, int s = 1) {
    if (s == 0) return zero();
    return LogValue(s > 0 ? 1 : -1, lm);
  }

  static LogValue from_real(double x) {
    if (x == 0.0) return zero();
    if (!std::isfinite(x)) throw std::domain_error("LogValue: non-finite input");
    return LogValue(x > 0 ? 1 : -1, std::log(std::abs(x)));
  }

  /// Convert back to a plain double; overflows to +-inf, underflows to 0.
  double to_real() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);
  }

  bool is_zero() const { return sign == 0; }

  friend LogValue operator*(const LogValue& a, const LogValue& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return LogValue(a.sign * b.sign, a.log_mag + b.log_mag);
  }

  friend LogValue operator/(const LogValue& a, const LogValue& b) {
    if (b.sign == 0) throw std::domain_error("LogValue: division by zero");
    if (a.sign == 0) return zero();
    return LogValue(a.sign * b.sign, a.log_mag - b.log_mag);
  }

  LogValue& operator*=(const LogValue& o) { return *this = *this * o; }
  LogValue& operator/=(const LogValue& o) { return *this = *this / o; }

  /// Real power; requires a nonnegative base.
  LogValue pow(double e) const {
    if (sign == 0) {
      if (e <= 0.0) throw std::domain_error("LogValue: 0 to nonpositive power");
      return zero();
    }
    if (sign < 0) throw std::domain_error("LogValue: power of negative value");
    return LogValue(1, e * log_mag);
  }
};

}  // namespace schatten
