#pragma once

#include <complex>
#include <limits>

namespace chronopath {

/// Complex number stored as (log |z|, arg z).
///
/// Zero is represented by log_mag == -inf with phase 0. The phase is kept in
/// (-pi, pi].
class LogComplex {
 public:
  /// Zero.
  constexpr LogComplex() noexcept = default;

  static LogComplex zero() noexcept { return {}; }
  static LogComplex one() noexcept { return from_log_polar(0.0, 0.0); }
  static LogComplex from_log_polar(double log_mag, double phase) noexcept;
  static LogComplex from_complex(std::complex<double> z) noexcept;

  double log_mag() const noexcept { return log_mag_; }
  double phase() const noexcept { return phase_; }
  bool is_zero() const noexcept { return log_mag_ == -std::numeric_limits<double>::infinity(); }

  /// Throws Overflow if |z| exceeds the largest finite double.
  std::complex<double> to_complex() const;
  double magnitude() const;

  /// Multiply by exp(log_factor); the phase is unchanged.
  LogComplex scaled(double log_factor) const noexcept;
  LogComplex conj() const noexcept;

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) noexcept;
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b);
  LogComplex& operator*=(const LogComplex& other) noexcept { return *this = *this * other; }

 private:
  double log_mag_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

/// Wrap an angle into (-pi, pi].
double wrap_phase(double angle) noexcept;

/// Largest log-magnitude that still converts to a finite double.
inline constexpr double kMaxLogMagnitude = 709.782712893384;

}  // namespace chronopath
