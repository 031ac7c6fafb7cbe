#include "chronopath/log_complex.hpp"

#include <cmath>
#include <numbers>

#include "chronopath/errors.hpp"

namespace chronopath {

double wrap_phase(double angle) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!std::isfinite(angle)) return 0.0;
  if (angle > -std::numbers::pi && angle <= std::numbers::pi) return angle;
  double r = std::remainder(angle, two_pi);  // in [-pi, pi]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

LogComplex LogComplex::from_log_polar(double log_mag, double phase) noexcept {
  LogComplex z;
  if (log_mag == -std::numeric_limits<double>::infinity()) return z;
  z.log_mag_ = log_mag;
  z.phase_ = wrap_phase(phase);
  return z;
}

LogComplex LogComplex::from_complex(std::complex<double> z) noexcept {
  if (z == 0.0) return {};
  return from_log_polar(std::log(std::abs(z)), std::arg(z));
}

std::complex<double> LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(magnitude(), phase_);
}

double LogComplex::magnitude() const {
  if (is_zero()) return 0.0;
  if (log_mag_ > kMaxLogMagnitude) throw Overflow(log_mag_);
  return std::exp(log_mag_);
}

LogComplex LogComplex::scaled(double log_factor) const noexcept {
  if (is_zero()) return *this;
  LogComplex z = *this;
  z.log_mag_ += log_factor;
  return z;
}

LogComplex LogComplex::conj() const noexcept {
  if (is_zero()) return *this;
  return from_log_polar(log_mag_, -phase_);
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) noexcept {
  if (a.is_zero() || b.is_zero()) return {};
  return LogComplex::from_log_polar(a.log_mag_ + b.log_mag_, a.phase_ + b.phase_);
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (b.is_zero()) throw Error("division of a LogComplex by zero");
  if (a.is_zero()) return {};
  return LogComplex::from_log_polar(a.log_mag_ - b.log_mag_, a.phase_ - b.phase_);
}

}  // namespace chronopath
