#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chronopath {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A denominator factor sin(q z / 2) of the interference product vanished.
/// The caller picked theta/N on the pole lattice and must perturb theta.
class SingularDenominator : public Error {
 public:
  SingularDenominator(std::int64_t q, std::int64_t k, double theta);

  std::int64_t q() const noexcept { return q_; }
  std::int64_t k() const noexcept { return k_; }
  double theta() const noexcept { return theta_; }

 private:
  std::int64_t q_;
  std::int64_t k_;
  double theta_;
};

/// Peak formulas only hold for 2*pi < theta < 4*pi.
class ThetaOutOfRange : public Error {
 public:
  explicit ThetaOutOfRange(double theta);
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

class FlatProfile : public Error {
 public:
  FlatProfile() : Error("profile magnitude has no strict local maximum") {}
};

class DimTooSmall : public Error {
 public:
  explicit DimTooSmall(int dim);
};

class InvalidFraction : public Error {
 public:
  explicit InvalidFraction(double f);
};

/// Conversion of a log-domain value to an ordinary double would overflow.
class Overflow : public Error {
 public:
  explicit Overflow(double log_mag);
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chronopath
