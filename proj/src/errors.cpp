#include "chronopath/errors.hpp"

#include <cstdio>

namespace chronopath {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SingularDenominator::SingularDenominator(std::int64_t q, std::int64_t k, double theta)
    : Error("interference denominator sin(q z/2) vanishes at q=" + std::to_string(q) + " (q z/2 = " +
            std::to_string(k) + " pi) for theta=" + format_double(theta) +
            "; perturb theta (e.g. by +1e-9) to move off the pole lattice"),
      q_(q),
      k_(k),
      theta_(theta) {}

ThetaOutOfRange::ThetaOutOfRange(double theta)
    : Error("theta=" + format_double(theta) + " is outside the open interval (2 pi, 4 pi)"),
      theta_(theta) {}

DimTooSmall::DimTooSmall(int dim)
    : Error("truncation dimension " + std::to_string(dim) + " is below the minimum of 16") {}

InvalidFraction::InvalidFraction(double f)
    : Error("fraction f=" + format_double(f) + " must lie in (0, 1]") {}

Overflow::Overflow(double log_mag)
    : Error("log-magnitude " + format_double(log_mag) + " does not fit in a double") {}

}  // namespace chronopath
