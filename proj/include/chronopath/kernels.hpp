#pragma once

// Data-parallel kernels behind the amplitude and peak modules.
//
// Every kernel has a serial reference and an OpenMP version. The OpenMP
// versions partition work into fixed-size blocks, so their results do not
// depend on the thread count.

#include <cstdint>
#include <vector>

namespace chronopath {

enum class Execution { Serial, Parallel };

namespace kernels {

/// Half-width of the band around k*pi (k >= 1) in which a sine factor of
/// the interference product is treated as exactly zero.
inline constexpr double kPoleGuard = 1e-12;

/// Block length used by the parallel prefix scan.
inline constexpr std::int64_t kScanBlock = 4096;

/// One factor sin((N+1-q) z/2) / sin(q z/2) of the interference product,
/// with z = theta / N. theta == 0 gives the binomial limit (N+1-q)/q.
struct Factor {
  double log_abs = 0.0;     // log of the absolute ratio; unused when zero
  bool negative = false;
  bool zero = false;        // numerator vanished
  bool pole = false;        // denominator vanished
  std::int64_t pole_k = 0;  // k in q z/2 = k pi when pole is set
};

Factor interference_factor(double theta, std::int64_t n_steps, std::int64_t q) noexcept;

/// Prefix products of the interference factors for n = 0..N.
/// log_abs[n] is -inf when a numerator vanished at some q <= n.
struct ProductPrefix {
  std::vector<double> log_abs;
  std::vector<std::uint8_t> negative;  // odd number of negative factors
};

/// Serial reference: compensated running sum in ascending q.
/// Throws SingularDenominator at the first pole q <= N.
ProductPrefix product_prefix_serial(double theta, std::int64_t n_steps);

/// Blocked two-pass OpenMP scan. Same contract as the serial kernel.
ProductPrefix product_prefix_parallel(double theta, std::int64_t n_steps);

inline ProductPrefix product_prefix(double theta, std::int64_t n_steps, Execution exec) {
  return exec == Execution::Serial ? product_prefix_serial(theta, n_steps)
                                   : product_prefix_parallel(theta, n_steps);
}

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }
  double hi() const noexcept { return sum_; }
  double lo() const noexcept { return comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace kernels
}  // namespace chronopath
