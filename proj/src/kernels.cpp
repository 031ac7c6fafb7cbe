#include "chronopath/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chronopath/errors.hpp"

namespace chronopath::kernels {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

namespace {

// Distance of `angle` from the nearest nonzero multiple of pi, and that multiple.
struct LatticeOffset {
  double offset;
  std::int64_t k;
};

LatticeOffset lattice_offset(double angle) noexcept {
  const double k = std::nearbyint(angle / std::numbers::pi);
  if (k == 0.0) return {std::numeric_limits<double>::infinity(), 0};
  return {std::abs(angle - k * std::numbers::pi), static_cast<std::int64_t>(k)};
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

Factor interference_factor(double theta, std::int64_t n_steps, std::int64_t q) noexcept {
  Factor f;
  const double top = static_cast<double>(n_steps + 1 - q);
  const double bottom = static_cast<double>(q);
  if (theta == 0.0) {
    f.log_abs = std::log(top) - std::log(bottom);
    return f;
  }
  const double half_z = theta / (2.0 * static_cast<double>(n_steps));
  const double den_angle = bottom * half_z;
  const double num_angle = top * half_z;

  const LatticeOffset den = lattice_offset(den_angle);
  if (den.offset < kPoleGuard) {
    f.pole = true;
    f.pole_k = den.k;
    return f;
  }
  if (lattice_offset(num_angle).offset < kPoleGuard) {
    f.zero = true;
    return f;
  }
  const double num = std::sin(num_angle);
  const double den_sin = std::sin(den_angle);
  f.log_abs = std::log(std::abs(num)) - std::log(std::abs(den_sin));
  f.negative = (num < 0.0) != (den_sin < 0.0);
  return f;
}

ProductPrefix product_prefix_serial(double theta, std::int64_t n_steps) {
  ProductPrefix out;
  const auto size = static_cast<std::size_t>(n_steps + 1);
  out.log_abs.resize(size);
  out.negative.resize(size);
  out.log_abs[0] = 0.0;
  out.negative[0] = 0;

  CompensatedSum sum;
  bool negative = false;
  bool zero = false;
  for (std::int64_t q = 1; q <= n_steps; ++q) {
    const Factor f = interference_factor(theta, n_steps, q);
    if (f.pole) throw SingularDenominator(q, f.pole_k, theta);
    if (f.zero)
      zero = true;
    else
      sum.add(f.log_abs);
    negative ^= f.negative;
    out.log_abs[q] = zero ? kNegInf : sum.value();
    out.negative[q] = negative;
  }
  return out;
}

ProductPrefix product_prefix_parallel(double theta, std::int64_t n_steps) {
  ProductPrefix out;
  const auto size = static_cast<std::size_t>(n_steps + 1);
  out.log_abs.resize(size);
  out.negative.resize(size);
  out.log_abs[0] = 0.0;
  out.negative[0] = 0;

  const std::int64_t n_blocks = (n_steps + kScanBlock - 1) / kScanBlock;
  struct BlockTotal {
    double hi = 0.0;
    double lo = 0.0;
    bool negative = false;
    bool zero = false;
    std::int64_t pole_q = 0;
    std::int64_t pole_k = 0;
  };
  std::vector<BlockTotal> totals(static_cast<std::size_t>(n_blocks));
  // Per-entry flag: a numerator vanished inside the block at or before q.
  std::vector<std::uint8_t> local_zero(size, 0);

  // Pass 1: block-local compensated prefix sums.
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    const std::int64_t q0 = 1 + b * kScanBlock;
    const std::int64_t q1 = std::min(n_steps, q0 + kScanBlock - 1);
    CompensatedSum sum;
    bool negative = false;
    bool zero = false;
    BlockTotal& total = totals[static_cast<std::size_t>(b)];
    for (std::int64_t q = q0; q <= q1; ++q) {
      const Factor f = interference_factor(theta, n_steps, q);
      if (f.pole) {
        total.pole_q = q;
        total.pole_k = f.pole_k;
        break;
      }
      if (f.zero)
        zero = true;
      else
        sum.add(f.log_abs);
      negative ^= f.negative;
      out.log_abs[q] = sum.value();
      out.negative[q] = negative;
      local_zero[q] = zero;
    }
    total.hi = sum.hi();
    total.lo = sum.lo();
    total.negative = negative;
    total.zero = zero;
  }

  for (const BlockTotal& t : totals)
    if (t.pole_q != 0) throw SingularDenominator(t.pole_q, t.pole_k, theta);

  // Exclusive scan over block totals, kept in double-double form.
  struct Offset {
    double hi = 0.0;
    double lo = 0.0;
    bool negative = false;
    bool zero = false;
  };
  std::vector<Offset> offsets(static_cast<std::size_t>(n_blocks));
  CompensatedSum running;
  bool negative = false;
  bool zero = false;
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    offsets[b] = {running.hi(), running.lo(), negative, zero};
    running.add(totals[b].hi);
    running.add(totals[b].lo);
    negative ^= totals[b].negative;
    zero = zero || totals[b].zero;
  }

  // Pass 2: apply offsets.
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    const Offset& off = offsets[static_cast<std::size_t>(b)];
    const std::int64_t q0 = 1 + b * kScanBlock;
    const std::int64_t q1 = std::min(n_steps, q0 + kScanBlock - 1);
    for (std::int64_t q = q0; q <= q1; ++q) {
      if (off.zero || local_zero[q]) {
        out.log_abs[q] = kNegInf;
      } else {
        out.log_abs[q] = off.hi + (off.lo + out.log_abs[q]);
      }
      out.negative[q] = static_cast<std::uint8_t>(out.negative[q] ^ off.negative);
    }
  }
  return out;
}

}  // namespace chronopath::kernels
