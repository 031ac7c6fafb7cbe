#include "chronopath/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chronopath/errors.hpp"

namespace chronopath {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// -n (N - n) z / 2 with the integer product formed exactly.
double interference_phase(double theta, std::int64_t n_steps, std::int64_t n) noexcept {
  const auto k = static_cast<double>(n * (n_steps - n));
  return -k * theta / (2.0 * static_cast<double>(n_steps));
}

LogComplex assemble(double log_abs, bool negative, double theta, std::int64_t n_steps,
                    std::int64_t n) noexcept {
  if (log_abs == kNegInf) return LogComplex::zero();
  double phase = wrap_phase(interference_phase(theta, n_steps, n));
  if (negative) phase += std::numbers::pi;
  return LogComplex::from_log_polar(log_abs, phase);
}

}  // namespace

std::vector<double> PathAmplitudeProfile::log_magnitudes() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.amp.log_mag());
  return out;
}

double clock_time(const ModelParams& params, std::int64_t n) noexcept {
  return static_cast<double>(2 * n - params.n_steps()) * params.delta_t();
}

LogComplex interference(const ModelParams& params, std::int64_t n) {
  const std::int64_t big_n = params.n_steps();
  if (n < 0 || n > big_n) throw std::out_of_range("interference: n must lie in [0, N]");
  const double theta = params.theta();

  kernels::CompensatedSum sum;
  bool negative = false;
  bool zero = false;
  for (std::int64_t q = 1; q <= n; ++q) {
    const kernels::Factor f = kernels::interference_factor(theta, big_n, q);
    if (f.pole) throw SingularDenominator(q, f.pole_k, theta);
    if (f.zero)
      zero = true;
    else
      sum.add(f.log_abs);
    negative ^= f.negative;
  }
  return assemble(zero ? kNegInf : sum.value(), negative, theta, big_n, n);
}

PathAmplitudeProfile interference_profile(const ModelParams& params, Execution exec) {
  const std::int64_t big_n = params.n_steps();
  const double theta = params.theta();
  const kernels::ProductPrefix prefix = kernels::product_prefix(theta, big_n, exec);

  PathAmplitudeProfile profile{params, {}};
  profile.entries.resize(static_cast<std::size_t>(big_n + 1));
#pragma omp parallel for schedule(static) if (exec == Execution::Parallel)
  for (std::int64_t n = 0; n <= big_n; ++n) {
    auto& e = profile.entries[static_cast<std::size_t>(n)];
    e.n = n;
    e.amp = assemble(prefix.log_abs[n], prefix.negative[n] != 0, theta, big_n, n);
    e.t_c = clock_time(params, n);
  }
  return profile;
}

bool has_interference_pole(double theta, std::int64_t n_steps) noexcept {
  if (theta == 0.0) return false;
  for (std::int64_t q = 1; q <= n_steps; ++q)
    if (kernels::interference_factor(theta, n_steps, q).pole) return true;
  return false;
}

double perturb_theta_off_poles(double theta, std::int64_t n_from, std::int64_t n_to, double step) {
  auto clean = [&](double t) {
    for (std::int64_t n = n_from; n <= n_to; ++n)
      if (has_interference_pole(t, n)) return false;
    return true;
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (clean(theta)) return theta;
    theta += step;
  }
  throw Error("could not move theta off the interference pole lattice");
}

std::vector<double> binomial_log_profile(std::int64_t n_steps, Normalization norm) {
  if (n_steps < 1) throw std::invalid_argument("binomial_log_profile: N must be at least 1");
  const double big_n = static_cast<double>(n_steps);
  const double head = std::lgamma(big_n + 1.0) - big_n * std::numbers::ln2;
  std::vector<double> out(static_cast<std::size_t>(n_steps + 1));
  for (std::int64_t n = 0; n <= n_steps; ++n) {
    const double k = static_cast<double>(n);
    out[n] = head - std::lgamma(k + 1.0) - std::lgamma(big_n - k + 1.0);
  }
  if (norm == Normalization::MaxAbs) {
    const double top = *std::max_element(out.begin(), out.end());
    for (double& v : out) v -= top;
  } else if (norm == Normalization::L2) {
    const double l2 = log_l2_norm(out);
    for (double& v : out) v -= l2;
  }
  return out;
}

std::vector<double> binomial_profile(std::int64_t n_steps, Normalization norm) {
  std::vector<double> out = binomial_log_profile(n_steps, norm);
  for (double& v : out) v = std::exp(v);
  return out;
}

double gaussian_envelope(double x, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_envelope: sigma must be positive");
  return std::exp(-x * x / (2.0 * sigma * sigma));
}

double cosine_limit_residual(double a, std::int64_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("cosine_limit_residual: N must be at least 1");
  const double big_n = static_cast<double>(n_steps);
  const double power = std::pow(std::cos(a / std::sqrt(big_n)), big_n);
  return std::abs(power - std::exp(-a * a / 2.0));
}

LogComplex peak_approximant(const ModelParams& params, Branch branch, std::int64_t n) {
  const double theta = params.theta();
  require_peak_regime(theta);
  const double big_n = static_cast<double>(params.n_steps());
  const double n_plus = big_n * (0.5 + std::numbers::pi / theta);
  const double n_minus = big_n * (0.5 - std::numbers::pi / theta);
  const double centre = branch == Branch::Plus ? n_plus : n_minus;
  const double k = static_cast<double>(n) - centre;
  const double width = std::abs(theta * std::tan(theta / 4.0));
  const double log_mag = -k * k * width / (2.0 * big_n);
  const double phase = -(n_plus * n_minus - k * k) * theta / (2.0 * big_n);
  return LogComplex::from_log_polar(log_mag, phase);
}

double log_l2_norm(std::span<const double> log_mags) noexcept {
  double top = kNegInf;
  for (double v : log_mags) top = std::max(top, v);
  if (top == kNegInf) return kNegInf;
  kernels::CompensatedSum sum;
  for (double v : log_mags)
    if (v != kNegInf) sum.add(std::exp(2.0 * (v - top)));
  return top + 0.5 * std::log(sum.value());
}

std::vector<double> normalized_magnitudes(std::span<const double> log_mags, Normalization norm) {
  double shift = 0.0;
  if (norm == Normalization::MaxAbs) {
    shift = kNegInf;
    for (double v : log_mags) shift = std::max(shift, v);
  } else if (norm == Normalization::L2) {
    shift = log_l2_norm(log_mags);
  }
  std::vector<double> out;
  out.reserve(log_mags.size());
  for (double v : log_mags) {
    if (v == kNegInf) {
      out.push_back(0.0);
      continue;
    }
    const double shifted = v - (shift == kNegInf ? 0.0 : shift);
    if (shifted > kMaxLogMagnitude) throw Overflow(shifted);
    out.push_back(std::exp(shifted));
  }
  return out;
}

std::vector<double> normalized_magnitudes(std::span<const LogComplex> values, Normalization norm) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (const auto& v : values) logs.push_back(v.log_mag());
  return normalized_magnitudes(logs, norm);
}

}  // namespace chronopath
