#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chronopath/kernels.hpp"
#include "chronopath/log_complex.hpp"
#include "chronopath/params.hpp"

namespace chronopath {

enum class Normalization {
  None,
  MaxAbs,  // largest magnitude is 1 (the figures' convention)
  L2,      // sum of squared magnitudes is 1
};

enum class Branch { Plus, Minus };

struct ProfileEntry {
  std::int64_t n = 0;
  LogComplex amp;
  double t_c = 0.0;  // (2n - N) * delta_t
};

/// Interference amplitude against step index for one (N, theta).
struct PathAmplitudeProfile {
  ModelParams params;
  std::vector<ProfileEntry> entries;

  std::vector<double> log_magnitudes() const;
};

/// Net clock time (2n - N) * delta_t of the path with n forward steps.
double clock_time(const ModelParams& params, std::int64_t n) noexcept;

/// I_{N-n,n}(z) with z = theta/N:
///   exp(-i n (N-n) z/2) * prod_{q=1..n} sin((N+1-q) z/2) / sin(q z/2).
/// Evaluated in the log domain; n == 0 is exactly one.
/// Throws SingularDenominator if some sin(q z/2), q <= n, sits on a pole.
LogComplex interference(const ModelParams& params, std::int64_t n);

/// interference() for every n = 0..N. Throws SingularDenominator if any
/// q <= N is a pole.
PathAmplitudeProfile interference_profile(const ModelParams& params,
                                          Execution exec = Execution::Parallel);

/// True if some denominator q in 1..N lies on the pole lattice.
bool has_interference_pole(double theta, std::int64_t n_steps) noexcept;

/// Nudges theta upward by `step` until no pole remains for N in
/// [n_from, n_to]. Returns the input unchanged when it is already clean.
double perturb_theta_off_poles(double theta, std::int64_t n_from, std::int64_t n_to,
                               double step = 1e-9);

/// log B_n with B_n = C(N, n) / 2^N, n = 0..N, via lgamma.
std::vector<double> binomial_log_profile(std::int64_t n_steps,
                                         Normalization norm = Normalization::None);

/// exp of binomial_log_profile; entries that underflow are 0.
std::vector<double> binomial_profile(std::int64_t n_steps,
                                     Normalization norm = Normalization::None);

/// g(x, sigma) = exp(-x^2 / 2 sigma^2).
double gaussian_envelope(double x, double sigma);

/// |cos^N(A / sqrt N) - exp(-A^2 / 2)|.
double cosine_limit_residual(double a, std::int64_t n_steps);

/// f_n g_n around the peak n_+ or n_-:
///   f = exp(-i [n_+ n_- - (n - n_pm)^2] theta / 2N)
///   g = exp(-(n - n_pm)^2 |theta tan(theta/4)| / 2N).
/// Requires 2*pi < theta < 4*pi.
LogComplex peak_approximant(const ModelParams& params, Branch branch, std::int64_t n);

/// Magnitudes exp(log_mag) rescaled by the requested normalization.
std::vector<double> normalized_magnitudes(std::span<const double> log_mags, Normalization norm);
std::vector<double> normalized_magnitudes(std::span<const LogComplex> values, Normalization norm);

/// log(sum exp(2 * log_mags)) / 2, ignoring -inf entries.
double log_l2_norm(std::span<const double> log_mags) noexcept;

}  // namespace chronopath
