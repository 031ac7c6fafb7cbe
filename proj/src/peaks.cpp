#include "chronopath/peaks.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "chronopath/errors.hpp"

namespace chronopath {

namespace {

constexpr double kTieTolerance = 1e-12;

bool ties(double a, double b) noexcept {
  if (a == b) return true;
  return std::abs(a - b) <= kTieTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// Plateau-aware search for a run of (tied) values strictly above both neighbours.
bool has_strict_local_max(const std::vector<double>& v) {
  const std::size_t size = v.size();
  std::size_t i = 0;
  while (i < size) {
    std::size_t j = i;
    while (j + 1 < size && ties(v[j + 1], v[i])) ++j;
    const bool left_lower = i == 0 || v[i - 1] < v[i];
    const bool right_lower = j + 1 == size || v[j + 1] < v[i];
    const bool whole = i == 0 && j + 1 == size;
    if (!whole && left_lower && right_lower) return true;
    i = j + 1;
  }
  return false;
}

std::int64_t argmax_toward_centre(const std::vector<double>& v, std::int64_t lo, std::int64_t hi,
                                  double centre) {
  std::int64_t best = lo;
  for (std::int64_t n = lo + 1; n <= hi; ++n) {
    const double cur = v[n];
    const double top = v[best];
    if (ties(cur, top)) {
      if (std::abs(static_cast<double>(n) - centre) < std::abs(static_cast<double>(best) - centre))
        best = n;
    } else if (cur > top) {
      best = n;
    }
  }
  return best;
}

// 2 pi sigma (sqrt(N+1) - sqrt(N)) / theta, with the root difference formed
// without cancellation.
double exact_spacing(double sigma, double theta, double big_n) noexcept {
  const double root_gap = 1.0 / (std::sqrt(big_n + 1.0) + std::sqrt(big_n));
  return 2.0 * std::numbers::pi * sigma * root_gap / theta;
}

}  // namespace

PeakAnalysis analytic_peaks(const ModelParams& params) {
  const double theta = params.theta();
  require_peak_regime(theta);
  const double big_n = static_cast<double>(params.n_steps());
  const double pi = std::numbers::pi;
  const double sigma = params.sigma_t();
  const double lambda = params.lambda();

  PeakAnalysis p;
  p.n_plus = big_n * (0.5 + pi / theta);
  p.n_minus = big_n * (0.5 - pi / theta);
  p.t_c_peak = 2.0 * pi * sigma * std::sqrt(big_n) / theta;
  p.width_var_tc = 2.0 / std::abs(lambda * std::tan(theta / 4.0));
  const double separation = p.n_plus - p.n_minus;
  p.a_plus = p.n_plus / separation;
  p.a_minus = p.n_minus / separation;
  p.spacing = exact_spacing(sigma, theta, big_n);
  p.spacing_large_n = sigma * pi / (theta * std::sqrt(big_n));
  p.t_c_min_peak = 2.0 * pi / (lambda * params.delta_t_min());
  return p;
}

NumericPeaks numeric_peaks(const PathAmplitudeProfile& profile) {
  const std::int64_t big_n = profile.params.n_steps();
  if (static_cast<std::int64_t>(profile.entries.size()) != big_n + 1)
    throw std::invalid_argument("numeric_peaks: profile must cover n = 0..N");
  const std::vector<double> logs = profile.log_magnitudes();
  if (!has_strict_local_max(logs)) throw FlatProfile();

  const double centre = static_cast<double>(big_n) / 2.0;
  NumericPeaks out;
  out.n_minus = argmax_toward_centre(logs, 0, big_n / 2, centre);
  out.n_plus = argmax_toward_centre(logs, (big_n + 1) / 2, big_n, centre);
  return out;
}

SpacingBound peak_spacing_bound(const ModelParams& params) {
  if (params.n_steps() < params.n_min())
    throw std::invalid_argument("peak_spacing_bound: requires N >= N_min");
  SpacingBound out;
  out.spacing =
      exact_spacing(params.sigma_t(), params.theta(), static_cast<double>(params.n_steps()));
  out.bound_ok = out.spacing < params.delta_t_min() / 2.0;
  return out;
}

std::vector<PeakSweepPoint> sweep_peaks(std::span<const ModelParams> grid, Execution exec) {
  const auto count = static_cast<std::int64_t>(grid.size());
  std::vector<PeakSweepPoint> out;
  out.reserve(grid.size());
  for (const auto& p : grid) out.push_back({p, {}, {}});

  std::vector<std::exception_ptr> errors(grid.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::Parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      auto& point = out[static_cast<std::size_t>(i)];
      point.analytic = analytic_peaks(point.params);
      point.numeric = numeric_peaks(interference_profile(point.params, Execution::Serial));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace chronopath
