#include "chronopath/uncertainty.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "chronopath/errors.hpp"
#include "chronopath/params.hpp"

namespace chronopath {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfNormalFactor = 1.0 - 2.0 / kPi;

struct Moments {
  double mass = 0.0;
  double first = 0.0;
  double second = 0.0;
};

Moments half_line_moments(double delta_tc, int n_grid) {
  if (!(delta_tc > 0.0)) throw std::invalid_argument("delta_tc must be positive");
  if (n_grid < 1000) throw std::invalid_argument("n_grid must be at least 1000");
  if (n_grid % 2 == 1) ++n_grid;
  const double s = 1.0 / (2.0 * delta_tc);
  const double upper = 12.0 * s;
  const double h = upper / n_grid;
  Moments m;
  for (int k = 0; k <= n_grid; ++k) {
    const double e = k * h;
    const double w = (k == 0 || k == n_grid) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const double p = w * std::exp(-2.0 * e * e * delta_tc * delta_tc);
    m.mass += p;
    m.first += p * e;
    m.second += p * e * e;
  }
  return m;
}

}  // namespace

void ScalesInput::validate() const {
  if (!(f > 0.0 && f <= 1.0)) throw InvalidFraction(f);
  if (!(delta_t_min > 0.0)) throw std::invalid_argument("delta_t_min must be positive");
  if (lambda_override && !(*lambda_override > 0.0))
    throw std::invalid_argument("lambda override must be positive");
}

double solve_min_uncertainty_theta() {
  const double target = -2.0 / kHalfNormalFactor;
  // tan(theta/4) increases from -inf to 0 on (2 pi, 4 pi)
  double lo = 2.0 * kPi + 1e-9;
  double hi = 4.0 * kPi;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (std::tan(mid / 4.0) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

VarianceBounds variance_bounds(double theta, double lambda) {
  require_peak_regime(theta);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return {2.0 / std::abs(lambda * std::tan(theta / 4.0)), lambda / 4.0,
          kHalfNormalFactor / lambda};
}

double truncated_gaussian_variance(double delta_tc, int n_grid) {
  const Moments m = half_line_moments(delta_tc, n_grid);
  const double mean = m.first / m.mass;
  return m.second / m.mass - mean * mean;
}

double truncated_gaussian_mean(double delta_tc, int n_grid) {
  const Moments m = half_line_moments(delta_tc, n_grid);
  return m.first / m.mass;
}

PhysicalScales physical_scales(const ScalesInput& input) {
  input.validate();
  PhysicalScales out;
  if (input.lambda_override)
    out.lambda = *input.lambda_override;
  else if (input.mode == ScalesMode::Meson)
    out.lambda = std::sqrt(input.f) * kMesonLambda;
  else
    out.lambda = 2.0 * kPi / (input.delta_t_min * input.delta_t_min);
  out.tc_min_peak = 2.0 * kPi / (out.lambda * input.delta_t_min);
  out.delta_tc = std::sqrt(kHalfNormalFactor / out.lambda);
  return out;
}

UncertaintyReport uncertainty_report(const ScalesInput& input) {
  const PhysicalScales scales = physical_scales(input);
  UncertaintyReport r;
  r.theta_star = solve_min_uncertainty_theta();
  const VarianceBounds v = variance_bounds(r.theta_star, scales.lambda);
  r.var_tc_bound = v.var_tc_bound;
  r.var_H = v.var_H;
  r.var_tc_energy_time = v.var_tc_energy_time;
  r.tc_min_peak = scales.tc_min_peak;
  r.delta_tc = scales.delta_tc;
  r.lambda_used = scales.lambda;
  return r;
}

}  // namespace chronopath
