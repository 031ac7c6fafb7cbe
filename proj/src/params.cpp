#include "chronopath/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chronopath/errors.hpp"

namespace chronopath {

std::int64_t ceil_ratio(double ratio) noexcept {
  const double nearest = std::nearbyint(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, std::abs(ratio)))
    return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(ratio));
}

ModelParams::ModelParams(double theta, double sigma_t, std::int64_t n, double delta_t_min)
    : theta_(theta), sigma_t_(sigma_t), n_steps_(n), delta_t_min_(delta_t_min) {
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (!(sigma_t > 0.0) || !std::isfinite(sigma_t))
    throw std::invalid_argument("sigma_t must be positive");
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  if (delta_t_min_ == 0.0) delta_t_min_ = delta_t();
  if (!(delta_t_min_ > 0.0)) throw std::invalid_argument("delta_t_min must be positive");
}

ModelParams ModelParams::from_theta(double theta, std::int64_t n_steps, double sigma_t,
                                    double delta_t_min) {
  return ModelParams(theta, sigma_t, n_steps, delta_t_min);
}

ModelParams ModelParams::from_lambda(double lambda, double sigma_t, std::int64_t n_steps,
                                     double delta_t_min) {
  return ModelParams(lambda * sigma_t * sigma_t, sigma_t, n_steps, delta_t_min);
}

double ModelParams::delta_t() const noexcept {
  return sigma_t_ / std::sqrt(static_cast<double>(n_steps_));
}

std::int64_t ModelParams::n_min() const noexcept {
  const double r = sigma_t_ / delta_t_min_;
  return std::max<std::int64_t>(1, ceil_ratio(r * r));
}

ModelParams ModelParams::with_n_steps(std::int64_t n) const {
  return ModelParams(theta_, sigma_t_, n, delta_t_min_);
}

ModelParams ModelParams::with_theta(double theta) const {
  return ModelParams(theta, sigma_t_, n_steps_, delta_t_min_);
}

bool ModelParams::peak_regime() const noexcept {
  return theta_ > 2.0 * std::numbers::pi && theta_ < 4.0 * std::numbers::pi;
}

void require_peak_regime(double theta) {
  if (!(theta > 2.0 * std::numbers::pi && theta < 4.0 * std::numbers::pi))
    throw ThetaOutOfRange(theta);
}

double SpatialParams::step_length() const noexcept {
  return sigma_x / std::sqrt(static_cast<double>(n_steps));
}

std::int64_t SpatialParams::n_min_space() const noexcept {
  const double r = sigma_x / delta_x_min;
  return std::max<std::int64_t>(1, ceil_ratio(r * r));
}

}  // namespace chronopath
