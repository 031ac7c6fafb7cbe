#pragma once

#include <cstdint>

namespace chronopath {

/// Parameters of the temporal path construction.
///
/// theta = sigma_t^2 * lambda is the stored quantity; lambda is derived.
/// delta_t = sigma_t / sqrt(N) and N_min = ceil(sigma_t^2 / delta_t_min^2).
class ModelParams {
 public:
  /// delta_t_min defaults to the step delta_t, which makes N_min == N.
  static ModelParams from_theta(double theta, std::int64_t n_steps, double sigma_t = 1.0,
                                double delta_t_min = 0.0);
  static ModelParams from_lambda(double lambda, double sigma_t, std::int64_t n_steps,
                                 double delta_t_min = 0.0);

  double theta() const noexcept { return theta_; }
  double lambda() const noexcept { return theta_ / (sigma_t_ * sigma_t_); }
  double sigma_t() const noexcept { return sigma_t_; }
  std::int64_t n_steps() const noexcept { return n_steps_; }
  double delta_t() const noexcept;
  double delta_t_min() const noexcept { return delta_t_min_; }
  std::int64_t n_min() const noexcept;
  /// z = delta_t^2 * lambda = theta / N.
  double z() const noexcept { return theta_ / static_cast<double>(n_steps_); }

  ModelParams with_n_steps(std::int64_t n) const;
  ModelParams with_theta(double theta) const;

  /// True when 2*pi < theta < 4*pi.
  bool peak_regime() const noexcept;

 private:
  ModelParams(double theta, double sigma_t, std::int64_t n, double delta_t_min);

  double theta_;
  double sigma_t_;
  std::int64_t n_steps_;
  double delta_t_min_;
};

/// Throws ThetaOutOfRange unless 2*pi < theta < 4*pi.
void require_peak_regime(double theta);

/// Spatial counterpart: N steps of length sigma_x / sqrt(N).
struct SpatialParams {
  double sigma_x = 1.0;
  std::int64_t n_steps = 1;
  double delta_x_min = 1.0;

  double step_length() const noexcept;
  std::int64_t n_min_space() const noexcept;
};

/// ceil(ratio) that ignores round-off just above an integer.
std::int64_t ceil_ratio(double ratio) noexcept;

}  // namespace chronopath
