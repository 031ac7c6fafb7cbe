#pragma once

#include <optional>

namespace chronopath {

/// Planck time in seconds.
inline constexpr double kPlanckTime = 5.4e-44;
/// Meson-scale commutator magnitude at f = 1, in s^-2.
inline constexpr double kMesonLambda = 1e57;

enum class ScalesMode {
  Meson,   // lambda = sqrt(f) * 1e57 s^-2
  Nature,  // lambda = 2 pi / delta_t_min^2
};

struct ScalesInput {
  double f = 1.0;                      // fraction of contributing particles, (0, 1]
  double delta_t_min = kPlanckTime;    // s
  std::optional<double> lambda_override;  // s^-2, replaces the mode's lambda
  ScalesMode mode = ScalesMode::Meson;

  /// Throws InvalidFraction or std::invalid_argument.
  void validate() const;
};

struct PhysicalScales {
  double tc_min_peak = 0.0;  // s, 2 pi / (lambda delta_t_min)
  double delta_tc = 0.0;     // s, sqrt((1 - 2/pi) / lambda)
  double lambda = 0.0;       // s^-2
};

struct UncertaintyReport {
  double theta_star = 0.0;          // rad
  double var_tc_bound = 0.0;        // s^2, 2 / |lambda tan(theta/4)|
  double var_H = 0.0;               // energy^2 (hbar = 1), lambda / 4
  double var_tc_energy_time = 0.0;  // s^2, (1 - 2/pi) / lambda
  double tc_min_peak = 0.0;         // s
  double delta_tc = 0.0;            // s
  double lambda_used = 0.0;         // s^-2
};

/// Root of tan(theta/4) = -2 / (1 - 2/pi) on (2 pi, 4 pi), bisected to 1e-12.
double solve_min_uncertainty_theta();

struct VarianceBounds {
  double var_tc_bound = 0.0;
  double var_H = 0.0;
  double var_tc_energy_time = 0.0;
};

/// Requires 2 pi < theta < 4 pi (ThetaOutOfRange) and lambda > 0.
VarianceBounds variance_bounds(double theta, double lambda);

/// Variance in E of the half-line density ~ exp(-2 E^2 dtc^2), E >= 0, by
/// composite Simpson on [0, 12 s] with s = 1 / (2 dtc). n_grid >= 1000.
double truncated_gaussian_variance(double delta_tc, int n_grid = 4000);
/// Mean of the same density.
double truncated_gaussian_mean(double delta_tc, int n_grid = 4000);

/// Throws InvalidFraction unless 0 < f <= 1.
PhysicalScales physical_scales(const ScalesInput& input);

/// theta*, the variance formulas at (theta*, lambda) and the physical scales.
UncertaintyReport uncertainty_report(const ScalesInput& input);

}  // namespace chronopath
