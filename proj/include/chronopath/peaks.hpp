#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chronopath/amplitude.hpp"
#include "chronopath/params.hpp"

namespace chronopath {

/// Closed-form description of the two interference peaks.
struct PeakAnalysis {
  double n_plus = 0.0;           // N (1/2 + pi/theta), not rounded
  double n_minus = 0.0;          // N (1/2 - pi/theta)
  double t_c_peak = 0.0;         // 2 pi sigma_t sqrt(N) / theta
  double width_var_tc = 0.0;     // 2 / |lambda tan(theta/4)|
  double a_plus = 0.0;           // n_+ / (n_+ - n_-)
  double a_minus = 0.0;          // n_- / (n_+ - n_-)
  double spacing = 0.0;          // t_c_peak(N+1) - t_c_peak(N)
  double spacing_large_n = 0.0;  // sigma_t pi / (theta sqrt N)
  double t_c_min_peak = 0.0;     // 2 pi / (lambda delta_t_min)
};

/// Throws ThetaOutOfRange unless 2*pi < theta < 4*pi.
PeakAnalysis analytic_peaks(const ModelParams& params);

struct NumericPeaks {
  std::int64_t n_plus = 0;
  std::int64_t n_minus = 0;
};

/// Argmax of |amp| on the upper half [ceil(N/2), N] and the lower half
/// [0, floor(N/2)]. Magnitudes equal to within a relative 1e-12 count as a
/// tie, resolved toward N/2. Throws FlatProfile if the magnitude has no
/// strict local maximum.
NumericPeaks numeric_peaks(const PathAmplitudeProfile& profile);

struct SpacingBound {
  double spacing = 0.0;
  bool bound_ok = false;  // spacing < delta_t_min / 2
};

/// Peak spacing between consecutive N. Requires N >= N_min.
SpacingBound peak_spacing_bound(const ModelParams& params);

/// One point of a (theta, N) sweep: analytic and numeric peak positions.
struct PeakSweepPoint {
  ModelParams params;
  PeakAnalysis analytic;
  NumericPeaks numeric;
};

/// Evaluates profiles and peaks over a grid. The parallel version runs one
/// grid point per task with serial profile kernels inside.
std::vector<PeakSweepPoint> sweep_peaks(std::span<const ModelParams> grid,
                                        Execution exec = Execution::Parallel);

}  // namespace chronopath
