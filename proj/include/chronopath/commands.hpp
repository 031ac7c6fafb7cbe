#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chronopath/amplitude.hpp"
#include "chronopath/figures.hpp"
#include "chronopath/report.hpp"
#include "chronopath/uncertainty.hpp"

namespace chronopath {

struct CommonOptions {
  std::filesystem::path out_dir = "out";
  Normalization normalization = Normalization::MaxAbs;
  bool perturb_on_pole = false;
  std::optional<std::uint64_t> seed;  // reserved; nothing is random
};

struct CommandResult {
  RunManifest manifest;
  int exit_code = 0;
  std::string summary;  // one or more human-readable lines
};

Normalization parse_normalization(const std::string& name);  // "max", "l2"
std::string to_string(Normalization norm);

struct FigureOptions {
  FigureId id = FigureId::Fig4;
  std::optional<double> theta_over_pi;  // replaces theta of every lambda != 0 series
  std::optional<std::int64_t> n_steps;  // replaces the series list by one series
};

/// Writes <fig>_s<i>_N<N>.csv per series plus <fig>.svg.
CommandResult cmd_figure(const CommonOptions& common, const FigureOptions& options);

struct OracleOptions {
  std::int64_t n_max = 12;  // 1..14
  int dim = 64;             // 16..256
  double theta_over_pi = 2.23;  // 0 selects the lambda = 0 realization
};

/// Writes oracle.csv (N, delta_t, fidelity, infidelity). Exit code 1 when
/// some fidelity is below 1 - 1e-8.
CommandResult cmd_oracle(const CommonOptions& common, const OracleOptions& options);

struct SchrodingerOptions {
  int dim = 128;
  double theta_over_pi = 2.23;
  std::int64_t n_steps = 1000;
  double t_c = 1.0;
  double h_start = 0.02;
  int h_levels = 5;  // h_start, h_start/2, ...
};

/// Writes schrodinger_residual.csv (h, residual, ratio) and commutator.json.
CommandResult cmd_schrodinger(const CommonOptions& common, const SchrodingerOptions& options);

/// Writes uncertainty.json.
CommandResult cmd_uncertainty(const CommonOptions& common, const ScalesInput& input);

/// Writes scales.json.
CommandResult cmd_scales(const CommonOptions& common, const ScalesInput& input);

struct PeaksOptions {
  std::vector<double> theta_over_pi = {2.23};
  std::vector<std::int64_t> n_steps = {300, 1200, 2600, 4600};
};

/// Writes peaks.csv with analytic and numeric peak data per (theta, N).
CommandResult cmd_peaks(const CommonOptions& common, const PeaksOptions& options);

}  // namespace chronopath
