#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chronopath/amplitude.hpp"
#include "chronopath/report.hpp"

namespace chronopath {

enum class FigureId { Fig2, Fig3, Fig4 };

FigureId parse_figure_id(const std::string& name);  // "fig2", "fig3", "fig4"
std::string to_string(FigureId id);

struct SeriesSpec {
  std::int64_t n_steps = 0;
  double theta = 0.0;  // 0 for the binomial (lambda = 0) series
  double vertical_offset = 0.0;
  std::string colour;
};

/// Series layout of one figure.
///   fig2: abscissa x/sigma_x = (2n - N)/sqrt N, binomial dots vs Gaussian
///   fig3: abscissa (t_c - t_c^(peak))/sigma_t, |I| dots vs |f+ g+|
///   fig4: abscissa t_c/sigma_t, |I| curves (binomial when theta = 0)
struct FigureSpec {
  FigureId id = FigureId::Fig4;
  Normalization normalization = Normalization::MaxAbs;
  std::vector<SeriesSpec> series;

  static FigureSpec defaults(FigureId id);
  std::string abscissa_label() const;
};

/// CSV columns, in order.
inline constexpr const char* kFigureColumns[] = {
    "n", "abscissa", "magnitude_normalized", "phase", "reference_normalized", "vertical_offset"};

struct FigureRow {
  std::int64_t n = 0;
  double abscissa = 0.0;
  double magnitude = 0.0;
  double phase = 0.0;
  double reference = 0.0;
  double offset = 0.0;
};

struct SeriesData {
  SeriesSpec spec;
  std::vector<FigureRow> rows;  // N + 1 rows, n ascending

  CsvTable to_csv() const;
};

/// Throws SingularDenominator for a theta on the pole lattice.
SeriesData compute_series(FigureId id, Normalization norm, const SeriesSpec& series,
                          Execution exec = Execution::Serial);

/// All series of a figure; the parallel path computes one series per task.
std::vector<SeriesData> compute_figure(const FigureSpec& spec, Execution exec = Execution::Parallel);

/// e.g. "fig4_s1_N1200.csv".
std::string series_file_name(FigureId id, std::size_t index, const SeriesSpec& series);

/// Writes one CSV per series and one SVG overlay. Returns the names written.
std::vector<std::string> write_figure(const FigureSpec& spec, const std::vector<SeriesData>& data,
                                      OutputSink& sink);

}  // namespace chronopath
