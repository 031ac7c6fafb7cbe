#include "chronopath/figures.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "chronopath/errors.hpp"
#include "chronopath/log_complex.hpp"
#include "chronopath/peaks.hpp"

namespace chronopath {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> normalize_linear(std::vector<double> v, Normalization norm) {
  double scale = 1.0;
  if (norm == Normalization::MaxAbs) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    scale = m;
  } else if (norm == Normalization::L2) {
    double s = 0.0;
    for (double x : v) s += x * x;
    scale = std::sqrt(s);
  }
  if (scale > 0.0)
    for (double& x : v) x /= scale;
  return v;
}

}  // namespace

FigureId parse_figure_id(const std::string& name) {
  if (name == "fig2") return FigureId::Fig2;
  if (name == "fig3") return FigureId::Fig3;
  if (name == "fig4") return FigureId::Fig4;
  throw std::invalid_argument("unknown figure '" + name + "' (expected fig2, fig3 or fig4)");
}

std::string to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
  }
  return "fig?";
}

FigureSpec FigureSpec::defaults(FigureId id) {
  FigureSpec spec;
  spec.id = id;
  const double theta = 2.23 * kPi;
  switch (id) {
    case FigureId::Fig2:
      spec.series = {{10, 0.0, 0.0, "red"}, {100, 0.0, 0.2, "green"}, {1000, 0.0, 0.4, "blue"}};
      break;
    case FigureId::Fig3:
      spec.series = {{100, theta, 0.0, "red"}, {1000, theta, 0.2, "green"}, {10000, theta, 0.4, "blue"}};
      break;
    case FigureId::Fig4:
      spec.series = {{1000, 0.0, 0.0, "black"},
                     {300, theta, 0.0, "red"},
                     {1200, theta, 0.0, "green"},
                     {2600, theta, 0.0, "deepskyblue"},
                     {4600, theta, 0.0, "darkblue"}};
      break;
  }
  return spec;
}

std::string FigureSpec::abscissa_label() const {
  switch (id) {
    case FigureId::Fig2: return "x/sigma_x";
    case FigureId::Fig3: return "(t_c - t_c_peak)/sigma_t";
    case FigureId::Fig4: return "t_c/sigma_t";
  }
  return "";
}

CsvTable SeriesData::to_csv() const {
  CsvTable table({std::begin(kFigureColumns), std::end(kFigureColumns)});
  for (const auto& r : rows)
    table.add_row(std::vector<std::string>{std::to_string(r.n), format_double(r.abscissa),
                                           format_double(r.magnitude), format_double(r.phase),
                                           format_double(r.reference), format_double(r.offset)});
  return table;
}

SeriesData compute_series(FigureId id, Normalization norm, const SeriesSpec& series, Execution exec) {
  const std::int64_t big_n = series.n_steps;
  if (big_n < 1) throw std::invalid_argument("series needs N >= 1");
  const double sqrt_n = std::sqrt(static_cast<double>(big_n));

  SeriesData out;
  out.spec = series;
  out.rows.resize(static_cast<std::size_t>(big_n + 1));
  for (std::int64_t n = 0; n <= big_n; ++n) {
    auto& r = out.rows[n];
    r.n = n;
    r.abscissa = static_cast<double>(2 * n - big_n) / sqrt_n;
    r.offset = series.vertical_offset;
  }

  std::vector<double> magnitude, reference;
  if (series.theta == 0.0) {
    if (id == FigureId::Fig3) throw std::invalid_argument("fig3 series need theta in (2 pi, 4 pi)");
    magnitude = normalized_magnitudes(binomial_log_profile(big_n), norm);
    reference.resize(magnitude.size());
    for (std::int64_t n = 0; n <= big_n; ++n)
      reference[n] = gaussian_envelope(out.rows[n].abscissa, 1.0);
    reference = normalize_linear(std::move(reference), norm);
  } else {
    const auto params = ModelParams::from_theta(series.theta, big_n);
    const PathAmplitudeProfile profile = interference_profile(params, exec);
    std::vector<LogComplex> amps;
    amps.reserve(profile.entries.size());
    for (const auto& e : profile.entries) amps.push_back(e.amp);
    magnitude = normalized_magnitudes(amps, norm);
    for (std::int64_t n = 0; n <= big_n; ++n) out.rows[n].phase = amps[n].is_zero() ? 0.0 : amps[n].phase();

    if (params.peak_regime()) {
      std::vector<LogComplex> approx;
      approx.reserve(amps.size());
      for (std::int64_t n = 0; n <= big_n; ++n) approx.push_back(peak_approximant(params, Branch::Plus, n));
      reference = normalized_magnitudes(approx, norm);
      if (id == FigureId::Fig3) {
        const double shift = analytic_peaks(params).t_c_peak / params.sigma_t();
        for (auto& r : out.rows) r.abscissa -= shift;
      }
    } else {
      if (id == FigureId::Fig3) throw ThetaOutOfRange(series.theta);
      reference.assign(magnitude.size(), 0.0);
    }
  }
  for (std::int64_t n = 0; n <= big_n; ++n) {
    out.rows[n].magnitude = magnitude[n];
    out.rows[n].reference = reference[n];
  }
  return out;
}

std::vector<SeriesData> compute_figure(const FigureSpec& spec, Execution exec) {
  const auto count = static_cast<std::ptrdiff_t>(spec.series.size());
  std::vector<SeriesData> out(spec.series.size());
  std::vector<std::exception_ptr> errors(spec.series.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        out[i] = compute_series(spec.id, spec.normalization, spec.series[i], Execution::Serial);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      try {
        out[i] = compute_series(spec.id, spec.normalization, spec.series[i], Execution::Serial);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  // report the first failing series in listed order
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string series_file_name(FigureId id, std::size_t index, const SeriesSpec& series) {
  return to_string(id) + "_s" + std::to_string(index) + "_N" + std::to_string(series.n_steps) + ".csv";
}

std::vector<std::string> write_figure(const FigureSpec& spec, const std::vector<SeriesData>& data,
                                      OutputSink& sink) {
  std::vector<std::string> names;
  SvgPlot plot;
  plot.title = to_string(spec.id);
  plot.x_label = spec.abscissa_label();
  plot.y_label = spec.id == FigureId::Fig2 ? "B_n (scaled)" : "|I| (scaled)";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& s = data[i];
    const std::string name = series_file_name(spec.id, i, s.spec);
    sink.write(name, s.to_csv().text());
    names.push_back(name);

    SvgSeries main, ref;
    main.colour = ref.colour = s.spec.colour.empty() ? "black" : s.spec.colour;
    main.label = "N=" + std::to_string(s.spec.n_steps) + (s.spec.theta == 0.0 ? " (lambda=0)" : "");
    for (const auto& r : s.rows) {
      main.x.push_back(r.abscissa);
      main.y.push_back(r.magnitude + r.offset);
      ref.x.push_back(r.abscissa);
      ref.y.push_back(r.reference + r.offset);
    }
    main.markers = spec.id != FigureId::Fig4;
    plot.series.push_back(std::move(main));
    if (spec.id != FigureId::Fig4) plot.series.push_back(std::move(ref));
  }
  const std::string svg = to_string(spec.id) + ".svg";
  sink.write(svg, render_svg(plot));
  names.push_back(svg);
  return names;
}

}  // namespace chronopath
