#include "chronopath/commands.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "chronopath/errors.hpp"
#include "chronopath/operator_lab.hpp"
#include "chronopath/peaks.hpp"

namespace chronopath {

namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr double kOracleTolerance = 1e-8;

std::map<std::string, std::string> common_params(const CommonOptions& c) {
  return {{"normalization", to_string(c.normalization)},
          {"perturb_theta_on_pole", c.perturb_on_pole ? "true" : "false"},
          {"seed", c.seed ? std::to_string(*c.seed) : "none"}};
}

// Moves theta off the pole lattice for every N in [n_from, n_to] if allowed;
// otherwise lets the kernel raise SingularDenominator for the first bad N.
double resolve_poles(double theta, std::int64_t n_from, std::int64_t n_to, bool perturb) {
  for (std::int64_t n = n_from; n <= n_to; ++n) {
    if (!has_interference_pole(theta, n)) continue;
    if (perturb) return perturb_theta_off_poles(theta, n_from, n_to);
    (void)interference_profile(ModelParams::from_theta(theta, n), Execution::Serial);
    throw SingularDenominator(0, 0, theta);
  }
  return theta;
}

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

Normalization parse_normalization(const std::string& name) {
  if (name == "max") return Normalization::MaxAbs;
  if (name == "l2") return Normalization::L2;
  throw std::invalid_argument("normalization must be 'max' or 'l2'");
}

std::string to_string(Normalization norm) {
  switch (norm) {
    case Normalization::MaxAbs: return "max";
    case Normalization::L2: return "l2";
    case Normalization::None: return "none";
  }
  return "?";
}

CommandResult cmd_figure(const CommonOptions& common, const FigureOptions& options) {
  FigureSpec spec = FigureSpec::defaults(options.id);
  spec.normalization = common.normalization;
  if (options.theta_over_pi && options.id != FigureId::Fig2)
    for (auto& s : spec.series)
      if (s.theta != 0.0) s.theta = *options.theta_over_pi * kPi;
  if (options.n_steps) {
    SeriesSpec one = spec.series.back();
    one.n_steps = *options.n_steps;
    one.vertical_offset = 0.0;
    spec.series = {one};
  }
  std::ostringstream summary;
  for (auto& s : spec.series) {
    if (s.theta == 0.0) continue;
    const double resolved = resolve_poles(s.theta, s.n_steps, s.n_steps, common.perturb_on_pole);
    if (resolved != s.theta)
      summary << "theta perturbed off a pole for N=" << s.n_steps << ": " << format_double(resolved / kPi)
              << " pi\n";
    s.theta = resolved;
  }

  const std::vector<SeriesData> data = compute_figure(spec, Execution::Parallel);
  OutputSink sink(common.out_dir);
  const auto names = write_figure(spec, data, sink);

  auto params = common_params(common);
  params["figure"] = to_string(spec.id);
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& s = spec.series[i];
    const std::string key = "series" + std::to_string(i);
    params[key + ".n_steps"] = std::to_string(s.n_steps);
    params[key + ".theta"] = format_double(s.theta);
    params[key + ".vertical_offset"] = format_double(s.vertical_offset);
  }

  CommandResult result;
  result.manifest = sink.finish("figure", std::move(params));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& s = data[i];
    if (s.spec.theta == 0.0 || options.id == FigureId::Fig2) continue;
    std::size_t best = s.rows.size() / 2;
    for (std::size_t k = best; k < s.rows.size(); ++k)
      if (s.rows[k].magnitude > s.rows[best].magnitude) best = k;
    const double abscissa = s.rows[best].abscissa;
    summary << "N=" << s.spec.n_steps << " peak at n=" << best << ", abscissa "
            << format_double(std::round(abscissa * 1e4) / 1e4) << "\n";
  }
  summary << "wrote " << names.size() << " files to " << common.out_dir.string();
  result.summary = summary.str();
  return result;
}

CommandResult cmd_oracle(const CommonOptions& common, const OracleOptions& options) {
  if (options.n_max < 1 || options.n_max > 14) throw std::invalid_argument("oracle N_max must be in 1..14");
  if (options.dim > 256) throw std::invalid_argument("oracle dim must be at most 256");
  if (options.dim < kMinDim) throw DimTooSmall(options.dim);
  double theta = options.theta_over_pi * kPi;
  const bool commuting = theta == 0.0;
  if (!commuting) theta = resolve_poles(theta, 1, options.n_max, common.perturb_on_pole);
  const auto real = build_realization(options.dim, commuting ? 0.0 : 1.0);

  CsvTable table({"N", "delta_t", "fidelity", "infidelity"});
  CommandResult result;
  double worst = 1.0;
  for (std::int64_t n = 1; n <= options.n_max; ++n) {
    const double dt = step_for_theta(real, theta, n);
    const auto cmp = compare_path_sums(real, n, dt);
    worst = std::min(worst, cmp.fidelity);
    table.add_row(std::vector<double>{static_cast<double>(n), dt, cmp.fidelity, 1.0 - cmp.fidelity});
  }
  OutputSink sink(common.out_dir);
  sink.write("oracle.csv", table.text());
  auto params = common_params(common);
  params["n_max"] = std::to_string(options.n_max);
  params["dim"] = std::to_string(options.dim);
  params["theta"] = format_double(theta);
  params["lambda"] = commuting ? "0" : "1";
  result.manifest = sink.finish("oracle", std::move(params));
  result.exit_code = worst < 1.0 - kOracleTolerance ? 1 : 0;
  result.summary = "worst fidelity " + format_double(worst) + (result.exit_code ? " (FAIL)" : " (ok)");
  return result;
}

CommandResult cmd_schrodinger(const CommonOptions& common, const SchrodingerOptions& options) {
  const double theta = options.theta_over_pi * kPi;
  require_peak_regime(theta);
  if (options.h_levels < 2) throw std::invalid_argument("need at least two h levels");
  if (!(options.h_start > 0.0)) throw std::invalid_argument("h must be positive");
  const double lambda = 1.0;
  const auto params = ModelParams::from_lambda(lambda, std::sqrt(theta / lambda), options.n_steps);
  const auto real = build_realization(options.dim, lambda);

  CsvTable residuals({"h", "residual", "ratio"});
  double h = options.h_start;
  double previous = NAN;
  for (int k = 0; k < options.h_levels; ++k, h /= 2.0) {
    const double r = schrodinger_residual(real, params, options.t_c, h);
    residuals.add_row(std::vector<double>{h, r, previous / r});
    previous = r;
  }

  const PeakAnalysis peaks = analytic_peaks(params);
  const auto c = phenomenological_commutator(real, params);
  const double target = -(theta / (2.0 * kPi)) * lambda;
  const double algebraic = -(peaks.a_plus * peaks.a_plus - peaks.a_minus * peaks.a_minus) * lambda;
  const double rel = std::abs(c - std::complex<double>(0.0, target)) / std::abs(target);
  json j;
  j["theta"] = theta;
  j["theta_over_pi"] = options.theta_over_pi;
  j["lambda"] = lambda;
  j["dim"] = options.dim;
  j["a_plus"] = peaks.a_plus;
  j["a_minus"] = peaks.a_minus;
  j["commutator"] = {{"real", c.real()}, {"imag", c.imag()}};
  j["target_imag"] = target;
  j["algebraic_imag"] = algebraic;
  j["relative_error"] = rel;

  OutputSink sink(common.out_dir);
  sink.write("schrodinger_residual.csv", residuals.text());
  sink.write("commutator.json", json_text(j));
  auto p = common_params(common);
  p["dim"] = std::to_string(options.dim);
  p["theta"] = format_double(theta);
  p["n_steps"] = std::to_string(options.n_steps);
  p["t_c"] = format_double(options.t_c);
  p["h_start"] = format_double(options.h_start);
  p["h_levels"] = std::to_string(options.h_levels);
  CommandResult result;
  result.manifest = sink.finish("schrodinger", std::move(p));
  result.summary = "commutator " + format_double(c.imag()) + "i, target " + format_double(target) +
                   "i, relative error " + format_double(rel);
  return result;
}

namespace {

std::map<std::string, std::string> scales_params(const CommonOptions& common, const ScalesInput& in) {
  auto p = common_params(common);
  p["f"] = format_double(in.f);
  p["delta_t_min"] = format_double(in.delta_t_min);
  p["lambda_override"] = in.lambda_override ? format_double(*in.lambda_override) : "none";
  p["mode"] = in.mode == ScalesMode::Meson ? "meson" : "nature";
  return p;
}

}  // namespace

CommandResult cmd_uncertainty(const CommonOptions& common, const ScalesInput& input) {
  const UncertaintyReport r = uncertainty_report(input);
  const double var_numeric = truncated_gaussian_variance(1.0);
  const double var_closed = (1.0 - 2.0 / kPi) / 4.0;
  json j;
  j["theta_star"] = r.theta_star;
  j["theta_star_over_pi"] = r.theta_star / kPi;
  j["tan_quarter_theta_star"] = std::tan(r.theta_star / 4.0);
  j["lambda_used_per_s2"] = r.lambda_used;
  j["var_tc_bound_s2"] = r.var_tc_bound;
  j["var_H_per_s2"] = r.var_H;
  j["var_tc_energy_time_s2"] = r.var_tc_energy_time;
  j["delta_H_times_delta_tc"] = std::sqrt(r.var_H * r.var_tc_energy_time);
  j["tc_min_peak_s"] = r.tc_min_peak;
  j["delta_tc_s"] = r.delta_tc;
  j["half_normal_variance_numeric"] = var_numeric;
  j["half_normal_variance_closed"] = var_closed;
  j["half_normal_mean_numeric"] = truncated_gaussian_mean(1.0);

  OutputSink sink(common.out_dir);
  sink.write("uncertainty.json", json_text(j));
  CommandResult result;
  result.manifest = sink.finish("uncertainty", scales_params(common, input));
  result.summary = "theta* = " + format_double(r.theta_star / kPi) + " pi";
  return result;
}

CommandResult cmd_scales(const CommonOptions& common, const ScalesInput& input) {
  const PhysicalScales s = physical_scales(input);
  json j;
  j["mode"] = input.mode == ScalesMode::Meson ? "meson" : "nature";
  j["f"] = input.f;
  j["delta_t_min_s"] = input.delta_t_min;
  j["lambda_per_s2"] = s.lambda;
  j["tc_min_peak_s"] = s.tc_min_peak;
  j["delta_tc_s"] = s.delta_tc;
  j["delta_tc_over_delta_t_min"] = s.delta_tc / input.delta_t_min;

  OutputSink sink(common.out_dir);
  sink.write("scales.json", json_text(j));
  CommandResult result;
  result.manifest = sink.finish("scales", scales_params(common, input));
  result.summary = "lambda " + format_double(s.lambda) + " s^-2, tc_min_peak " + format_double(s.tc_min_peak) +
                   " s, delta_tc " + format_double(s.delta_tc) + " s";
  return result;
}

CommandResult cmd_peaks(const CommonOptions& common, const PeaksOptions& options) {
  if (options.theta_over_pi.empty() || options.n_steps.empty())
    throw std::invalid_argument("peaks needs at least one theta and one N");
  std::vector<ModelParams> grid;
  std::ostringstream summary;
  for (double t : options.theta_over_pi) {
    for (std::int64_t n : options.n_steps) {
      double theta = t * kPi;
      require_peak_regime(theta);
      const double resolved = resolve_poles(theta, n, n, common.perturb_on_pole);
      if (resolved != theta)
        summary << "theta perturbed off a pole for N=" << n << "\n";
      grid.push_back(ModelParams::from_theta(resolved, n));
    }
  }
  const auto points = sweep_peaks(grid, Execution::Parallel);

  CsvTable table({"theta_over_pi", "N", "n_plus_analytic", "n_plus_numeric", "n_minus_analytic",
                  "n_minus_numeric", "t_c_peak_analytic", "t_c_peak_numeric", "width_var_tc", "a_plus",
                  "a_minus", "spacing", "spacing_bound_ok"});
  for (const auto& p : points) {
    const double big_n = static_cast<double>(p.params.n_steps());
    const double t_num = (2.0 * static_cast<double>(p.numeric.n_plus) - big_n) * p.params.delta_t();
    const SpacingBound bound = peak_spacing_bound(p.params);
    table.add_row(std::vector<std::string>{
        format_double(p.params.theta() / kPi), std::to_string(p.params.n_steps()),
        format_double(p.analytic.n_plus), std::to_string(p.numeric.n_plus), format_double(p.analytic.n_minus),
        std::to_string(p.numeric.n_minus), format_double(p.analytic.t_c_peak), format_double(t_num),
        format_double(p.analytic.width_var_tc), format_double(p.analytic.a_plus),
        format_double(p.analytic.a_minus), format_double(bound.spacing), bound.bound_ok ? "1" : "0"});
    summary << "theta=" << format_double(p.params.theta() / kPi) << "pi N=" << p.params.n_steps()
            << " t_c_peak " << format_double(std::round(t_num * 1e3) / 1e3) << "\n";
  }
  OutputSink sink(common.out_dir);
  sink.write("peaks.csv", table.text());
  auto params = common_params(common);
  std::string thetas, ns;
  for (double t : options.theta_over_pi) thetas += (thetas.empty() ? "" : ";") + format_double(t);
  for (auto n : options.n_steps) ns += (ns.empty() ? "" : ";") + std::to_string(n);
  params["theta_over_pi"] = thetas;
  params["n_steps"] = ns;
  CommandResult result;
  result.manifest = sink.finish("peaks", std::move(params));
  summary << "wrote peaks.csv";
  result.summary = summary.str();
  return result;
}

}  // namespace chronopath
