#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chronopath/commands.hpp"
#include "chronopath/errors.hpp"

namespace cp = chronopath;

namespace {

constexpr int kExitPole = 2;
constexpr int kExitDomain = 3;
constexpr int kExitArgument = 4;

constexpr const char* kFooter = R"(Exit status: 0 ok, 1 oracle fidelity below 1-1e-8,
2 interference pole (retry with --perturb-theta-on-pole), 3 other domain error,
4 invalid argument.

CSV columns:
  figure       n,abscissa,magnitude_normalized,phase,reference_normalized,vertical_offset
  oracle       N,delta_t,fidelity,infidelity
  schrodinger  h,residual,ratio
  peaks        theta_over_pi,N,n_plus_analytic,n_plus_numeric,n_minus_analytic,
               n_minus_numeric,t_c_peak_analytic,t_c_peak_numeric,width_var_tc,
               a_plus,a_minus,spacing,spacing_bound_ok
Every run writes manifest.json (schema chronopath/1) next to its outputs.
Any flag may be given in a --config file as `name = value`; flags win.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interference-function laboratory: figures, oracles and scale estimates"};
  app.set_version_flag("--version", cp::artifact_version());
  app.footer(kFooter);
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value file mirroring the flags");

  std::string out = "out";
  std::string normalization = "max";
  std::optional<std::uint64_t> seed;
  bool perturb = false;
  std::vector<double> theta_over_pi;
  std::vector<std::int64_t> n_steps;
  std::string figure = "fig4";
  std::optional<int> dim;
  std::int64_t n_max = 12;
  double t_c = 1.0;
  double h_start = 0.02;
  int h_levels = 5;
  double f = 1.0;
  double delta_t_min = cp::kPlanckTime;
  std::optional<double> lambda;
  std::string mode = "meson";

  app.add_option("--out", out, "Output directory")->capture_default_str();
  app.add_option("--normalization", normalization, "Profile scaling")
      ->check(CLI::IsMember({"max", "l2"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "Reserved; every computation is deterministic");
  app.add_flag("--perturb-theta-on-pole", perturb, "Shift theta by +1e-9 steps until no pole remains");
  app.add_option("--theta-over-pi", theta_over_pi, "theta / pi (peaks accepts several)");
  app.add_option("--n-steps", n_steps, "Number of steps N (peaks accepts several)");
  app.add_option("--figure", figure, "Figure to reproduce")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}))
      ->capture_default_str();
  app.add_option("--dim", dim, "Truncation dimension (oracle 64, schrodinger 128)");
  app.add_option("--n-max", n_max, "Largest N for the oracle")->capture_default_str();
  app.add_option("--t-c", t_c, "Clock time for the Schrodinger residual")->capture_default_str();
  app.add_option("--h-start", h_start, "Largest finite-difference step")->capture_default_str();
  app.add_option("--h-levels", h_levels, "Number of halvings of h")->capture_default_str();
  app.add_option("--f", f, "Fraction of contributing particles, (0,1]")->capture_default_str();
  app.add_option("--delta-t-min", delta_t_min, "Minimum time step in seconds")->capture_default_str();
  app.add_option("--lambda", lambda, "Override lambda in s^-2");
  app.add_option("--mode", mode, "Scale mode")->check(CLI::IsMember({"meson", "nature"}))->capture_default_str();

  auto* sc_figure = app.add_subcommand("figure", "Profile CSVs and an SVG overlay for fig2, fig3 or fig4");
  auto* sc_oracle = app.add_subcommand("oracle", "Iterated product vs interference-weighted sum, N = 1..n-max");
  auto* sc_schr = app.add_subcommand("schrodinger", "Finite-difference residual and phenomenological commutator");
  auto* sc_unc = app.add_subcommand("uncertainty", "Minimum-uncertainty theta and variance formulas");
  auto* sc_scales = app.add_subcommand("scales", "Physical time scales in SI units");
  auto* sc_peaks = app.add_subcommand("peaks", "Analytic vs numeric peak positions over a (theta, N) grid");
  for (auto* sc : {sc_figure, sc_oracle, sc_schr, sc_unc, sc_scales, sc_peaks}) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    cp::CommonOptions common;
    common.out_dir = out;
    common.normalization = cp::parse_normalization(normalization);
    common.perturb_on_pole = perturb;
    common.seed = seed;

    cp::ScalesInput scales;
    scales.f = f;
    scales.delta_t_min = delta_t_min;
    scales.lambda_override = lambda;
    scales.mode = mode == "nature" ? cp::ScalesMode::Nature : cp::ScalesMode::Meson;

    auto single = [](const auto& values, const char* name) {
      if (values.size() > 1) throw std::invalid_argument(std::string("this command takes one ") + name);
      return values.empty() ? std::nullopt : std::optional(values.front());
    };

    cp::CommandResult result;
    if (sc_figure->parsed()) {
      cp::FigureOptions o;
      o.id = cp::parse_figure_id(figure);
      o.theta_over_pi = single(theta_over_pi, "--theta-over-pi");
      o.n_steps = single(n_steps, "--n-steps");
      result = cp::cmd_figure(common, o);
    } else if (sc_oracle->parsed()) {
      cp::OracleOptions o;
      o.n_max = n_max;
      if (dim) o.dim = *dim;
      if (auto t = single(theta_over_pi, "--theta-over-pi")) o.theta_over_pi = *t;
      result = cp::cmd_oracle(common, o);
    } else if (sc_schr->parsed()) {
      cp::SchrodingerOptions o;
      if (dim) o.dim = *dim;
      if (auto t = single(theta_over_pi, "--theta-over-pi")) o.theta_over_pi = *t;
      if (auto n = single(n_steps, "--n-steps")) o.n_steps = *n;
      o.t_c = t_c;
      o.h_start = h_start;
      o.h_levels = h_levels;
      result = cp::cmd_schrodinger(common, o);
    } else if (sc_unc->parsed()) {
      result = cp::cmd_uncertainty(common, scales);
    } else if (sc_scales->parsed()) {
      result = cp::cmd_scales(common, scales);
    } else {
      cp::PeaksOptions o;
      if (!theta_over_pi.empty()) o.theta_over_pi = theta_over_pi;
      if (!n_steps.empty()) o.n_steps = n_steps;
      result = cp::cmd_peaks(common, o);
    }
    std::cout << result.summary << "\n";
    std::cout << "manifest: " << (common.out_dir / cp::kManifestName).string() << "\n";
    return result.exit_code;
  } catch (const cp::SingularDenominator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPole;
  } catch (const cp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
