#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "chronopath/commands.hpp"
#include "chronopath/errors.hpp"

using namespace chronopath;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("chronopath_cmd_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

// strtod accepts subnormal values that std::stod rejects
double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

CommonOptions common_at(const fs::path& dir) {
  CommonOptions c;
  c.out_dir = dir;
  return c;
}

}  // namespace

TEST_CASE("fig4 reproduces the representative clock times") {
  const fs::path dir = fresh_dir("fig4");
  const auto r = cmd_figure(common_at(dir), {});
  CHECK(r.exit_code == 0);
  CHECK(verify_manifest(dir).empty());
  CHECK(r.manifest.outputs.size() == 6);

  const std::int64_t sizes[] = {1000, 300, 1200, 2600, 4600};
  const double expect[] = {0.0, 15.5, 31.1, 45.7, 60.8};
  for (int i = 0; i < 5; ++i) {
    const auto rows = read_csv(dir / ("fig4_s" + std::to_string(i) + "_N" + std::to_string(sizes[i]) + ".csv"));
    REQUIRE(rows.size() == static_cast<std::size_t>(sizes[i] + 2));
    CHECK(rows[0] == std::vector<std::string>{"n", "abscissa", "magnitude_normalized", "phase",
                                              "reference_normalized", "vertical_offset"});
    double best = -1, at = 0;
    for (std::size_t k = 1 + rows.size() / 2 - 1; k < rows.size(); ++k) {
      const double m = num(rows[k][2]);
      if (m > best) {
        best = m;
        at = num(rows[k][1]);
      }
    }
    CHECK(best == doctest::Approx(1.0));
    CHECK(std::abs(at - expect[i]) <= 0.2);
  }
  fs::remove_all(dir);
}

TEST_CASE("figure output is byte-identical across runs") {
  for (auto id : {FigureId::Fig2, FigureId::Fig3}) {
    const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
    FigureOptions o;
    o.id = id;
    const auto ra = cmd_figure(common_at(a), o);
    const auto rb = cmd_figure(common_at(b), o);
    REQUIRE(ra.manifest.outputs.size() == rb.manifest.outputs.size());
    for (std::size_t i = 0; i < ra.manifest.outputs.size(); ++i) {
      CHECK(ra.manifest.outputs[i].path == rb.manifest.outputs[i].path);
      CHECK(ra.manifest.outputs[i].sha256 == rb.manifest.outputs[i].sha256);
      CHECK(slurp(a / ra.manifest.outputs[i].path) == slurp(b / rb.manifest.outputs[i].path));
    }
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST_CASE("fig2 applies the vertical offsets") {
  const fs::path dir = fresh_dir("fig2");
  cmd_figure(common_at(dir), {FigureId::Fig2, std::nullopt, std::nullopt});
  const char* names[] = {"fig2_s0_N10.csv", "fig2_s1_N100.csv", "fig2_s2_N1000.csv"};
  const char* offsets[] = {"0", "0.2", "0.4"};
  for (int i = 0; i < 3; ++i) {
    const auto rows = read_csv(dir / names[i]);
    CHECK(rows[1][5] == offsets[i]);
    CHECK(rows.back()[5] == offsets[i]);
  }
  fs::remove_all(dir);
}

TEST_CASE("l2 normalization and N override") {
  const fs::path dir = fresh_dir("l2");
  auto common = common_at(dir);
  common.normalization = Normalization::L2;
  FigureOptions o;
  o.id = FigureId::Fig3;
  o.n_steps = 500;
  o.theta_over_pi = 3.1;
  cmd_figure(common, o);
  const auto rows = read_csv(dir / "fig3_s0_N500.csv");
  REQUIRE(rows.size() == 502);
  double sum = 0, ref = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    sum += std::pow(num(rows[k][2]), 2);
    ref += std::pow(num(rows[k][4]), 2);
  }
  CHECK(sum == doctest::Approx(1.0));
  CHECK(ref == doctest::Approx(1.0));
  fs::remove_all(dir);
}

TEST_CASE("figure on a pole fails unless perturbation is requested") {
  const fs::path dir = fresh_dir("fig_pole");
  FigureOptions o;
  o.id = FigureId::Fig4;
  o.theta_over_pi = 3.0;
  o.n_steps = 300;
  CHECK_THROWS_AS(cmd_figure(common_at(dir), o), SingularDenominator);
  auto common = common_at(dir);
  common.perturb_on_pole = true;
  const auto r = cmd_figure(common, o);
  CHECK(r.summary.find("perturbed") != std::string::npos);
  const double used = num(r.manifest.params.at("series0.theta"));
  CHECK(used > 3 * kPi);
  CHECK(used - 3 * kPi < 1e-8);
  fs::remove_all(dir);
}

TEST_CASE("oracle command") {
  const fs::path dir = fresh_dir("oracle");
  const auto r = cmd_oracle(common_at(dir), {});
  CHECK(r.exit_code == 0);
  const auto rows = read_csv(dir / "oracle.csv");
  REQUIRE(rows.size() == 13);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(num(rows[k][2]) >= 1 - 1e-8);

  OracleOptions commuting;
  commuting.theta_over_pi = 0.0;
  const auto c = cmd_oracle(common_at(dir), commuting);
  CHECK(c.exit_code == 0);
  const auto commuting_rows = read_csv(dir / "oracle.csv");
  for (std::size_t k = 1; k < commuting_rows.size(); ++k)
    CHECK(std::abs(num(commuting_rows[k][2]) - 1.0) <= 1e-12);

  OracleOptions pole;
  pole.theta_over_pi = 3.0;
  CHECK_THROWS_AS(cmd_oracle(common_at(dir), pole), SingularDenominator);
  OracleOptions small;
  small.dim = 8;
  CHECK_THROWS_AS(cmd_oracle(common_at(dir), small), DimTooSmall);
  OracleOptions big;
  big.n_max = 15;
  CHECK_THROWS_AS(cmd_oracle(common_at(dir), big), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("schrodinger command") {
  const fs::path dir = fresh_dir("schr");
  const auto r = cmd_schrodinger(common_at(dir), {});
  CHECK(r.exit_code == 0);
  const auto rows = read_csv(dir / "schrodinger_residual.csv");
  REQUIRE(rows.size() == 6);
  for (std::size_t k = 2; k < rows.size(); ++k) CHECK(num(rows[k][2]) == doctest::Approx(4.0).epsilon(0.05));
  const auto j = nlohmann::json::parse(slurp(dir / "commutator.json"));
  CHECK(j["relative_error"].get<double>() <= 1e-8);
  CHECK(j["target_imag"].get<double>() == doctest::Approx(-1.115));
  CHECK(j["algebraic_imag"].get<double>() == doctest::Approx(-1.115));
  SchrodingerOptions bad;
  bad.theta_over_pi = 1.0;
  CHECK_THROWS_AS(cmd_schrodinger(common_at(dir), bad), ThetaOutOfRange);
  fs::remove_all(dir);
}

TEST_CASE("scales and uncertainty commands") {
  const fs::path dir = fresh_dir("scales");
  ScalesInput nature;
  nature.mode = ScalesMode::Nature;
  cmd_scales(common_at(dir), nature);
  auto j = nlohmann::json::parse(slurp(dir / "scales.json"));
  CHECK(j["delta_tc_over_delta_t_min"].get<double>() == doctest::Approx(0.2405).epsilon(1e-3));
  CHECK(j["mode"] == "nature");

  cmd_uncertainty(common_at(dir), {});
  j = nlohmann::json::parse(slurp(dir / "uncertainty.json"));
  CHECK(j["theta_star_over_pi"].get<double>() == doctest::Approx(2.2288).epsilon(1e-4));
  CHECK(j["half_normal_variance_numeric"].get<double>() ==
        doctest::Approx(j["half_normal_variance_closed"].get<double>()).epsilon(1e-3));
  // both commands wrote into the same directory; the manifest lists the last run only
  CHECK_FALSE(verify_manifest(dir).empty());

  ScalesInput bad;
  bad.f = 2.0;
  CHECK_THROWS_AS(cmd_scales(common_at(dir), bad), InvalidFraction);
  fs::remove_all(dir);
}

TEST_CASE("peaks command") {
  const fs::path dir = fresh_dir("peaks");
  const auto r = cmd_peaks(common_at(dir), {});
  CHECK(r.exit_code == 0);
  const auto rows = read_csv(dir / "peaks.csv");
  REQUIRE(rows.size() == 5);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(std::abs(num(rows[k][3]) - num(rows[k][2])) <= 1.0);
    CHECK(std::abs(num(rows[k][7]) - num(rows[k][6])) <= 0.2);
    CHECK(rows[k][12] == "1");
  }
  CHECK(verify_manifest(dir).empty());
  PeaksOptions out_of_range;
  out_of_range.theta_over_pi = {1.5};
  CHECK_THROWS_AS(cmd_peaks(common_at(dir), out_of_range), ThetaOutOfRange);
  fs::remove_all(dir);
}

TEST_CASE("normalization names") {
  CHECK(parse_normalization("max") == Normalization::MaxAbs);
  CHECK(parse_normalization("l2") == Normalization::L2);
  CHECK_THROWS_AS(parse_normalization("sum"), std::invalid_argument);
  CHECK(parse_figure_id("fig3") == FigureId::Fig3);
  CHECK_THROWS_AS(parse_figure_id("fig5"), std::invalid_argument);
}
