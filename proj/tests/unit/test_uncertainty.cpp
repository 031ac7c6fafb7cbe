#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chronopath/errors.hpp"
#include "chronopath/uncertainty.hpp"

using namespace chronopath;
constexpr double kPi = std::numbers::pi;

TEST_CASE("minimum-uncertainty theta") {
  const double t = solve_min_uncertainty_theta();
  CHECK(t > 2 * kPi);
  CHECK(t < 4 * kPi);
  CHECK(std::abs(t / kPi - 2.2288) <= 1e-4);
  CHECK(std::tan(t / 4) == doctest::Approx(-5.504).epsilon(0.001 / 5.504));
  CHECK(std::abs(std::tan(t / 4) + 2 / (1 - 2 / kPi)) < 1e-9);
}

TEST_CASE("variance formulas coincide at theta*") {
  const double t = solve_min_uncertainty_theta();
  for (double lambda : {1.0, 1e57}) {
    const auto v = variance_bounds(t, lambda);
    CHECK(std::abs(v.var_tc_bound - v.var_tc_energy_time) / v.var_tc_energy_time <= 1e-10);
    CHECK(std::sqrt(v.var_H * v.var_tc_energy_time) == doctest::Approx(0.5 * std::sqrt(1 - 2 / kPi)));
  }
  CHECK(variance_bounds(3 * kPi, 1.0).var_H == 0.25);
  CHECK(std::sqrt(0.25 * (1 - 2 / kPi)) == doctest::Approx(0.3014).epsilon(1e-3));
  CHECK_THROWS_AS(variance_bounds(kPi, 1.0), ThetaOutOfRange);
  CHECK_THROWS_AS(variance_bounds(3 * kPi, -1.0), std::invalid_argument);
}

TEST_CASE("half-normal variance by quadrature") {
  const double closed = (1 - 2 / kPi) / 4;
  CHECK(closed == doctest::Approx(0.0908451).epsilon(1e-6));
  CHECK(std::abs(truncated_gaussian_variance(1.0) - closed) / closed <= 1e-3);
  CHECK(std::abs(truncated_gaussian_variance(1.0, 1000) - closed) / closed <= 1e-3);
  CHECK(truncated_gaussian_variance(2.0) == doctest::Approx(truncated_gaussian_variance(1.0) / 4).epsilon(1e-12));
  CHECK(truncated_gaussian_variance(1e-29) == doctest::Approx((1 - 2 / kPi) / (4e-58)).epsilon(1e-3));
  // the mean settles between grid resolutions
  CHECK(truncated_gaussian_mean(1.0, 2000) == doctest::Approx(truncated_gaussian_mean(1.0, 8000)).epsilon(1e-9));
  CHECK_THROWS_AS(truncated_gaussian_variance(1.0, 999), std::invalid_argument);
  CHECK_THROWS_AS(truncated_gaussian_variance(0.0), std::invalid_argument);
}

TEST_CASE("meson-scale quantities") {
  const auto s = physical_scales({});
  CHECK(s.lambda == 1e57);
  CHECK(s.tc_min_peak == doctest::Approx(1.16e-13).epsilon(0.01));
  CHECK(s.delta_tc == doctest::Approx(1.906e-29).epsilon(0.01));
  CHECK(s.tc_min_peak * s.lambda * kPlanckTime == doctest::Approx(2 * kPi).epsilon(1e-15));

  ScalesInput quarter;
  quarter.f = 0.0625;
  const auto q = physical_scales(quarter);
  CHECK(q.tc_min_peak == doctest::Approx(s.tc_min_peak * 4).epsilon(1e-12));
  CHECK(q.delta_tc == doctest::Approx(s.delta_tc * 2).epsilon(1e-12));
}

TEST_CASE("nature-chosen quantities") {
  ScalesInput in;
  in.mode = ScalesMode::Nature;
  const auto s = physical_scales(in);
  CHECK(s.lambda == doctest::Approx(2.155e87).epsilon(1e-3));
  CHECK(s.delta_tc / kPlanckTime == doctest::Approx(0.2405).epsilon(1e-3));
  CHECK(s.tc_min_peak == doctest::Approx(kPlanckTime));
}

TEST_CASE("scale inputs are validated") {
  for (double f : {0.0, -0.1, 1.5, std::nan("")}) {
    ScalesInput bad;
    bad.f = f;
    CHECK_THROWS_AS(physical_scales(bad), InvalidFraction);
  }
  ScalesInput neg;
  neg.delta_t_min = 0.0;
  CHECK_THROWS_AS(physical_scales(neg), std::invalid_argument);
}

TEST_CASE("minimum clock time falls as lambda grows") {
  double previous = INFINITY;
  for (double lambda : {1e50, 1e55, 1e57, 1e60, 1e87}) {
    ScalesInput in;
    in.lambda_override = lambda;
    const auto s = physical_scales(in);
    CHECK(s.lambda == lambda);
    CHECK(s.tc_min_peak < previous);
    previous = s.tc_min_peak;
  }
}

TEST_CASE("uncertainty report gathers every field") {
  const auto r = uncertainty_report({});
  CHECK(r.theta_star == solve_min_uncertainty_theta());
  CHECK(r.lambda_used == 1e57);
  CHECK(r.var_tc_bound > 0);
  CHECK(r.var_H == doctest::Approx(0.25e57));
  CHECK(r.delta_tc == doctest::Approx(std::sqrt(r.var_tc_energy_time)));
}
