#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chronopath/amplitude.hpp"
#include "chronopath/errors.hpp"
#include "chronopath/operator_lab.hpp"
#include "chronopath/peaks.hpp"

using namespace chronopath;
constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

namespace {

ModelParams params_for(const OperatorRealization& real, double theta, std::int64_t big_n) {
  return ModelParams::from_lambda(real.lambda(), std::sqrt(theta / real.lambda()), big_n);
}

}  // namespace

TEST_CASE("canonical pair satisfies the commutator on the interior") {
  for (int dim : {64, 128})
    for (double lambda : {1.0, 2.5, -0.7}) {
      const auto real = build_realization(dim, lambda);
      CHECK(commutator_defect(real) <= 1e-10);
      CHECK(time_reversal_defect(real) <= 1e-12);
      CHECK(commutator_defect_full(real) > 1.0);  // truncation edge
    }
  CHECK_THROWS_AS(build_realization(8, 1.0), DimTooSmall);
}

TEST_CASE("symmetry maps") {
  const auto real = build_realization(64, 1.0);
  const CMatrix par2 = real.parity() * real.parity();
  CHECK((par2 - CMatrix::Identity(64, 64)).cwiseAbs().maxCoeff() == 0.0);
  const CVector& phi = real.reference_state();
  CHECK((real.time_reverse(real.time_reverse(phi)) - phi).norm() == 0.0);
  CHECK((real.time_reverse(phi) - phi).norm() == 0.0);  // real reference state
  CHECK(phi.norm() == doctest::Approx(1.0));
  CHECK(parity_translation_check(real, 0.0) == 0.0);
  const auto big = build_realization(128, 1.0);
  CHECK(parity_translation_check(big, 1.0) <= 1e-10);
  CHECK(parity_momentum_check(big) <= 1e-12);
  CHECK_THROWS_AS(parity_translation_check(big, 100.0), std::invalid_argument);
}

TEST_CASE("propagators are unitary and cached") {
  const auto real = build_realization(64, 1.0);
  const CMatrix& u = real.propagator(Hamiltonian::Forward, 0.3);
  CHECK((u.adjoint() * u - CMatrix::Identity(64, 64)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(&u == &real.propagator(Hamiltonian::Forward, 0.3));
  const CVector v = real.evolve(Hamiltonian::Backward, -1.7, real.reference_state());
  CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  CHECK((u * real.reference_state() - real.evolve(Hamiltonian::Forward, 0.3, real.reference_state())).norm() <= 1e-12);

  std::vector<const CMatrix*> seen(8);
#pragma omp parallel for num_threads(4)
  for (int i = 0; i < 8; ++i) seen[i] = &real.propagator(Hamiltonian::Backward, 0.125);
  for (auto* p : seen) CHECK(p == seen.front());
}

TEST_CASE("N = 1 path sum is the two-term operator") {
  const auto real = build_realization(64, 1.0);
  const double dt = 0.2;
  const CVector expect = 0.5 * (real.evolve(Hamiltonian::Backward, -dt, real.reference_state()) +
                                real.evolve(Hamiltonian::Forward, dt, real.reference_state()));
  CHECK((path_sum_direct(real, 1, dt) - expect).norm() <= 1e-14);
}

TEST_CASE("N = 2 closed form uses the weights 1, 2cos(z/2)e^{-iz/2}, 1") {
  const auto real = build_realization(64, 1.0);
  const double dt = 0.4;
  const double z = dt * dt;
  const CVector& phi = real.reference_state();
  auto term = [&](int n) {
    return real.evolve(Hamiltonian::Backward, -(2 - n) * dt, real.evolve(Hamiltonian::Forward, n * dt, phi));
  };
  const CVector expect = 0.25 * (term(0) + std::polar(2 * std::cos(z / 2), -z / 2) * term(1) + term(2));
  CHECK((path_sum_closed(real, 2, dt) - expect).norm() <= 1e-13);
  CHECK(fidelity(path_sum_direct(real, 2, dt), expect) >= 1 - 1e-12);
}

TEST_CASE("iterated product and interference-weighted sum agree") {
  for (int dim : {64, 128}) {
    const auto real = build_realization(dim, 1.0);
    for (double theta : {2.23 * kPi, perturb_theta_off_poles(3 * kPi, 1, 12)}) {
      for (int big_n = 1; big_n <= 12; ++big_n) {
        const auto r = compare_path_sums(real, big_n, step_for_theta(real, theta, big_n));
        INFO("dim=" << dim << " theta/pi=" << theta / kPi << " N=" << big_n);
        CHECK(r.fidelity >= 1 - 1e-8);
      }
    }
  }
}

TEST_CASE("closed form propagates poles") {
  const auto real = build_realization(64, 1.0);
  CHECK_THROWS_AS(path_sum_closed(real, 3, step_for_theta(real, 3 * kPi, 3)), SingularDenominator);
  CHECK_THROWS_AS(step_for_theta(real, -1.0, 3), std::invalid_argument);
}

TEST_CASE("commuting limit reduces to the binomial sum") {
  const auto real = build_realization(64, 0.0);
  CHECK(real.kind() == RealizationKind::Clock);
  CHECK(commutator_defect(real) == 0.0);
  for (int big_n : {1, 5, 12}) {
    const double dt = step_for_theta(real, 0.0, big_n);
    const CVector direct = path_sum_direct(real, big_n, dt);
    CHECK((direct - binomial_path_sum(real, big_n, dt)).norm() <= 1e-13);
    CHECK(fidelity(direct, path_sum_closed(real, big_n, dt)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("T-invariant temporal profile is binomial and near Gaussian") {
  const int dim = 256;
  const std::int64_t big_n = 200;
  const double dt = 1.0 / std::sqrt(static_cast<double>(big_n));
  // this spacing makes time-translated reference states orthogonal
  const auto real = build_clock_realization(dim, kPi / (dim * dt));
  const auto proj = temporal_projection(real, path_sum_direct(real, big_n, dt), big_n, dt);
  std::vector<double> mags;
  for (const auto& c : proj) mags.push_back(std::abs(c));
  const double top = *std::max_element(mags.begin(), mags.end());
  const auto binom = binomial_profile(big_n, Normalization::MaxAbs);
  double vs_binom = 0.0, vs_gauss = 0.0;
  for (std::int64_t n = 0; n <= big_n; ++n) {
    vs_binom = std::max(vs_binom, std::abs(mags[n] / top - binom[n]));
    const double x = (2.0 * n - big_n) / std::sqrt(static_cast<double>(big_n));
    vs_gauss = std::max(vs_gauss, std::abs(mags[n] / top - gaussian_envelope(x, 1.0)));
  }
  CHECK(vs_binom <= 1e-10);
  CHECK(vs_gauss <= 0.02);
}

TEST_CASE("reordering the two exponentials costs a c-number phase") {
  const auto real = build_realization(128, 1.0);
  const auto zero = bch_reorder_check(real, 0.0, 0.3);
  CHECK(zero.discrepancy == 0.0);
  const auto r = bch_reorder_check(real, 0.1, 0.1);
  CHECK(r.discrepancy <= 1e-8);
  CHECK(std::abs(wrap_phase(r.phase - 0.01)) <= 1e-8);
  const auto lam = build_realization(128, 2.0);
  const auto s = bch_reorder_check(lam, 0.5, -0.7);
  CHECK(s.discrepancy <= 1e-8);
  CHECK(std::abs(wrap_phase(s.phase - 2.0 * 0.5 * -0.7)) <= 1e-8);
  CHECK_THROWS_AS(bch_reorder_check(real, 100.0, 0.1), std::domain_error);
}

TEST_CASE("coarse-grained state") {
  const auto real = build_realization(128, 1.0);
  const auto params = params_for(real, 2.23 * kPi, 12);
  const CVector at0 = coarse_grain_state(real, params, 0.0);
  CHECK((at0 - real.reference_state()).norm() <= 1e-12);
  // the single peak term and the coarse-grained state differ by a phase
  CHECK(fidelity(coarse_grain_state(real, params), peak_term_state(real, params)) >= 1 - 1e-6);
  CHECK_THROWS_AS(coarse_grain_state(real, params_for(real, kPi, 12), 0.5), ThetaOutOfRange);
  CHECK_THROWS_AS(coarse_grain_state(real, ModelParams::from_theta(7.0, 12, 2.0), 0.5), std::invalid_argument);
}

TEST_CASE("finite-difference Schrodinger residual is second order") {
  const auto real = build_realization(128, 1.0);
  const auto params = params_for(real, 2.23 * kPi, 1000);
  const double r1 = schrodinger_residual(real, params, 1.0, 0.02);
  const double r2 = schrodinger_residual(real, params, 1.0, 0.01);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("phenomenological commutator is theta/2pi times the elemental one") {
  const auto real = build_realization(64, 1.0);
  for (double theta : {2.23 * kPi, 3 * kPi, 2 * kPi * (1 + 1e-6)}) {
    const auto params = params_for(real, theta, 1000);
    const cd c = phenomenological_commutator(real, params);
    const cd target(0.0, -theta / (2 * kPi));
    CHECK(std::abs(c - target) / std::abs(target) <= 1e-8);
    const auto peaks = analytic_peaks(params);
    CHECK((peaks.a_plus * peaks.a_plus - peaks.a_minus * peaks.a_minus) == doctest::Approx(-target.imag()));
  }
  const cd at223 = phenomenological_commutator(real, params_for(real, 2.23 * kPi, 1000));
  CHECK(at223.imag() == doctest::Approx(-1.115).epsilon(1e-10));
}

TEST_CASE("oscillator ground state saturates the energy uncertainty bound") {
  for (double lambda : {1.0, 3.0}) {
    const auto real = build_realization(64, lambda);
    const auto m = energy_moments(real, ground_state(real));
    CHECK(std::abs(std::sqrt(m.var_forward * m.var_backward) - lambda / 2) <= 1e-10);
    CHECK(std::abs(m.covariance) <= 1e-10);
  }
}
