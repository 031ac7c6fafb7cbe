#include "chronopath/operator_lab.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "chronopath/amplitude.hpp"
#include "chronopath/errors.hpp"
#include "chronopath/peaks.hpp"

namespace chronopath {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

// Truncated annihilation operator on dim levels.
CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// S(r)|0> in the number basis, r = -log_spread (Var X = e^{-2r}/2).
CVector squeezed_vacuum(int dim, double log_spread) {
  const double r = -log_spread;
  CVector v = CVector::Zero(dim);
  double c = 1.0 / std::sqrt(std::cosh(r));
  const double t = -std::tanh(r);
  for (int m = 0; 2 * m < dim; ++m) {
    v(2 * m) = c;
    const double k = 2.0 * m;
    c *= t * std::sqrt((k + 1.0) * (k + 2.0)) / (2.0 * (m + 1.0));
  }
  return v;
}

void require_dim(int dim) {
  if (dim < kMinDim) throw DimTooSmall(dim);
}

void require_matching_lambda(const OperatorRealization& real, const ModelParams& params) {
  const double expected = real.lambda();
  if (std::abs(params.lambda() - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
    throw std::invalid_argument("model parameters and realization disagree on lambda");
}

double interior_max_abs(const CMatrix& m, std::pair<int, int> range) {
  const int lo = range.first;
  const int len = range.second - range.first;
  return m.block(lo, lo, len, len).cwiseAbs().maxCoeff();
}

cd expectation(const CMatrix& op, const CVector& v) { return v.dot(op * v); }

}  // namespace

HermitianSpectrum HermitianSpectrum::of(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix HermitianSpectrum::propagator(double t) const {
  if (t == 0.0) return CMatrix::Identity(basis.rows(), basis.cols());
  const Eigen::VectorXcd phases = (-kI * t * energies.cast<cd>()).array().exp();
  return basis * phases.asDiagonal() * basis.adjoint();
}

CVector HermitianSpectrum::evolve(double t, const CVector& v) const {
  if (t == 0.0) return v;
  CVector coeffs = basis.adjoint() * v;
  coeffs.array() *= (-kI * t * energies.cast<cd>()).array().exp();
  return basis * coeffs;
}

double HermitianSpectrum::spectral_radius() const { return energies.cwiseAbs().maxCoeff(); }

const CMatrix& OperatorRealization::propagator(Hamiltonian which, double t) const {
  const std::pair<int, double> key{static_cast<int>(which), t};
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->entries.find(key);
    if (it != cache_->entries.end()) return it->second;
  }
  CMatrix value = spectrum(which).propagator(t);
  std::unique_lock lock(cache_->mutex);
  return cache_->entries.try_emplace(key, std::move(value)).first->second;
}

void OperatorRealization::finish() {
  spec_forward_ = HermitianSpectrum::of(h_forward_);
  spec_backward_ = HermitianSpectrum::of(h_backward_);
  spec_momentum_ = HermitianSpectrum::of(momentum_);
  cache_ = std::make_shared<PropagatorCache>();
}

OperatorRealization build_realization(int dim, double lambda, const RealizationOptions& options) {
  require_dim(dim);
  if (lambda == 0.0) return build_clock_realization(dim, options.clock_spacing);

  OperatorRealization real;
  real.dim_ = dim;
  real.lambda_ = lambda;
  real.kind_ = RealizationKind::CanonicalPair;

  const CMatrix a = annihilation(dim);
  real.position_ = (a + a.adjoint()) / std::sqrt(2.0);
  real.momentum_ = kI * (a.adjoint() - a) / std::sqrt(2.0);
  real.parity_ = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) real.parity_(k, k) = (k % 2 == 0) ? 1.0 : -1.0;

  const double beta = std::sqrt(std::abs(lambda) / 2.0);
  const CMatrix sum = beta * (real.position_ + real.momentum_);
  const CMatrix diff = beta * (real.position_ - real.momentum_);
  // [X - P, X + P] = 2i, so this ordering gives [H_B, H_F] = i lambda for either sign.
  real.h_forward_ = lambda > 0.0 ? sum : diff;
  real.h_backward_ = lambda > 0.0 ? diff : sum;

  real.finish();

  // Displace the squeezed vacuum along X; the result stays real.
  CVector ref = squeezed_vacuum(dim, options.reference_log_spread);
  ref = real.spec_momentum_.evolve(options.reference_centre, ref);
  real.reference_ = ref.real().cast<cd>();
  real.reference_.normalize();
  return real;
}

OperatorRealization build_clock_realization(int dim, double spacing) {
  require_dim(dim);
  OperatorRealization real;
  real.dim_ = dim;
  real.lambda_ = 0.0;
  real.kind_ = RealizationKind::Clock;

  const CMatrix a = annihilation(dim);
  real.position_ = (a + a.adjoint()) / std::sqrt(2.0);
  real.momentum_ = kI * (a.adjoint() - a) / std::sqrt(2.0);
  real.parity_ = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) real.parity_(k, k) = (k % 2 == 0) ? 1.0 : -1.0;

  real.h_forward_ = CMatrix::Zero(dim, dim);
  const double mid = (dim - 1) / 2.0;
  for (int k = 0; k < dim; ++k) real.h_forward_(k, k) = spacing * (k - mid);
  real.h_backward_ = real.h_forward_;
  real.reference_ = CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  real.finish();
  return real;
}

double commutator_defect(const OperatorRealization& real) {
  const CMatrix c = real.h_backward() * real.h_forward() - real.h_forward() * real.h_backward();
  const CMatrix defect = c - kI * real.lambda() * CMatrix::Identity(real.dim(), real.dim());
  const double scale = real.lambda() == 0.0 ? 1.0 : std::abs(real.lambda());
  return interior_max_abs(defect, real.interior()) / scale;
}

double commutator_defect_full(const OperatorRealization& real) {
  const CMatrix c = real.h_backward() * real.h_forward() - real.h_forward() * real.h_backward();
  const CMatrix defect = c - kI * real.lambda() * CMatrix::Identity(real.dim(), real.dim());
  const double scale = real.lambda() == 0.0 ? 1.0 : std::abs(real.lambda());
  return defect.cwiseAbs().maxCoeff() / scale;
}

double time_reversal_defect(const OperatorRealization& real) {
  return interior_max_abs(real.time_reverse(real.h_forward()) - real.h_backward(), real.interior());
}

double fidelity(const CVector& a, const CVector& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("fidelity of a zero vector");
  return std::norm(a.dot(b)) / (na * nb);
}

CVector path_sum_direct(const OperatorRealization& real, std::int64_t n_steps, double delta_t) {
  if (n_steps < 1) throw std::invalid_argument("path_sum_direct: N must be at least 1");
  const CMatrix& back = real.propagator(Hamiltonian::Backward, -delta_t);  // exp(+i H_B dt)
  const CMatrix& fwd = real.propagator(Hamiltonian::Forward, delta_t);     // exp(-i H_F dt)
  CVector v = real.reference_state();
  for (std::int64_t level = 0; level < n_steps; ++level) v = 0.5 * (back * v + fwd * v);
  return v;
}

double step_for_theta(const OperatorRealization& real, double theta, std::int64_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("step_for_theta: N must be at least 1");
  const double big_n = static_cast<double>(n_steps);
  if (real.lambda() == 0.0) {
    if (theta != 0.0) throw std::invalid_argument("a lambda = 0 realization only supports theta = 0");
    return 1.0 / std::sqrt(big_n);
  }
  const double dt2 = theta / (big_n * real.lambda());
  if (!(dt2 > 0.0)) throw std::invalid_argument("theta and lambda must share a sign");
  return std::sqrt(dt2);
}

CVector path_sum_closed(const OperatorRealization& real, std::int64_t n_steps, double delta_t) {
  if (n_steps < 1) throw std::invalid_argument("path_sum_closed: N must be at least 1");
  const double big_n = static_cast<double>(n_steps);
  const double theta = big_n * delta_t * delta_t * real.lambda();
  const auto params = ModelParams::from_theta(theta, n_steps, delta_t * std::sqrt(big_n));
  const PathAmplitudeProfile profile = interference_profile(params, Execution::Serial);
  const double log_half_n = -big_n * std::numbers::ln2;

  CVector out = CVector::Zero(real.dim());
  for (std::int64_t n = 0; n <= n_steps; ++n) {
    const cd weight = profile.entries[n].amp.scaled(log_half_n).to_complex();
    if (weight == 0.0) continue;
    const double nf = static_cast<double>(n);
    CVector v = real.evolve(Hamiltonian::Forward, nf * delta_t, real.reference_state());
    v = real.evolve(Hamiltonian::Backward, -(big_n - nf) * delta_t, v);
    out += weight * v;
  }
  return out;
}

CVector binomial_path_sum(const OperatorRealization& real, std::int64_t n_steps, double delta_t) {
  const std::vector<double> weights = binomial_profile(n_steps);
  CVector out = CVector::Zero(real.dim());
  for (std::int64_t n = 0; n <= n_steps; ++n) {
    const double m = static_cast<double>(2 * n - n_steps);
    out += weights[n] * real.evolve(Hamiltonian::Forward, m * delta_t, real.reference_state());
  }
  return out;
}

PathExpansionResult compare_path_sums(const OperatorRealization& real, std::int64_t n_steps,
                                      double delta_t) {
  PathExpansionResult r;
  r.state_direct = path_sum_direct(real, n_steps, delta_t);
  r.state_closed = path_sum_closed(real, n_steps, delta_t);
  r.fidelity = fidelity(r.state_direct, r.state_closed);
  return r;
}

ReorderCheck bch_reorder_check(const OperatorRealization& real, double t1, double t2) {
  constexpr double kStability = 50.0;
  const auto& sf = real.spectrum(Hamiltonian::Forward);
  const auto& sb = real.spectrum(Hamiltonian::Backward);
  if (sf.spectral_radius() * std::abs(t1) > kStability ||
      sb.spectral_radius() * std::abs(t2) > kStability)
    throw std::domain_error("bch_reorder_check: |H| t exceeds the truncation stability range");

  const CVector& phi = real.reference_state();
  const CVector lhs = sf.evolve(t1, sb.evolve(-t2, phi));
  const CVector rhs = sb.evolve(-t2, sf.evolve(t1, phi));
  ReorderCheck out;
  out.discrepancy = (lhs - std::exp(-kI * real.lambda() * t1 * t2) * rhs).norm();
  out.phase = -std::arg(rhs.dot(lhs));
  return out;
}

CMatrix phenomenological_hamiltonian(const OperatorRealization& real, const ModelParams& params) {
  const PeakAnalysis peaks = analytic_peaks(params);
  return peaks.a_plus * real.h_forward() - peaks.a_minus * real.h_backward();
}

CVector coarse_grain_state(const OperatorRealization& real, const ModelParams& params, double t_c) {
  require_matching_lambda(real, params);
  const auto eig = HermitianSpectrum::of(phenomenological_hamiltonian(real, params));
  return eig.evolve(t_c, real.reference_state()).normalized();
}

CVector coarse_grain_state(const OperatorRealization& real, const ModelParams& params) {
  return coarse_grain_state(real, params, analytic_peaks(params).t_c_peak);
}

CVector peak_term_state(const OperatorRealization& real, const ModelParams& params) {
  require_matching_lambda(real, params);
  const PeakAnalysis peaks = analytic_peaks(params);
  const double dt = params.delta_t();
  const double big_n = static_cast<double>(params.n_steps());
  CVector v = real.evolve(Hamiltonian::Forward, peaks.n_plus * dt, real.reference_state());
  v = real.evolve(Hamiltonian::Backward, -(big_n - peaks.n_plus) * dt, v);
  return v.normalized();
}

double schrodinger_residual(const OperatorRealization& real, const ModelParams& params, double t_c,
                            double h) {
  require_matching_lambda(real, params);
  if (!(h > 0.0)) throw std::invalid_argument("schrodinger_residual: h must be positive");
  const CMatrix h_phen = phenomenological_hamiltonian(real, params);
  const auto eig = HermitianSpectrum::of(h_phen);
  const CVector& phi = real.reference_state();
  const CVector at = eig.evolve(t_c, phi);
  const CVector ahead = eig.evolve(t_c + h, phi);
  const CVector behind = eig.evolve(t_c - h, phi);
  const CVector residual = (ahead - behind) / (2.0 * h) + kI * (h_phen * at);
  return residual.norm() / at.norm();
}

std::complex<double> phenomenological_commutator(const OperatorRealization& real,
                                                 const ModelParams& params) {
  require_matching_lambda(real, params);
  const CMatrix h = phenomenological_hamiltonian(real, params);
  const CMatrix reversed = real.time_reverse(h);
  const CMatrix c = h * reversed - reversed * h;
  const auto [lo, hi] = real.interior();
  cd sum = 0.0;
  for (int k = lo; k < hi; ++k) sum += c(k, k);
  return sum / static_cast<double>(hi - lo);
}

double parity_translation_check(const OperatorRealization& real, double x_shift) {
  const double extent = std::sqrt(2.0 * real.dim());
  if (std::abs(x_shift) > extent)
    throw std::invalid_argument("parity_translation_check: shift exceeds the grid extent");
  const auto& eig = real.momentum_spectrum();
  const CMatrix& par = real.parity();
  const CMatrix lhs = par * eig.propagator(x_shift) * par;
  const CMatrix rhs = eig.propagator(-x_shift);
  const CMatrix diff = lhs - rhs;
  const auto [lo, hi] = real.interior();
  double worst = 0.0;
  for (int k = lo; k < hi; ++k) worst = std::max(worst, diff.col(k).norm());
  return worst;
}

double parity_momentum_check(const OperatorRealization& real) {
  const CMatrix& par = real.parity();
  return interior_max_abs(par * real.momentum() * par + real.momentum(), real.interior());
}

EnergyMoments energy_moments(const OperatorRealization& real, const CVector& state) {
  const CVector v = state.normalized();
  const CMatrix& hf = real.h_forward();
  const CMatrix& hb = real.h_backward();
  const double mf = expectation(hf, v).real();
  const double mb = expectation(hb, v).real();
  EnergyMoments m;
  m.var_forward = expectation(hf * hf, v).real() - mf * mf;
  m.var_backward = expectation(hb * hb, v).real() - mb * mb;
  m.covariance = expectation(hf * hb + hb * hf, v).real() - 2.0 * mf * mb;
  return m;
}

CVector ground_state(const OperatorRealization& real) {
  CVector v = CVector::Zero(real.dim());
  v(0) = 1.0;
  return v;
}

std::vector<std::complex<double>> temporal_projection(const OperatorRealization& real,
                                                      const CVector& state, std::int64_t n_steps,
                                                      double delta_t) {
  std::vector<cd> out(static_cast<std::size_t>(n_steps + 1));
  for (std::int64_t n = 0; n <= n_steps; ++n) {
    const double m = static_cast<double>(2 * n - n_steps);
    const CVector probe = real.evolve(Hamiltonian::Forward, m * delta_t, real.reference_state());
    out[n] = probe.dot(state);
  }
  return out;
}

}  // namespace chronopath
