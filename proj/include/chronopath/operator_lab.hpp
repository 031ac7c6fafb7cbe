#pragma once

// Finite-dimensional realizations of the forward/backward Hamiltonian pair
// and the checks built on them.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chronopath/params.hpp"

namespace chronopath {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// H = basis * diag(energies) * basis^dagger for a Hermitian H.
struct HermitianSpectrum {
  Eigen::VectorXd energies;
  CMatrix basis;

  static HermitianSpectrum of(const CMatrix& hermitian);

  /// exp(-i H t).
  CMatrix propagator(double t) const;
  /// exp(-i H t) v without forming the matrix.
  CVector evolve(double t, const CVector& v) const;
  double spectral_radius() const;
};

enum class Hamiltonian { Forward, Backward };

enum class RealizationKind {
  CanonicalPair,  // H_F = b(X + P), H_B = b(X - P), b = sqrt(|lambda|/2)
  Clock,          // H_F = H_B = diag of an evenly spaced spectrum (lambda = 0)
};

struct RealizationOptions {
  /// Centre of the Gaussian reference state on the X axis.
  double reference_centre = -4.5;
  /// ln(sigma_x / sigma_vacuum) of the reference Gaussian.
  double reference_log_spread = 0.2;
  /// Level spacing of the clock realization.
  double clock_spacing = 1.0;
};

/// Truncated operator pair with its symmetry maps and reference state.
///
/// Immutable after construction. Propagators exp(-i H t) are cached per
/// (H, t); the cache takes a shared lock for lookups and an exclusive lock
/// for insertion, so concurrent use from several threads is safe. Copies
/// share the cache.
///
/// Time reversal is complex conjugation of coefficients in the working
/// (number) basis. The truncated X is real symmetric with real eigenvectors,
/// so this is the same map as conjugation in the X eigenbasis: X -> X,
/// P -> -P, hence T^-1 H_F T = H_B.
class OperatorRealization {
 public:
  int dim() const noexcept { return dim_; }
  double lambda() const noexcept { return lambda_; }
  RealizationKind kind() const noexcept { return kind_; }

  const CMatrix& h_forward() const noexcept { return h_forward_; }
  const CMatrix& h_backward() const noexcept { return h_backward_; }
  const CMatrix& hamiltonian(Hamiltonian which) const noexcept {
    return which == Hamiltonian::Forward ? h_forward_ : h_backward_;
  }
  const CMatrix& position() const noexcept { return position_; }
  const CMatrix& momentum() const noexcept { return momentum_; }
  /// Unitary parity map X -> -X, P -> -P.
  const CMatrix& parity() const noexcept { return parity_; }
  /// Unit-norm, real (hence T-invariant) reference state.
  const CVector& reference_state() const noexcept { return reference_; }

  const HermitianSpectrum& spectrum(Hamiltonian which) const noexcept {
    return which == Hamiltonian::Forward ? spec_forward_ : spec_backward_;
  }
  const HermitianSpectrum& momentum_spectrum() const noexcept { return spec_momentum_; }

  /// exp(-i H t), computed once per distinct (H, t).
  const CMatrix& propagator(Hamiltonian which, double t) const;
  CVector evolve(Hamiltonian which, double t, const CVector& v) const {
    return spectrum(which).evolve(t, v);
  }

  CVector time_reverse(const CVector& v) const { return v.conjugate(); }
  /// T^-1 M T.
  CMatrix time_reverse(const CMatrix& m) const { return m.conjugate(); }

  /// Half-open index range [dim/4, 3 dim/4) on which canonical relations are asserted.
  std::pair<int, int> interior() const noexcept { return {dim_ / 4, 3 * dim_ / 4}; }

 private:
  friend OperatorRealization build_realization(int, double, const RealizationOptions&);
  friend OperatorRealization build_clock_realization(int, double);

  struct PropagatorCache {
    std::shared_mutex mutex;
    std::map<std::pair<int, double>, CMatrix> entries;
  };

  OperatorRealization() = default;
  void finish();

  int dim_ = 0;
  double lambda_ = 0.0;
  RealizationKind kind_ = RealizationKind::CanonicalPair;
  CMatrix h_forward_, h_backward_, position_, momentum_, parity_;
  CVector reference_;
  HermitianSpectrum spec_forward_, spec_backward_, spec_momentum_;
  std::shared_ptr<PropagatorCache> cache_;
};

inline constexpr int kMinDim = 16;

/// Canonical pair for lambda != 0; lambda == 0 yields the clock realization
/// with options.clock_spacing. Throws DimTooSmall below 16.
OperatorRealization build_realization(int dim, double lambda, const RealizationOptions& options = {});

/// T-invariant realization: H_F = H_B = spacing * diag(k - (dim-1)/2), with
/// the uniform superposition of levels as reference state.
OperatorRealization build_clock_realization(int dim, double spacing);

/// max |([H_B, H_F] - i lambda)_{jk}| over the interior block, divided by
/// |lambda| (absolute when lambda == 0).
double commutator_defect(const OperatorRealization& real);
/// Same measurement over the full matrix, to report the truncation edge.
double commutator_defect_full(const OperatorRealization& real);
/// max |(T^-1 H_F T - H_B)_{jk}| over the interior block.
double time_reversal_defect(const OperatorRealization& real);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const CVector& a, const CVector& b);

/// 2^-N [exp(i H_B dt) + exp(-i H_F dt)]^N |phi>, by N applications of the
/// two-term operator.
CVector path_sum_direct(const OperatorRealization& real, std::int64_t n_steps, double delta_t);

/// 2^-N sum_n I_{N-n,n}(dt^2 lambda) exp(i H_B (N-n) dt) exp(-i H_F n dt) |phi>.
/// Throws SingularDenominator when dt^2 lambda is on the pole lattice.
CVector path_sum_closed(const OperatorRealization& real, std::int64_t n_steps, double delta_t);

/// 2^-N sum_n C(N,n) exp(-i (2n - N) H_F dt) |phi>; only meaningful when H_F == H_B.
CVector binomial_path_sum(const OperatorRealization& real, std::int64_t n_steps, double delta_t);

struct PathExpansionResult {
  CVector state_direct;
  CVector state_closed;
  double fidelity = 0.0;
};

PathExpansionResult compare_path_sums(const OperatorRealization& real, std::int64_t n_steps,
                                      double delta_t);

/// Step delta_t giving delta_t^2 lambda = theta / N. For lambda == 0 this is
/// sigma_t / sqrt(N) with sigma_t = 1.
double step_for_theta(const OperatorRealization& real, double theta, std::int64_t n_steps);

struct ReorderCheck {
  /// | e^{-i H_F t1} e^{i H_B t2} phi - e^{-i lambda t1 t2} e^{i H_B t2} e^{-i H_F t1} phi |
  double discrepancy = 0.0;
  /// Measured phase p with lhs = e^{-i p} rhs, wrapped to (-pi, pi].
  double phase = 0.0;
};

/// Requires |H| t <= 50 for both times (std::domain_error otherwise).
ReorderCheck bch_reorder_check(const OperatorRealization& real, double t1, double t2);

/// H_F a_+ - H_B a_- for the peak weights of `params`.
CMatrix phenomenological_hamiltonian(const OperatorRealization& real, const ModelParams& params);

/// exp(-i (H_F a_+ - H_B a_-) t_c) |phi>, unit norm. Requires 2 pi < theta < 4 pi.
CVector coarse_grain_state(const OperatorRealization& real, const ModelParams& params, double t_c);
/// As above at the representative clock time t_c^(peak).
CVector coarse_grain_state(const OperatorRealization& real, const ModelParams& params);

/// exp(i H_B (N - n_+) dt) exp(-i H_F n_+ dt) |phi>, unit norm (n_+ real).
CVector peak_term_state(const OperatorRealization& real, const ModelParams& params);

/// | (U(t+h) - U(t-h)) / 2h + i H_phen U(t) | for the coarse-grained state U.
double schrodinger_residual(const OperatorRealization& real, const ModelParams& params, double t_c,
                            double h);

/// Interior scalar of [H_phen, T^-1 H_phen T]; the target is -i (theta/2pi) lambda.
std::complex<double> phenomenological_commutator(const OperatorRealization& real,
                                                 const ModelParams& params);

/// max over interior basis states of | (Par^-1 e^{-i P x} Par - e^{i P x}) e_k |.
double parity_translation_check(const OperatorRealization& real, double x_shift);
/// max |(Par^-1 P Par + P)_{jk}| over the interior block.
double parity_momentum_check(const OperatorRealization& real);

struct EnergyMoments {
  double var_forward = 0.0;
  double var_backward = 0.0;
  /// <{H_F, H_B}> - 2 <H_F><H_B>
  double covariance = 0.0;
};

EnergyMoments energy_moments(const OperatorRealization& real, const CVector& state);

/// Lowest oscillator level |0>.
CVector ground_state(const OperatorRealization& real);

/// <exp(-i H_F m dt) phi | state> for m = 2n - N, n = 0..N.
std::vector<std::complex<double>> temporal_projection(const OperatorRealization& real,
                                                      const CVector& state, std::int64_t n_steps,
                                                      double delta_t);

}  // namespace chronopath
