#pragma once

#include "fpopt/matrix_kernel.hpp"

#include <optional>

namespace fpopt {

/// Covariance of the Gaussian equilibrium. Immutable once constructed; all
/// derived quantities are computed eagerly.
class Covariance {
 public:
  /// Full symmetric positive-definite matrix.
  explicit Covariance(const Matrix& k);
  static Covariance diagonal(const Vector& diag);
  /// K = V diag(values) V^T with V orthogonal.
  static Covariance from_eigen(const Vector& values, const Matrix& vectors);

  Eigen::Index dim() const { return k_.rows(); }
  const Matrix& matrix() const { return k_; }
  const Matrix& inverse() const { return k_inv_; }
  const Matrix& sqrt() const { return k_sqrt_; }
  const Matrix& inv_sqrt() const { return k_inv_sqrt_; }
  /// Ascending eigenvalues of K and matching orthonormal eigenvectors.
  const Vector& eigenvalues() const { return eig_.values; }
  const Matrix& eigenvectors() const { return eig_.vectors; }
  double trace() const { return k_.trace(); }
  double condition_number() const { return eig_.values(dim() - 1) / eig_.values(0); }
  /// Largest achievable decay rate, max sigma(K^{-1}) = 1 / min sigma(K).
  double lambda_opt() const { return 1.0 / eig_.values(0); }
  /// Relative spread of sigma(K) below 1e-12 counts as isotropic.
  bool is_isotropic() const;

  /// Same K within a relative Frobenius tolerance.
  bool same_as(const Covariance& other, double rel_tol = 1e-12) const;

 private:
  Matrix k_;
  SymEigen eig_;
  Matrix k_inv_;
  Matrix k_sqrt_;
  Matrix k_inv_sqrt_;
};

/// Fokker-Planck coefficient pair: drift C and diffusion D.
struct CoefficientPair {
  Matrix C;
  Matrix D;

  Eigen::Index dim() const { return C.rows(); }
};

/// Quantities of a pair expressed relative to an equilibrium K.
struct TransformedPair {
  Matrix J;        // C K - D (antisymmetric when the pair is admissible)
  Matrix C_tilde;  // K^{-1/2} C K^{1/2}
  Matrix D_tilde;  // K^{-1/2} D K^{-1/2}
  Matrix J_tilde;  // K^{-1/2} J K^{-1/2}
};

TransformedPair transform(const Covariance& k, const CoefficientPair& p);

/// Drift of the ODE x' = -C~ x whose propagator norm equals the
/// Fokker-Planck propagator norm.
Matrix drift_tilde(const Covariance& k, const Matrix& c);

inline constexpr double kTraceTol = 1e-12;
inline constexpr double kAdmissibleTol = 1e-10;

/// C = (D + J) K^{-1}. Throws TraceBudgetExceeded, NotPSD, InvalidMatrix.
CoefficientPair make_pair_from_J(const Covariance& k, const Matrix& d, const Matrix& j);

/// The reversible pair (K^{-1}, I).
CoefficientPair symmetric_pair(const Covariance& k);

struct ValidationReport {
  // ||C K + K C^T - 2 D||_F and the same relative to ||C||_F ||K||_F + ||D||_F.
  double lyapunov_residual = 0.0;
  double lyapunov_relative = 0.0;
  double trace_D = 0.0;
  double min_eig_D = 0.0;
  int rank_D = 0;
  double spectral_gap = 0.0;  // NaN when the eigensolver failed
  int controllable_dim = 0;

  bool psd = false;
  bool trace_ok = false;
  bool admissible = false;
  bool positive_stable = false;
  bool hypoelliptic = false;
  bool steady_state_unique = false;

  bool all_passed() const { return admissible && steady_state_unique; }
};

/// Checks membership in I(K), positive stability and hypoellipticity.
/// Never throws on a failed check; failures are recorded in the report.
ValidationReport validate_pair(const Covariance& k, const CoefficientPair& p);

/// rho(C) = min Re(sigma(C)).
double spectral_gap(const CoefficientPair& p);

/// Norm-level bound obtained from the two-phase construction with switching
/// time t0 = min sigma(K) / 2: 1 for t <= t0, then
/// min{1, sqrt(c_tilde kappa(K)) exp((1 - 2 lambda_opt t) / 2)}.
double gm_envelope(const Covariance& k, double c_tilde, double t);

}  // namespace fpopt
