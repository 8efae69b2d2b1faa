#include "fpopt/admissible_pairs.hpp"

#include "fpopt/errors.hpp"

#include <cmath>
#include <limits>

namespace fpopt {

namespace {

Matrix spectral_function(const SymEigen& eig, double (*f)(double)) {
  const Vector mapped = eig.values.unaryExpr(f);
  return eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
}

double psd_floor(const Matrix& d) { return -kTraceTol * std::max(1.0, spectral_norm(d)); }

}  // namespace

Covariance::Covariance(const Matrix& k) {
  require_symmetric(k, "covariance");
  k_ = symmetric_part(k);
  eig_ = sym_eigen(k_);
  if (!(eig_.values(0) > 0.0)) {
    throw Error(ErrorCode::NotPSD, "covariance must be positive definite");
  }
  k_inv_ = spectral_function(eig_, [](double x) { return 1.0 / x; });
  k_sqrt_ = spectral_function(eig_, [](double x) { return std::sqrt(x); });
  k_inv_sqrt_ = spectral_function(eig_, [](double x) { return 1.0 / std::sqrt(x); });
}

Covariance Covariance::diagonal(const Vector& diag) {
  if (diag.size() == 0) throw Error(ErrorCode::InvalidMatrix, "empty covariance diagonal");
  return Covariance(Matrix(diag.asDiagonal()));
}

Covariance Covariance::from_eigen(const Vector& values, const Matrix& vectors) {
  require_square_finite(vectors, "covariance eigenvectors");
  if (values.size() != vectors.rows()) {
    throw Error(ErrorCode::InvalidMatrix, "eigenvalue count does not match eigenvector matrix");
  }
  const Eigen::Index n = vectors.rows();
  if ((vectors.transpose() * vectors - Matrix::Identity(n, n)).norm() > 1e-10) {
    throw Error(ErrorCode::InvalidMatrix, "covariance eigenvector matrix is not orthogonal");
  }
  return Covariance(Matrix(vectors * values.asDiagonal() * vectors.transpose()));
}

bool Covariance::is_isotropic() const {
  const double lo = eig_.values(0);
  const double hi = eig_.values(dim() - 1);
  return (hi - lo) <= 1e-12 * hi;
}

bool Covariance::same_as(const Covariance& other, double rel_tol) const {
  if (dim() != other.dim()) return false;
  return (k_ - other.k_).norm() <= rel_tol * std::max(k_.norm(), other.k_.norm());
}

Matrix drift_tilde(const Covariance& k, const Matrix& c) {
  return k.inv_sqrt() * c * k.sqrt();
}

TransformedPair transform(const Covariance& k, const CoefficientPair& p) {
  TransformedPair t;
  t.J = p.C * k.matrix() - p.D;
  t.C_tilde = drift_tilde(k, p.C);
  t.D_tilde = k.inv_sqrt() * p.D * k.inv_sqrt();
  t.J_tilde = k.inv_sqrt() * t.J * k.inv_sqrt();
  return t;
}

CoefficientPair make_pair_from_J(const Covariance& k, const Matrix& d, const Matrix& j) {
  require_symmetric(d, "diffusion matrix");
  require_antisymmetric(j, "antisymmetric part J");
  if (d.rows() != k.dim() || j.rows() != k.dim()) {
    throw Error(ErrorCode::InvalidMatrix, "pair dimension does not match covariance");
  }
  const Matrix d_sym = symmetric_part(d);
  if (sym_eigen(d_sym).values(0) < psd_floor(d_sym)) {
    throw Error(ErrorCode::NotPSD, "diffusion matrix is not positive semi-definite");
  }
  const double n = static_cast<double>(k.dim());
  if (d_sym.trace() > n + kTraceTol) {
    throw Error(ErrorCode::TraceBudgetExceeded, "Tr(D) exceeds the dimension");
  }
  return {(d_sym + antisymmetric_part(j)) * k.inverse(), d_sym};
}

CoefficientPair symmetric_pair(const Covariance& k) {
  return {k.inverse(), Matrix::Identity(k.dim(), k.dim())};
}

ValidationReport validate_pair(const Covariance& k, const CoefficientPair& p) {
  require_square_finite(p.C, "drift matrix");
  require_square_finite(p.D, "diffusion matrix");
  if (p.C.rows() != k.dim() || p.D.rows() != k.dim()) {
    throw Error(ErrorCode::InvalidMatrix, "pair dimension does not match covariance");
  }
  ValidationReport r;
  const Matrix& km = k.matrix();
  const Matrix d_sym = symmetric_part(p.D);

  r.lyapunov_residual = (p.C * km + km * p.C.transpose() - 2.0 * p.D).norm();
  const double scale = p.C.norm() * km.norm() + p.D.norm();
  r.lyapunov_relative = scale > 0.0 ? r.lyapunov_residual / scale : r.lyapunov_residual;

  r.trace_D = d_sym.trace();
  r.trace_ok = r.trace_D <= static_cast<double>(k.dim()) + kTraceTol;
  r.min_eig_D = sym_eigen(d_sym).values(0);
  r.psd = is_symmetric(p.D, kAdmissibleTol) && r.min_eig_D >= psd_floor(d_sym);
  r.rank_D = numerical_rank(d_sym);
  r.admissible = r.psd && r.trace_ok && r.lyapunov_relative <= kAdmissibleTol;

  try {
    r.spectral_gap = spectral_abscissa_min(p.C);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EigenFailure) throw;
    r.spectral_gap = std::numeric_limits<double>::quiet_NaN();
  }
  r.positive_stable = r.spectral_gap > 0.0;
  r.controllable_dim = controllable_dimension(p.C, d_sym);
  r.hypoelliptic = r.controllable_dim == k.dim();
  r.steady_state_unique = r.positive_stable && r.hypoelliptic;
  return r;
}

double spectral_gap(const CoefficientPair& p) { return spectral_abscissa_min(p.C); }

double gm_envelope(const Covariance& k, double c_tilde, double t) {
  if (!(c_tilde > 1.0)) throw Error(ErrorCode::InvalidConstant, "c_tilde must exceed 1");
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be non-negative");
  const double t0 = 0.5 * k.eigenvalues()(0);
  if (t <= t0) return 1.0;
  const double bound =
      std::sqrt(c_tilde * k.condition_number()) * std::exp(0.5 * (1.0 - 2.0 * k.lambda_opt() * t));
  return std::min(1.0, bound);
}

}  // namespace fpopt
