#include "fpopt/matrix_kernel.hpp"

#include "fpopt/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

namespace fpopt {

bool is_finite(const Matrix& a) { return a.allFinite(); }

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.transpose()).norm() <= rel_tol * a.norm();
}

bool is_antisymmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return (a + a.transpose()).norm() <= rel_tol * a.norm();
}

void require_square_finite(const Matrix& a, const char* what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorCode::InvalidMatrix, std::string(what) + " must be a non-empty square matrix");
  }
  if (!a.allFinite()) {
    throw Error(ErrorCode::InvalidMatrix, std::string(what) + " has non-finite entries");
  }
}

void require_symmetric(const Matrix& a, const char* what, double rel_tol) {
  require_square_finite(a, what);
  if (!is_symmetric(a, rel_tol)) {
    throw Error(ErrorCode::NotSymmetric, std::string(what) + " is not symmetric");
  }
}

void require_antisymmetric(const Matrix& a, const char* what, double rel_tol) {
  require_square_finite(a, what);
  if (!is_antisymmetric(a, rel_tol)) {
    throw Error(ErrorCode::InvalidMatrix, std::string(what) + " is not antisymmetric");
  }
}

Matrix symmetric_part(const Matrix& a) { return 0.5 * (a + a.transpose()); }

Matrix antisymmetric_part(const Matrix& a) { return 0.5 * (a - a.transpose()); }

Matrix expm(const Matrix& a, double t) {
  require_square_finite(a, "expm argument");
  if (!std::isfinite(t) || t < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "expm time must be finite and non-negative");
  }
  if (t == 0.0) return Matrix::Identity(a.rows(), a.cols());
  Matrix scaled = -t * a;
  Matrix result = scaled.exp();
  return result;
}

double spectral_norm(const Matrix& a) {
  if (!a.allFinite()) throw Error(ErrorCode::InvalidMatrix, "spectral_norm argument is not finite");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

namespace {

void fix_sign(Eigen::Ref<Vector> v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

SymEigen sym_eigen(const Matrix& a) {
  require_symmetric(a, "sym_eigen argument");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric_part(a));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
  }
  SymEigen out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) fix_sign(out.vectors.col(k));
  return out;
}

std::vector<std::complex<double>> general_eigenvalues(const Matrix& a) {
  require_square_finite(a, "general_eigenvalues argument");
  Eigen::EigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "Hessenberg QR iteration did not converge");
  }
  const auto& ev = es.eigenvalues();
  std::vector<std::complex<double>> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

double spectral_abscissa_min(const Matrix& a) {
  const auto ev = general_eigenvalues(a);
  double gap = ev.front().real();
  for (const auto& z : ev) gap = std::min(gap, z.real());
  return gap;
}

Matrix solve_continuous_lyapunov(const Matrix& c, const Matrix& d) {
  require_square_finite(c, "Lyapunov drift");
  require_symmetric(d, "Lyapunov right-hand side");
  if (c.rows() != d.rows()) {
    throw Error(ErrorCode::InvalidMatrix, "Lyapunov operands have different dimensions");
  }
  if (!(spectral_abscissa_min(c) > 0.0)) {
    throw Error(ErrorCode::NotPositiveStable, "drift matrix has no positive spectral gap");
  }
  const Eigen::Index n = c.rows();
  const Matrix id = Matrix::Identity(n, n);
  // Column-major vec: vec(CQ) = (I (x) C) vec(Q), vec(Q C^T) = (C (x) I) vec(Q).
  Matrix system = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      system.block(i * n, j * n, n, n) = id(i, j) * c + c(i, j) * id;
    }
  }
  const Matrix rhs = 2.0 * d;
  const Vector vec_q = system.partialPivLu().solve(rhs.reshaped());
  const Matrix q = vec_q.reshaped(n, n);
  return symmetric_part(q);
}

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

namespace {

// Orthonormal basis of range(w) keeping singular values above `threshold`.
Matrix range_basis(const Matrix& w, double threshold) {
  if (w.cols() == 0) return Matrix(w.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(w, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index keep = 0;
  while (keep < s.size() && s(keep) > threshold) ++keep;
  return svd.matrixU().leftCols(keep);
}

}  // namespace

int controllable_dimension(const Matrix& c, const Matrix& d) {
  require_square_finite(c, "Kalman drift");
  require_square_finite(d, "Kalman diffusion");
  if (c.rows() != d.rows()) {
    throw Error(ErrorCode::InvalidMatrix, "Kalman operands have different dimensions");
  }
  const Eigen::Index n = c.rows();
  const double d_norm = spectral_norm(d);
  if (d_norm == 0.0) return 0;

  // Block Krylov iteration on orthonormal blocks. In exact arithmetic this spans
  // the same space as [D, CD, ..., C^{n-1} D] but avoids the growth of C^k.
  Matrix basis = range_basis(d, tol::kRank * d_norm);
  Matrix block = basis;
  const double c_norm = std::max(spectral_norm(c), 1e-300);
  for (Eigen::Index k = 1; k < n && basis.cols() < n && block.cols() > 0; ++k) {
    Matrix w = c * block;
    for (int pass = 0; pass < 2; ++pass) w -= basis * (basis.transpose() * w);
    block = range_basis(w, tol::kRank * c_norm);
    if (block.cols() == 0) break;
    Matrix grown(n, basis.cols() + block.cols());
    grown << basis, block;
    basis = std::move(grown);
  }
  return static_cast<int>(basis.cols());
}

bool kalman_rank(const Matrix& c, const Matrix& d) {
  return controllable_dimension(c, d) == c.rows();
}

}  // namespace fpopt
