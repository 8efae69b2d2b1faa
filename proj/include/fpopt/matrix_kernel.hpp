#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace fpopt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
/// Relative symmetry tolerance: ||A - A^T||_F <= kSym * ||A||_F.
inline constexpr double kSym = 1e-12;
/// Singular values below kRank * sigma_max count as zero.
inline constexpr double kRank = 1e-10;
}  // namespace tol

// Shape and content checks. The require_* variants throw fpopt::Error.
bool is_finite(const Matrix& a);
bool is_symmetric(const Matrix& a, double rel_tol = tol::kSym);
bool is_antisymmetric(const Matrix& a, double rel_tol = tol::kSym);
void require_square_finite(const Matrix& a, const char* what);
void require_symmetric(const Matrix& a, const char* what, double rel_tol = tol::kSym);
void require_antisymmetric(const Matrix& a, const char* what, double rel_tol = tol::kSym);

Matrix symmetric_part(const Matrix& a);
Matrix antisymmetric_part(const Matrix& a);

/// Propagator of x' = -A x over time t, i.e. exp(-A t).
/// Scaling and squaring with a degree-13 Pade approximant.
Matrix expm(const Matrix& a, double t);

/// Largest singular value.
double spectral_norm(const Matrix& a);

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Eigendecomposition of a symmetric matrix. Each eigenvector is signed so
/// that its first non-negligible component is positive.
SymEigen sym_eigen(const Matrix& a);

/// Spectrum of a general real matrix, sorted by (real, imag).
/// Throws EigenFailure when the QR iteration does not converge.
std::vector<std::complex<double>> general_eigenvalues(const Matrix& a);

/// min Re(sigma(A)).
double spectral_abscissa_min(const Matrix& a);

/// Solves C Q + Q C^T = 2 D for Q. Requires min Re(sigma(C)) > 0.
Matrix solve_continuous_lyapunov(const Matrix& c, const Matrix& d);

/// Numerical rank from singular values relative to the largest one.
int numerical_rank(const Matrix& a, double rel_tol = tol::kRank);

/// Kalman rank test: rank [D, CD, ..., C^{d-1} D] == d.
/// Equivalent to ker(D) containing no non-trivial C^T-invariant subspace.
bool kalman_rank(const Matrix& c, const Matrix& d);

/// Dimension of the smallest C-invariant subspace containing range(D).
int controllable_dimension(const Matrix& c, const Matrix& d);

}  // namespace fpopt
