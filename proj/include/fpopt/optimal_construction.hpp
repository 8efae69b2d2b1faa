#pragma once

#include "fpopt/admissible_pairs.hpp"

#include <string_view>
#include <vector>

namespace fpopt {

/// Orthonormal basis Psi in which every diagonal entry of Psi^T D~ Psi equals
/// target = Tr(D~)/d.
struct EquidistributingBasis {
  Matrix Psi;
  double target = 0.0;
};

/// Constructive Schur-Horn sweep. Starting from the identity, each Givens
/// rotation pins one diagonal entry to the target, so at most d-1 rotations
/// are applied.
EquidistributingBasis equidistribute_basis(const Matrix& d_tilde);

/// Strictly increasing positive weights lambda_1 < ... < lambda_d; these are
/// the eigenvalues of the certificate matrix Q.
class LambdaSchedule {
 public:
  /// Throws DegenerateSchedule unless values are positive and strictly increasing.
  explicit LambdaSchedule(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  /// sqrt(lambda_d / lambda_1), the P-norm certificate constant.
  double constant() const;

 private:
  std::vector<double> values_;
};

/// lambda_k = (d-1)/(c^2-1) + k - 1, so that lambda_d / lambda_1 = c^2.
LambdaSchedule default_schedule(int d, double c);
/// lambda_k = d + k, the older choice with a larger antisymmetric part.
LambdaSchedule gm_schedule(int d);

/// (J^)_{jk} = (l_j + l_k)/(l_j - l_k) <psi_j, D~ psi_k> for j != k.
Matrix build_jhat(const EquidistributingBasis& basis, const LambdaSchedule& schedule,
                  const Matrix& d_tilde);

enum class Variant { Standard, Transpose };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view s);

struct OptimalCertificate {
  CoefficientPair pair;
  TransformedPair tilde;
  Matrix J_hat;
  Vector v;  // unit eigenvector of K^{-1} for lambda_opt
  EquidistributingBasis basis;
  std::vector<double> lambdas;  // empty for the isotropic shortcut
  Matrix Q;                     // C~ Q + Q C~^T = 2 lambda_opt Q
  Matrix P;                     // Q^{-1}; ||exp(-C~ t) x||_P = exp(-lambda_opt t) ||x||_P
  double c = 1.0;               // requested budget
  double constant = 1.0;        // sqrt(kappa(P)) actually certified
  double lambda_opt = 0.0;
  Variant variant = Variant::Standard;
  bool isotropic = false;
};

/// Pair with decay rate max sigma(K^{-1}) and envelope constant c.
OptimalCertificate construct_optimal(const Covariance& k, double c,
                                     Variant variant = Variant::Standard);

/// Same construction with explicit weights; the certified constant is then
/// sqrt(lambda_d / lambda_1).
OptimalCertificate construct_optimal(const Covariance& k, const LambdaSchedule& schedule,
                                     Variant variant = Variant::Standard);

/// ||C~ Q + Q C~^T - 2 lambda_opt Q||_F.
double lyapunov_certificate_residual(const OptimalCertificate& cert);

/// max_k |<psi_k, D~ psi_k> - lambda_opt|.
double equidistribution_residual(const OptimalCertificate& cert);

struct FrobeniusBound {
  double drift = 0.0;      // bound on ||C_opt||_F
  double diffusion = 0.0;  // ||D_opt||_F = d
};

/// lambda_opt [d + sqrt(kappa(K)) 2 pi c^2 / (sqrt(3)(c^2-1)) sqrt(d) (d-1)].
FrobeniusBound frobenius_bound(const Covariance& k, double c);

struct GrowthRow {
  int d = 0;
  double actual = 0.0;  // ||C_opt||_F
  double bound = 0.0;
};

/// Test covariance diag(1, 2, ..., 2) with fixed condition number 2.
Covariance growth_family(int d);

std::vector<GrowthRow> growth_study(double c, const std::vector<int>& dims);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fpopt
