#include "fpopt/reference_problems.hpp"

#include "fpopt/errors.hpp"

#include <cmath>

namespace fpopt::reference {

double mu_for_constant(double c) {
  if (!(c > 1.0)) throw Error(ErrorCode::InvalidConstant, "c must exceed 1");
  return (c * c + 1.0) / (c * c - 1.0);
}

double constant_for_mu(double mu) {
  if (!(mu > 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must exceed 1");
  return std::sqrt((mu + 1.0) / (mu - 1.0));
}

Covariance anisotropic_covariance(double eps) {
  return Covariance::diagonal(Eigen::Vector2d(1.0 / eps, 1.0));
}

CoefficientPair rotation_pair(double mu, double eps) {
  Matrix c(2, 2);
  c << 0.0, -mu / std::sqrt(eps), mu * std::sqrt(eps), 2.0;
  Matrix d = Matrix::Zero(2, 2);
  d(1, 1) = 2.0;
  return {c, d};
}

CoefficientPair split_case_pair(int which, double eps) {
  const Covariance k = anisotropic_covariance(eps);
  switch (which) {
    case 1: return rotation_pair(7.0, eps);
    case 2: return symmetric_pair(k);
    case 3: return max_initial_decay(k).pair;
    case 4: return rotation_pair(3.0, eps);
    case 5: return rotation_pair(11.0, eps);
    case 6: return rotation_pair(13.8, eps);
    default: throw Error(ErrorCode::InvalidArgument, "split cases are numbered 1..6");
  }
}

Schedule split_case_schedule(int which, double t0, double eps) {
  return Schedule::split(anisotropic_covariance(eps), split_case_pair(which, eps), t0,
                         rotation_pair(7.0, eps));
}

std::string split_case_id(int which) { return "FP" + std::to_string(which); }

}  // namespace fpopt::reference
