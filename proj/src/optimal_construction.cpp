#include "fpopt/optimal_construction.hpp"

#include "fpopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fpopt {

namespace {

// Angle theta in (-pi/2, pi/2] with smallest |theta| such that the rotated
// (p,p) entry  m + a cos(2 theta) + b sin(2 theta)  equals m + r.
double pinning_angle(double a, double b, double r) {
  const double radius = std::hypot(a, b);
  const double phi = std::atan2(b, a);
  const double delta = std::acos(std::clamp(r / radius, -1.0, 1.0));
  auto normalize = [](double theta) {
    while (theta <= -std::numbers::pi / 2) theta += std::numbers::pi;
    while (theta > std::numbers::pi / 2) theta -= std::numbers::pi;
    return theta;
  };
  const double t1 = normalize(0.5 * (phi + delta));
  const double t2 = normalize(0.5 * (phi - delta));
  if (std::abs(std::abs(t1) - std::abs(t2)) <= 1e-12) return std::max(t1, t2);
  return std::abs(t1) < std::abs(t2) ? t1 : t2;
}

}  // namespace

EquidistributingBasis equidistribute_basis(const Matrix& d_tilde) {
  require_symmetric(d_tilde, "D~");
  const Eigen::Index n = d_tilde.rows();
  Matrix a = symmetric_part(d_tilde);
  Matrix psi = Matrix::Identity(n, n);
  const double target = a.trace() / static_cast<double>(n);
  const double pin_tol = 1e-13 * std::max({std::abs(target), spectral_norm(a), 1e-300});

  for (Eigen::Index sweep = 0; sweep < n; ++sweep) {
    Eigen::Index low = -1;
    Eigen::Index high = -1;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (low < 0 && a(k, k) < target - pin_tol) low = k;
      if (high < 0 && a(k, k) > target + pin_tol) high = k;
    }
    if (low < 0 || high < 0) break;

    // Rotate in the (p, q) plane and pin entry `low` to the target; the other
    // entry absorbs the remainder because the 2x2 trace is preserved.
    const Eigen::Index p = std::min(low, high);
    const Eigen::Index q = std::max(low, high);
    const double mean = 0.5 * (a(p, p) + a(q, q));
    const double pp_target = (low == p) ? target : a(p, p) + a(q, q) - target;
    const double theta = pinning_angle(0.5 * (a(p, p) - a(q, q)), a(p, q), pp_target - mean);

    Matrix g = Matrix::Identity(n, n);
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    g(p, p) = cs;
    g(q, p) = sn;
    g(p, q) = -sn;
    g(q, q) = cs;
    a = symmetric_part(g.transpose() * a * g);
    psi = psi * g;
  }
  return {psi, target};
}

LambdaSchedule::LambdaSchedule(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::DegenerateSchedule, "empty lambda schedule");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k]) || values_[k] <= 0.0) {
      throw Error(ErrorCode::DegenerateSchedule, "lambda weights must be finite and positive");
    }
    if (k > 0 && !(values_[k] > values_[k - 1])) {
      throw Error(ErrorCode::DegenerateSchedule, "lambda weights must be strictly increasing");
    }
  }
}

double LambdaSchedule::constant() const { return std::sqrt(values_.back() / values_.front()); }

LambdaSchedule default_schedule(int d, double c) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "schedule needs d >= 2");
  if (!(c > 1.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidConstant, "c must exceed 1");
  std::vector<double> values(static_cast<std::size_t>(d));
  const double base = (d - 1) / (c * c - 1.0);
  for (int k = 1; k <= d; ++k) values[static_cast<std::size_t>(k - 1)] = base + (k - 1);
  return LambdaSchedule(std::move(values));
}

LambdaSchedule gm_schedule(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "schedule needs d >= 2");
  std::vector<double> values(static_cast<std::size_t>(d));
  for (int k = 1; k <= d; ++k) values[static_cast<std::size_t>(k - 1)] = d + k;
  return LambdaSchedule(std::move(values));
}

Matrix build_jhat(const EquidistributingBasis& basis, const LambdaSchedule& schedule,
                  const Matrix& d_tilde) {
  const Eigen::Index n = d_tilde.rows();
  if (basis.Psi.rows() != n || static_cast<Eigen::Index>(schedule.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "basis, schedule and D~ dimensions differ");
  }
  const Matrix d_hat = symmetric_part(basis.Psi.transpose() * d_tilde * basis.Psi);
  const auto& l = schedule.values();
  Matrix j_hat = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j == k) continue;
      const double lj = l[static_cast<std::size_t>(j)];
      const double lk = l[static_cast<std::size_t>(k)];
      if (lj == lk) throw Error(ErrorCode::DegenerateSchedule, "repeated lambda weight");
      j_hat(j, k) = (lj + lk) / (lj - lk) * d_hat(j, k);
    }
  }
  return j_hat;
}

std::string_view to_string(Variant v) {
  return v == Variant::Standard ? "standard" : "transpose";
}

Variant parse_variant(std::string_view s) {
  if (s == "standard") return Variant::Standard;
  if (s == "transpose") return Variant::Transpose;
  throw Error(ErrorCode::ParseError, "unknown variant '" + std::string(s) + "'");
}

namespace {

OptimalCertificate isotropic_certificate(const Covariance& k, double c, Variant variant) {
  const Eigen::Index n = k.dim();
  const Matrix id = Matrix::Identity(n, n);
  OptimalCertificate cert;
  cert.pair = symmetric_pair(k);
  cert.tilde = transform(k, cert.pair);
  cert.tilde.J = Matrix::Zero(n, n);
  cert.tilde.J_tilde = Matrix::Zero(n, n);
  cert.J_hat = Matrix::Zero(n, n);
  cert.v = k.eigenvectors().col(0);
  cert.lambda_opt = k.lambda_opt();
  cert.basis = {id, cert.lambda_opt};
  cert.Q = id;
  cert.P = id;
  cert.c = c;
  cert.constant = 1.0;
  cert.variant = variant;
  cert.isotropic = true;
  return cert;
}

OptimalCertificate build(const Covariance& k, const LambdaSchedule& schedule, double c,
                         Variant variant) {
  const Eigen::Index n = k.dim();
  if (static_cast<Eigen::Index>(schedule.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "lambda schedule length differs from dimension");
  }
  OptimalCertificate cert;
  cert.lambda_opt = k.lambda_opt();
  cert.variant = variant;
  cert.c = c;
  cert.constant = schedule.constant();
  cert.lambdas = schedule.values();

  // Rank-one diffusion along the fastest direction of K^{-1}.
  cert.v = k.eigenvectors().col(0);
  const Matrix vvt = cert.v * cert.v.transpose();
  const Matrix d_opt = static_cast<double>(n) * vvt;
  const Matrix d_tilde = static_cast<double>(n) * cert.lambda_opt * vvt;

  cert.basis = equidistribute_basis(d_tilde);
  const Matrix& psi = cert.basis.Psi;
  cert.J_hat = build_jhat(cert.basis, schedule, d_tilde);
  if (variant == Variant::Transpose) cert.J_hat = -cert.J_hat;
  const Matrix j_tilde = antisymmetric_part(psi * cert.J_hat * psi.transpose());
  const Matrix j = antisymmetric_part(k.sqrt() * j_tilde * k.sqrt());

  cert.pair = make_pair_from_J(k, d_opt, j);
  cert.tilde.J = j;
  cert.tilde.D_tilde = d_tilde;
  cert.tilde.J_tilde = j_tilde;
  cert.tilde.C_tilde = d_tilde + j_tilde;

  Vector lam(n);
  for (Eigen::Index i = 0; i < n; ++i) lam(i) = cert.lambdas[static_cast<std::size_t>(i)];
  const Matrix q = symmetric_part(psi * lam.asDiagonal() * psi.transpose());
  const Matrix p = symmetric_part(psi * lam.cwiseInverse().asDiagonal() * psi.transpose());
  // The transposed drift contracts in the Q-norm instead of the P-norm.
  cert.Q = variant == Variant::Standard ? q : p;
  cert.P = variant == Variant::Standard ? p : q;
  return cert;
}

}  // namespace

OptimalCertificate construct_optimal(const Covariance& k, double c, Variant variant) {
  if (!(c > 1.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidConstant, "c must exceed 1");
  if (k.is_isotropic()) return isotropic_certificate(k, c, variant);
  return build(k, default_schedule(static_cast<int>(k.dim()), c), c, variant);
}

OptimalCertificate construct_optimal(const Covariance& k, const LambdaSchedule& schedule,
                                     Variant variant) {
  if (k.is_isotropic()) return isotropic_certificate(k, schedule.constant(), variant);
  return build(k, schedule, schedule.constant(), variant);
}

double lyapunov_certificate_residual(const OptimalCertificate& cert) {
  const Matrix& ct = cert.tilde.C_tilde;
  return (ct * cert.Q + cert.Q * ct.transpose() - 2.0 * cert.lambda_opt * cert.Q).norm();
}

double equidistribution_residual(const OptimalCertificate& cert) {
  const Matrix& psi = cert.basis.Psi;
  const Vector diag = (psi.transpose() * cert.tilde.D_tilde * psi).diagonal();
  return (diag.array() - cert.lambda_opt).abs().maxCoeff();
}

FrobeniusBound frobenius_bound(const Covariance& k, double c) {
  if (!(c > 1.0)) throw Error(ErrorCode::InvalidConstant, "c must exceed 1");
  const double d = static_cast<double>(k.dim());
  const double c2 = c * c;
  const double beta = 2.0 * std::numbers::pi * c2 / (std::sqrt(3.0) * (c2 - 1.0));
  const double drift =
      k.lambda_opt() * (d + std::sqrt(k.condition_number()) * beta * std::sqrt(d) * (d - 1.0));
  return {drift, d};
}

Covariance growth_family(int d) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "growth family needs d >= 2");
  Vector diag = Vector::Constant(d, 2.0);
  diag(0) = 1.0;
  return Covariance::diagonal(diag);
}

std::vector<GrowthRow> growth_study(double c, const std::vector<int>& dims) {
  std::vector<GrowthRow> rows;
  rows.reserve(dims.size());
  for (int d : dims) {
    const Covariance k = growth_family(d);
    const OptimalCertificate cert = construct_optimal(k, c);
    rows.push_back({d, cert.pair.C.norm(), frobenius_bound(k, c).drift});
  }
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "slope fit needs two or more matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fpopt
