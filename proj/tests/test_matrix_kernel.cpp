#include "doctest.h"
#include "oracles.hpp"

#include "fpopt/errors.hpp"
#include "fpopt/matrix_kernel.hpp"

using namespace fpopt;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("expm of a diagonal matrix") {
  Matrix a = Vector::LinSpaced(4, 0.5, 2.0).asDiagonal();
  Matrix e = expm(a, 1.3);
  for (int i = 0; i < 4; ++i) CHECK(e(i, i) == doctest::Approx(std::exp(-1.3 * a(i, i))).epsilon(1e-14));
  CHECK(oracle::max_abs(e - Matrix(e.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("expm of a rotation generator") {
  Matrix a = m2(0, -1, 1, 0);
  Matrix e = expm(a, 0.7);
  CHECK(e(0, 0) == doctest::Approx(std::cos(0.7)).epsilon(1e-14));
  CHECK(e(1, 0) == doctest::Approx(-std::sin(0.7)).epsilon(1e-14));
  CHECK(spectral_norm(e) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("expm at t = 0 is the identity and negative time is rejected") {
  oracle::Rng rng(1);
  Matrix a = rng.gaussian(3, 3);
  CHECK(oracle::max_abs(expm(a, 0.0) - Matrix::Identity(3, 3)) == 0.0);
  CHECK_THROWS_AS(expm(a, -1.0), Error);
}

TEST_CASE("expm agrees with the ODE integrator on random matrices") {
  oracle::Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 6);
    Matrix a = rng.gaussian(n, n) * rng.uniform(0.1, 3.0);
    const double t = rng.uniform(0.0, 2.0);
    Matrix ref = oracle::expm(a, t);
    CHECK(oracle::max_abs(expm(a, t) - ref) <= 1e-9 * std::max(1.0, oracle::max_abs(ref)));
  }
}

TEST_CASE("expm semigroup property") {
  oracle::Rng rng(3);
  Matrix a = rng.gaussian(4, 4);
  Matrix lhs = expm(a, 0.9);
  Matrix rhs = expm(a, 0.4) * expm(a, 0.5);
  CHECK(oracle::max_abs(lhs - rhs) <= 1e-12 * oracle::max_abs(lhs));
}

TEST_CASE("symmetry checks and parts") {
  Matrix s = m2(1, 2, 2, 3);
  Matrix a = m2(0, 1, -1, 0);
  CHECK(is_symmetric(s));
  CHECK_FALSE(is_symmetric(s + a));
  CHECK(is_antisymmetric(a));
  CHECK_FALSE(is_antisymmetric(s));
  CHECK(oracle::max_abs(symmetric_part(s + a) - s) < 1e-15);
  CHECK(oracle::max_abs(antisymmetric_part(s + a) - a) < 1e-15);
  CHECK_THROWS_AS(require_symmetric(s + a, "K"), Error);
  CHECK_THROWS_AS(require_antisymmetric(s, "J"), Error);
}

TEST_CASE("non-square and non-finite inputs are rejected") {
  CHECK_THROWS_AS(require_square_finite(Matrix::Zero(2, 3), "A"), Error);
  CHECK_THROWS_AS(require_square_finite(Matrix(0, 0), "A"), Error);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_FALSE(is_finite(bad));
  try {
    require_square_finite(bad, "A");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidMatrix);
  }
}

TEST_CASE("spectral norm equals the largest singular value") {
  CHECK(spectral_norm(m2(3, 0, 0, -4)) == doctest::Approx(4.0));
  CHECK(spectral_norm(m2(1, 1, 0, 1)) == doctest::Approx((1 + std::sqrt(5.0)) / 2));
}

TEST_CASE("sym_eigen is ascending, orthonormal and sign-normalised") {
  oracle::Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.integer(2, 7);
    Matrix k = rng.spd(n);
    SymEigen e = sym_eigen(k);
    for (int i = 1; i < n; ++i) CHECK(e.values(i) >= e.values(i - 1));
    CHECK(oracle::max_abs(e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)) < 1e-13);
    CHECK(oracle::max_abs(e.vectors * e.values.asDiagonal() * e.vectors.transpose() - k) < 1e-12 * k.norm());
    for (int i = 0; i < n; ++i) {
      int first = 0;
      while (std::abs(e.vectors(first, i)) < 1e-12) ++first;
      CHECK(e.vectors(first, i) > 0.0);
    }
  }
}

TEST_CASE("general eigenvalues match the characteristic polynomial") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = rng.gaussian(2, 2);
    auto got = general_eigenvalues(a);
    auto ref = oracle::eig2(a);
    std::sort(ref.begin(), ref.end(), [](auto x, auto y) {
      return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
    REQUIRE(got.size() == 2);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(got[i] - ref[i]) < 1e-12 * (1 + std::abs(ref[i])));
    CHECK(spectral_abscissa_min(a) == doctest::Approx(ref[0].real()).epsilon(1e-12));
  }
}

TEST_CASE("Lyapunov solve agrees with the eigenvector oracle") {
  oracle::Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 7);
    Matrix k = rng.spd(n);
    auto p = rng.admissible(k);
    Matrix q = solve_continuous_lyapunov(p.C, p.D);
    Matrix ref = oracle::lyapunov(p.C, p.D);
    CHECK(oracle::max_abs(q - ref) <= 1e-8 * oracle::max_abs(ref));
    // admissibility means K itself solves C K + K C^T = 2 D
    CHECK(oracle::max_abs(q - k) <= 1e-8 * oracle::max_abs(k));
  }
}

TEST_CASE("Lyapunov solve rejects a drift that is not positive stable") {
  try {
    solve_continuous_lyapunov(m2(1, 0, 0, -1), Matrix::Identity(2, 2));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveStable);
  }
}

TEST_CASE("numerical rank") {
  CHECK(numerical_rank(Matrix::Zero(3, 3)) == 0);
  CHECK(numerical_rank(Matrix::Identity(3, 3)) == 3);
  Matrix d = Matrix::Zero(3, 3);
  d(1, 1) = 1.0;
  CHECK(numerical_rank(d) == 1);
}

TEST_CASE("Kalman rank agrees with the explicit controllability matrix") {
  Matrix d = m2(1, 0, 0, 0);
  CHECK_FALSE(kalman_rank(d, d));
  CHECK(controllable_dimension(d, d) == 1);
  Matrix c = m2(1, -1, 1, 0);
  CHECK(kalman_rank(c, d));
  CHECK(controllable_dimension(c, d) == 2);

  oracle::Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.integer(2, 6);
    Matrix cc = rng.gaussian(n, n);
    Matrix dd = rng.psd(n, rng.integer(1, n), 1.0);
    if (trial % 3 == 0) {
      // block-triangular drift keeps the last coordinate out of reach
      cc.row(n - 1).head(n - 1).setZero();
      dd.row(n - 1).setZero();
      dd.col(n - 1).setZero();
    }
    const int ref = oracle::controllability_rank(cc, dd);
    CHECK(controllable_dimension(cc, dd) == ref);
    CHECK(kalman_rank(cc, dd) == (ref == n));
  }
}
