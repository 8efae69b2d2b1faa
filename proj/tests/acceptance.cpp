// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include "oracles.hpp"

#include "fpopt/optimal_construction.hpp"
#include "fpopt/propagator_analysis.hpp"
#include "fpopt/reference_problems.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace fpopt;
namespace ref = fpopt::reference;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects the failed checks of one criterion and a short summary.
struct Criterion {
  std::ostringstream failures;
  std::ostringstream summary;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) failures << "; ";
      failures << what;
      ok = false;
    }
  }
};

Matrix diag2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v.asDiagonal();
}

void construction_2d(Criterion& cr) {
  Covariance k(diag2(1, 2));
  double worst = 0.0, slowest = 0.0;
  for (double c : {1.5, 2.0}) {
    const double mu = (c * c + 1) / (c * c - 1);
    const auto t0 = Clock::now();
    OptimalCertificate cert = construct_optimal(k, c);
    slowest = std::max(slowest, seconds_since(t0));
    Matrix c_ref(2, 2);
    c_ref << 2, mu / std::sqrt(2.0), -std::sqrt(2.0) * mu, 0;
    worst = std::max({worst, oracle::max_abs(cert.pair.C - c_ref), oracle::max_abs(cert.pair.D - diag2(2, 0))});
  }
  cr.expect(worst <= 1e-12, "entrywise error " + std::to_string(worst));
  cr.expect(slowest < 0.1, "runtime");
  cr.summary << "max entry error " << worst << ", " << slowest * 1e3 << " ms";
}

void eigenvalues_2d(Criterion& cr) {
  Covariance k(diag2(1, 2));
  double worst = 0.0, gap_err = 0.0;
  for (double c : {1.5, 2.0}) {
    const double mu = (c * c + 1) / (c * c - 1);
    OptimalCertificate cert = construct_optimal(k, c);
    auto got = general_eigenvalues(cert.pair.C);
    const std::complex<double> lo(1.0, -std::sqrt(mu * mu - 1)), hi(1.0, std::sqrt(mu * mu - 1));
    worst = std::max({worst, std::abs(got[0] - lo), std::abs(got[1] - hi)});
    auto poly = oracle::eig2(cert.pair.C);
    worst = std::max({worst, std::abs(poly[0] - lo), std::abs(poly[1] - hi)});
    gap_err = std::max({gap_err, std::abs(spectral_gap(cert.pair) - 1.0), std::abs(k.lambda_opt() - 1.0)});
  }
  cr.expect(worst <= 1e-9, "eigenvalue error");
  cr.expect(gap_err <= 1e-10, "spectral gap");
  cr.summary << "eigenvalue error " << worst << ", gap error " << gap_err;
}

void frobenius_regression(Criterion& cr) {
  Covariance k(diag2(1 / ref::kEpsilon, 1));
  OptimalCertificate cert = construct_optimal(k, std::sqrt(2.0));
  OptimalCertificate gm = construct_optimal(k, gm_schedule(2));
  const double e1 = std::abs(cert.pair.C.norm() / std::sqrt(184.45) - 1);
  const double e2 = std::abs(gm.pair.C.norm() / std::sqrt(986.45) - 1);
  cr.expect(e1 <= 1e-9, "||C_opt||_F");
  cr.expect(e2 <= 1e-9, "||C_gm||_F");
  cr.expect(cert.pair.D.norm() == 2.0, "||D_opt||_F");
  cr.summary << "||C_opt||_F^2 = " << cert.pair.C.squaredNorm() << ", ||C_gm||_F^2 = " << gm.pair.C.squaredNorm()
             << ", ||D||_F = " << cert.pair.D.norm();
}

void envelope_sharpness(Criterion& cr) {
  Covariance k = ref::anisotropic_covariance();
  double worst = 0.0, slowest = 0.0;
  for (double c : {1.5, 2.0, 3.0}) {
    CoefficientPair p = construct_optimal(k, c).pair;
    const auto t0 = Clock::now();
    NormCurve curve = norm_curve(Schedule::constant(k, p), 5.0, 4096, 1.0);
    slowest = std::max(slowest, seconds_since(t0));
    const double b = best_constant_2d(k, p);
    worst = std::max({worst, std::abs(curve.sharp_constant - c), std::abs(b - c), std::abs(b - curve.sharp_constant)});
    cr.summary << "c=" << c << ": " << curve.sharp_constant << "  ";
  }
  cr.expect(worst <= 1e-4, "constant error");
  cr.expect(slowest < 2.0, "runtime");
  cr.summary << "max error " << worst << ", slowest curve " << slowest << " s";
}

void lyapunov_certificate(Criterion& cr) {
  oracle::Rng rng(20240501);
  double worst_res = 0.0, worst_decay = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 7;
    Covariance k(rng.spd(d, 0.25, 4.0));
    for (double c : {1.2, 2.0}) {
      OptimalCertificate cert = construct_optimal(k, c);
      const double lam = k.lambda_opt();
      const Matrix ct = oracle::tilde(k.matrix(), cert.pair.C);
      const Matrix r = ct * cert.Q + cert.Q * ct.transpose() - 2 * lam * cert.Q;
      worst_res = std::max(worst_res, r.norm() / (lam * cert.Q.norm()));
      const Matrix p = cert.Q.inverse();
      for (double t : {0.1, 1.0, 5.0}) {
        const Matrix e = oracle::expm(ct, t);
        for (int i = 0; i < 100; ++i) {
          const Vector x = rng.gaussian_vector(d);
          const Vector y = e * x;
          const double px = std::sqrt(x.dot(p * x));
          worst_decay = std::max(worst_decay, std::abs(std::sqrt(y.dot(p * y)) - std::exp(-lam * t) * px) / px);
        }
      }
    }
  }
  cr.expect(worst_res <= 1e-9, "certificate residual");
  cr.expect(worst_decay <= 1e-8, "P-norm decay");
  cr.summary << "max residual/(lambda ||Q||) " << worst_res << ", max P-norm deviation " << worst_decay;
}

double rho(const Matrix& c) {
  Eigen::EigenSolver<Matrix> es(c, false);
  return es.eigenvalues().real().minCoeff();
}

void spectral_gap_bound(Criterion& cr) {
  oracle::Rng rng(777);
  double worst_excess = -INFINITY, worst_attain = 0.0;
  int pairs = 0;
  for (int kk = 0; kk < 10; ++kk) {
    const int d = 2 + kk % 5;
    Covariance k(rng.spd(d));
    const double lam = k.lambda_opt();
    for (int i = 0; i < 200; ++i, ++pairs) {
      worst_excess = std::max(worst_excess, rho(rng.admissible(k.matrix()).C) - lam);
    }
    worst_attain = std::max(worst_attain, std::abs(rho(construct_optimal(k, 2.0).pair.C) - lam));
  }
  cr.expect(worst_excess <= 1e-9, "rho(C) above lambda_opt");
  cr.expect(worst_attain <= 1e-9, "certificate gap");
  cr.summary << pairs << " pairs, max rho - lambda_opt " << worst_excess << ", certificate gap error " << worst_attain;
}

// Least-squares cubic a + b t + c t^2 + d t^3 through the samples.
Vector cubic_fit(const std::vector<double>& t, const std::vector<double>& y) {
  Matrix a(t.size(), 4);
  Vector b(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    a.row(i) << 1, t[i], t[i] * t[i], t[i] * t[i] * t[i];
    b(i) = y[i];
  }
  return a.colPivHouseholderQr().solve(b);
}

void initial_decay(Criterion& cr) {
  Covariance k(diag2(20, 1));
  const double opt = max_initial_decay(k).rate;
  cr.expect(std::abs(opt - 2.0 / 21.0) <= 1e-12, "max initial decay");
  oracle::Rng rng(99);
  double worst = -INFINITY;
  for (int i = 0; i < 100; ++i) worst = std::max(worst, initial_decay_rate(k, rng.admissible(k.matrix())) - 2.0 / 21.0);
  cr.expect(worst <= 1e-9, "random pair beats the optimum");

  double worst_rate = 0.0, worst_linear = 0.0, max_quad = 0.0;
  std::vector<Covariance> ks{k, Covariance(rng.spd(3)), Covariance(rng.spd(5))};
  for (const auto& kc : ks) {
    for (double c : {1.5, 2.0, 3.0}) {
      CoefficientPair p = construct_optimal(kc, c).pair;
      worst_rate = std::max(worst_rate, std::abs(initial_decay_rate(kc, p)));
      NormCurve curve = norm_curve(Schedule::constant(kc, p), 1e-3, 41, kc.lambda_opt());
      const Vector coef = cubic_fit(curve.t, curve.values);
      worst_linear = std::max(worst_linear, std::abs(coef(1)));
      max_quad = std::max(max_quad, std::abs(coef(2)));
      cr.expect(std::abs(coef(0) - 1) <= 1e-12, "constant term");
    }
  }
  cr.expect(worst_rate <= 1e-12, "rank-one initial rate");
  cr.expect(worst_linear <= 1e-6, "linear coefficient");
  cr.expect(std::isfinite(max_quad), "quadratic coefficient");
  cr.summary << "max decay 2/21 error " << std::abs(opt - 2.0 / 21.0) << ", random excess " << worst
             << ", rank-one |rate| " << worst_rate << ", |linear| " << worst_linear << ", |quadratic| " << max_quad;
}

void schedule_study(Criterion& cr) {
  std::vector<NamedSchedule> named;
  for (int i = 1; i <= 5; ++i) named.push_back({ref::split_case_id(i), ref::split_case_schedule(i, 0.1)});
  std::map<std::string, double> sc;
  for (const auto& row : compare_schedules(named, 1.0)) sc[row.id] = row.sharp_constant;
  cr.expect(sc["FP5"] < sc["FP1"], "FP5 not below FP1");
  for (const char* id : {"FP2", "FP3", "FP4"}) cr.expect(sc[id] > sc["FP1"], std::string(id) + " not above FP1");

  Covariance k = ref::anisotropic_covariance();
  const double tt = tangency_time(k, ref::split_case_pair(5), 1.0);
  cr.expect(std::abs(tt - 0.1434) <= 1e-3, "tangency time");
  const double c5 = sharp_constant(ref::split_case_schedule(5, tt), 1.0);
  const double c1 = sharp_constant(ref::split_case_schedule(1, tt), 1.0);
  cr.expect(std::abs(c5 - std::sqrt(6.0 / 5.0)) <= 1e-3, "FP5 tangency constant");
  cr.expect(std::abs(c1 - std::sqrt(4.0 / 3.0)) <= 1e-4, "FP1 constant");
  for (const auto& [id, v] : sc) cr.summary << id << "=" << v << " ";
  cr.summary << "| t* = " << tt << ", FP5(t*) = " << c5 << ", FP1 = " << c1;
}

void hypoellipticity(Criterion& cr) {
  CoefficientPair bad{diag2(1, 0), diag2(1, 0)};
  ValidationReport r = validate_pair(Covariance(Matrix::Identity(2, 2)), bad);
  cr.expect(!r.hypoelliptic && !r.all_passed(), "degenerate pair accepted");
  oracle::Rng rng(5);
  int accepted = 0, total = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 7;
    Covariance k(rng.spd(d));
    for (double c : {1.2, 2.0, 5.0}) {
      for (Variant v : {Variant::Standard, Variant::Transpose}) {
        ValidationReport cert = validate_pair(k, construct_optimal(k, c, v).pair);
        ++total;
        if (cert.all_passed() && cert.hypoelliptic && cert.rank_D == 1) ++accepted;
      }
    }
  }
  cr.expect(accepted == total, "certificate rejected");
  cr.summary << "diag(1,0) rejected, " << accepted << "/" << total << " rank-one certificates accepted";
}

void growth(Criterion& cr) {
  const auto t0 = Clock::now();
  auto rows = growth_study(2.0, {8, 16, 32, 64});
  const double elapsed = seconds_since(t0);
  std::vector<double> d, bound;
  for (const auto& r : rows) {
    cr.expect(r.actual <= r.bound, "actual above bound at d=" + std::to_string(r.d));
    d.push_back(r.d);
    bound.push_back(r.bound);
    cr.summary << "d=" << r.d << ": " << r.actual << " <= " << r.bound << "  ";
  }
  const double slope = loglog_slope(d, bound);
  cr.expect(std::abs(slope - 1.5) <= 0.1, "slope " + std::to_string(slope));
  cr.expect(elapsed < 30.0, "runtime");
  cr.summary << "slope " << slope << ", " << elapsed << " s";
}

void time_dependent(Criterion& cr) {
  Covariance k = ref::anisotropic_covariance();
  const double tt = tangency_time(k, ref::split_case_pair(5), 1.0);
  double worst_comp = 0.0, worst_ode = 0.0;
  for (const Schedule& s : {ref::split_case_schedule(1, 0.1), ref::split_case_schedule(5, 0.1),
                            ref::split_case_schedule(5, tt)}) {
    const double b = s.last_breakpoint();
    const std::vector<std::array<double, 3>> triples{
        {0.0, 0.5 * b, 2.0 * b}, {0.0, b, 3.0}, {0.25 * b, 1.5 * b, 1.0}, {0.0, 0.7, 2.5}};
    for (const auto& [t0, t1, t2] : triples) {
      const Matrix full = ode_propagator(s, t0, t2);
      worst_comp = std::max(worst_comp, oracle::max_abs(full - ode_propagator(s, t1, t2) * ode_propagator(s, t0, t1)));
      worst_ode = std::max(worst_ode, oracle::max_abs(full - oracle::propagator(s, t0, t2)));
    }
  }
  cr.expect(worst_comp <= 1e-10, "composition");
  cr.expect(worst_ode <= 1e-8, "ODE oracle");
  cr.summary << "composition error " << worst_comp << ", oracle error " << worst_ode;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Criterion&)>>> criteria{
      {"2D optimal construction for K=diag(1,2)", construction_2d},
      {"2D spectrum and spectral gap", eigenvalues_2d},
      {"Frobenius norms for eps=0.05, c=sqrt(2)", frobenius_regression},
      {"envelope sharpness c in {1.5,2,3}", envelope_sharpness},
      {"Lyapunov certificate on random SPD K", lyapunov_certificate},
      {"spectral gap bounded by lambda_opt and attained", spectral_gap_bound},
      {"maximal initial decay and rank-one flat start", initial_decay},
      {"split schedule ranking and tangency switch", schedule_study},
      {"hypoellipticity check", hypoellipticity},
      {"Frobenius growth study", growth},
      {"time-dependent propagator", time_dependent},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion cr;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(cr);
    } catch (const std::exception& e) {
      cr.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] %2zu %-50s %s (%.2fs)\n", cr.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                cr.summary.str().c_str(), seconds_since(t0));
    if (!cr.ok) {
      std::printf("        failed: %s\n", cr.failures.str().c_str());
      ++failed;
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
