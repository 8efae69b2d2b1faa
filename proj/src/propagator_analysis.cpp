#include "fpopt/propagator_analysis.hpp"

#include "fpopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>

namespace fpopt {

Schedule::Schedule(Covariance k, std::vector<double> starts, std::vector<CoefficientPair> pairs)
    : k_(std::move(k)), starts_(std::move(starts)), pairs_(std::move(pairs)) {
  if (pairs_.empty() || starts_.size() != pairs_.size()) {
    throw Error(ErrorCode::InvalidInterval, "schedule needs one start time per piece");
  }
  if (starts_.front() != 0.0) {
    throw Error(ErrorCode::InvalidInterval, "schedule must start at t = 0");
  }
  for (std::size_t i = 1; i < starts_.size(); ++i) {
    if (!std::isfinite(starts_[i]) || !(starts_[i] > starts_[i - 1])) {
      throw Error(ErrorCode::InvalidInterval, "schedule breakpoints must increase strictly");
    }
  }
  c_tilde_.reserve(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const ValidationReport report = validate_pair(k_, pairs_[i]);
    if (!report.admissible) {
      throw Error(ErrorCode::NotAdmissible,
                  "schedule piece " + std::to_string(i) + " does not preserve the equilibrium");
    }
    c_tilde_.push_back(fpopt::drift_tilde(k_, pairs_[i].C));
  }
}

Schedule Schedule::constant(Covariance k, CoefficientPair pair) {
  return Schedule(std::move(k), {0.0}, {std::move(pair)});
}

Schedule Schedule::split(Covariance k, CoefficientPair initial, double t0, CoefficientPair final) {
  return Schedule(std::move(k), {0.0, t0}, {std::move(initial), std::move(final)});
}

double Schedule::asymptotic_rate() const { return spectral_gap(pairs_.back()); }

double Schedule::max_drift_norm() const {
  double n = 0.0;
  for (const auto& ct : c_tilde_) n = std::max(n, spectral_norm(ct));
  return n;
}

Matrix ode_propagator(const Schedule& schedule, double t1, double t2) {
  if (!(t1 >= 0.0) || !(t2 >= t1) || !std::isfinite(t2)) {
    throw Error(ErrorCode::InvalidInterval, "propagator needs 0 <= t1 <= t2 < inf");
  }
  const auto& starts = schedule.starts();
  const Eigen::Index n = schedule.covariance().dim();
  Matrix t = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const double lo = std::max(t1, starts[i]);
    const double hi = i + 1 < starts.size() ? std::min(t2, starts[i + 1]) : t2;
    if (hi > lo) t = expm(schedule.drift_tilde(i), hi - lo) * t;
  }
  return t;
}

double NormCurve::envelope(std::size_t j) const {
  return sharp_constant * std::exp(-rate * t[j]);
}

double default_horizon(const Schedule& schedule, double rate) {
  return std::max(20.0 / rate, 4.0 * schedule.last_breakpoint());
}

namespace {

constexpr std::size_t kMaxEnvelopeSamples = std::size_t{1} << 20;

double envelope_value(const Schedule& schedule, double rate, double t) {
  return std::exp(rate * t) * spectral_norm(ode_propagator(schedule, 0.0, t));
}

// Golden-section search for the maximum of g on [a, b].
EnvelopePeak golden_max(const Schedule& schedule, double rate, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto g = [&](double t) { return envelope_value(schedule, rate, t); };
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double g1 = g(x1);
  double g2 = g(x2);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + inv_phi * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - inv_phi * (b - a);
      g1 = g(x1);
    }
  }
  EnvelopePeak best{a, g(a)};
  for (const EnvelopePeak& cand : {EnvelopePeak{b, g(b)}, EnvelopePeak{x1, g1}, EnvelopePeak{x2, g2}}) {
    if (cand.value > best.value) best = cand;
  }
  return best;
}

}  // namespace

EnvelopeScan scan_envelope(const Schedule& schedule, double rate, std::optional<double> t_max) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::InvalidArgument, "envelope rate must be positive");
  }
  const double horizon = t_max.value_or(default_horizon(schedule, rate));
  if (!(horizon >= 20.0 / rate * (1.0 - 1e-12))) {
    throw Error(ErrorCode::InvalidArgument, "envelope horizon must be at least 20 / rate");
  }

  // Grid fine enough to resolve the rotation of the fastest piece.
  const double h_max = 0.125 / std::max(schedule.max_drift_norm(), 1e-12);
  const auto wanted = static_cast<std::size_t>(std::ceil(horizon / h_max));
  const std::size_t n = std::clamp(wanted, kMinEnvelopeSamples, kMaxEnvelopeSamples);
  std::vector<double> grid;
  grid.reserve(n + 1 + schedule.starts().size());
  for (std::size_t j = 0; j <= n; ++j) grid.push_back(horizon * static_cast<double>(j) / n);
  for (double s : schedule.starts()) {
    if (s > 0.0 && s < horizon) grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> g(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) g[j] = envelope_value(schedule, rate, grid[j]);

  EnvelopeScan scan;
  scan.rate = rate;
  scan.horizon = horizon;
  const std::size_t last = grid.size() - 1;
  for (std::size_t j = 0; j <= last; ++j) {
    const bool ge_left = j == 0 || g[j] >= g[j - 1];
    const bool ge_right = j == last || g[j] >= g[j + 1];
    if (!ge_left || !ge_right) continue;
    const bool strict = (j > 0 && g[j] > g[j - 1]) || (j < last && g[j] > g[j + 1]);
    EnvelopePeak peak{grid[j], g[j]};
    if (strict) {
      // Refine on each side separately so breakpoint kinks are never straddled.
      if (j > 0) {
        const EnvelopePeak left = golden_max(schedule, rate, grid[j - 1], grid[j]);
        if (left.value > peak.value) peak = left;
      }
      if (j < last) {
        const EnvelopePeak right = golden_max(schedule, rate, grid[j], grid[j + 1]);
        if (right.value > peak.value) peak = right;
      }
    }
    scan.peaks.push_back(peak);
  }

  double first_half = 0.0;
  double second_half = 0.0;
  for (const auto& p : scan.peaks) {
    double& window = p.t <= 0.5 * horizon ? first_half : second_half;
    window = std::max(window, p.value);
    scan.sharp_constant = std::max(scan.sharp_constant, p.value);
  }
  // At the gap itself the envelope of a d >= 3 drift is quasi-periodic and
  // later peaks may edge above earlier ones without any real growth.
  const double gap = schedule.asymptotic_rate();
  const bool above_gap = rate > gap + 1e-9 * std::max(1.0, gap);
  if (above_gap && second_half > (1.0 + 1e-6) * first_half) {
    throw Error(ErrorCode::RateTooLarge,
                "exp(rate t) ||T(t,0)|| keeps growing; rate exceeds the asymptotic decay");
  }
  return scan;
}

double sharp_constant(const Schedule& schedule, double rate, std::optional<double> t_max) {
  return scan_envelope(schedule, rate, t_max).sharp_constant;
}

NormCurve norm_curve(const Schedule& schedule, double t_max, std::size_t samples,
                     std::optional<double> rate) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::InvalidArgument, "curve horizon must be positive");
  }
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "curve needs at least two samples");
  NormCurve curve;
  curve.rate = rate.value_or(schedule.asymptotic_rate());
  curve.t.resize(samples);
  curve.values.resize(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    const double t = t_max * static_cast<double>(j) / static_cast<double>(samples - 1);
    curve.t[j] = t;
    curve.values[j] = spectral_norm(ode_propagator(schedule, 0.0, t));
    curve.grid_constant = std::max(curve.grid_constant, std::exp(curve.rate * t) * curve.values[j]);
  }
  const double horizon = std::max(t_max, default_horizon(schedule, curve.rate));
  curve.sharp_constant =
      std::max(sharp_constant(schedule, curve.rate, horizon), curve.grid_constant);
  return curve;
}

void write_norm_curve_csv(std::ostream& os, const NormCurve& curve) {
  os << "t,norm,envelope\n";
  char buf[96];
  for (std::size_t j = 0; j < curve.t.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", curve.t[j], curve.values[j],
                  curve.envelope(j));
    os << buf;
  }
}

double best_constant_2d(const Covariance& k, const CoefficientPair& pair) {
  if (k.dim() != 2 || pair.C.rows() != 2) {
    throw Error(ErrorCode::NotApplicable2D, "closed form needs d = 2");
  }
  const Matrix ct = drift_tilde(k, pair.C);
  Eigen::EigenSolver<Matrix> es(ct);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "2x2 eigensolve failed");
  const auto tau = es.eigenvalues();
  const double scale = std::max({1.0, std::abs(tau(0)), std::abs(tau(1))});
  if (std::abs(tau(0).real() - tau(1).real()) > 1e-9 * scale) {
    throw Error(ErrorCode::NotApplicable2D, "eigenvalues of C~ have different real parts");
  }
  const Eigen::Vector2cd v1 = es.eigenvectors().col(0).normalized();
  const Eigen::Vector2cd v2 = es.eigenvectors().col(1).normalized();
  const double alpha = std::abs(v1.dot(v2));  // dot() conjugates the first argument
  if (alpha >= 1.0 - 1e-12) {
    throw Error(ErrorCode::NotApplicable2D, "C~ is not diagonalizable");
  }
  return std::sqrt((1.0 + alpha) / (1.0 - alpha));
}

double initial_decay_rate(const Covariance& k, const CoefficientPair& pair) {
  return sym_eigen(symmetric_part(drift_tilde(k, pair.C))).values(0);
}

InitialDecayOptimum max_initial_decay(const Covariance& k) {
  const Eigen::Index n = k.dim();
  const double rate = static_cast<double>(n) / k.trace();
  return {rate, {rate * Matrix::Identity(n, n), rate * k.matrix()}};
}

double tangency_time(const Covariance& k, const CoefficientPair& pair, double rate) {
  const EnvelopeScan scan = scan_envelope(Schedule::constant(k, pair), rate);
  for (const auto& p : scan.peaks) {
    if (p.t > 0.0 && p.value >= scan.sharp_constant * (1.0 - 1e-8)) return p.t;
  }
  throw Error(ErrorCode::InvalidArgument, "envelope supremum is only attained at t = 0");
}

std::vector<ComparisonRow> compare_schedules(const std::vector<NamedSchedule>& schedules,
                                             double rate) {
  if (schedules.empty()) return {};
  const Covariance& k = schedules.front().schedule.covariance();
  double horizon = 0.0;
  for (const auto& s : schedules) {
    if (!s.schedule.covariance().same_as(k)) {
      throw Error(ErrorCode::MixedEquilibria, "schedule '" + s.id + "' has a different K");
    }
    horizon = std::max(horizon, default_horizon(s.schedule, rate));
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(schedules.size());
  for (const auto& s : schedules) {
    ComparisonRow row;
    row.id = s.id;
    row.sharp_constant = sharp_constant(s.schedule, rate, horizon);
    for (const auto& p : s.schedule.pairs()) {
      row.piece_frobenius.push_back(p.C.norm());
      row.max_frobenius = std::max(row.max_frobenius, p.C.norm());
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.sharp_constant < b.sharp_constant;
  });
  return rows;
}

}  // namespace fpopt
