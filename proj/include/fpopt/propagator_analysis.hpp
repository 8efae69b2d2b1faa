#pragma once

#include "fpopt/admissible_pairs.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fpopt {

/// Piecewise-constant coefficients sharing one equilibrium. Piece i is active
/// on [starts[i], starts[i+1]); the last piece stays active forever.
class Schedule {
 public:
  /// Throws InvalidInterval for bad breakpoints and NotAdmissible when a piece
  /// does not keep K stationary.
  Schedule(Covariance k, std::vector<double> starts, std::vector<CoefficientPair> pairs);

  static Schedule constant(Covariance k, CoefficientPair pair);
  /// `initial` on [0, t0), `final` afterwards.
  static Schedule split(Covariance k, CoefficientPair initial, double t0, CoefficientPair final);

  const Covariance& covariance() const { return k_; }
  const std::vector<double>& starts() const { return starts_; }
  const std::vector<CoefficientPair>& pairs() const { return pairs_; }
  const Matrix& drift_tilde(std::size_t piece) const { return c_tilde_[piece]; }
  std::size_t pieces() const { return pairs_.size(); }
  double last_breakpoint() const { return starts_.back(); }
  /// Spectral gap of the piece that stays active for large t.
  double asymptotic_rate() const;
  /// max_i ||C~_i||_2, used to size sampling grids.
  double max_drift_norm() const;

 private:
  Covariance k_;
  std::vector<double> starts_;
  std::vector<CoefficientPair> pairs_;
  std::vector<Matrix> c_tilde_;
};

/// T(t2, t1): solution map of x' = -C~(t) x from t1 to t2.
Matrix ode_propagator(const Schedule& schedule, double t1, double t2);

struct NormCurve {
  std::vector<double> t;
  std::vector<double> values;  // ||T(t_j, 0)||
  double rate = 0.0;
  double sharp_constant = 0.0;  // refined supremum of exp(rate t) ||T(t, 0)||
  double grid_constant = 0.0;   // the same supremum restricted to this grid

  double envelope(std::size_t j) const;
};

struct EnvelopePeak {
  double t = 0.0;
  double value = 0.0;  // exp(rate t) ||T(t, 0)|| at a refined local maximum
};

struct EnvelopeScan {
  double rate = 0.0;
  double horizon = 0.0;
  double sharp_constant = 0.0;
  std::vector<EnvelopePeak> peaks;  // ascending in t
};

inline constexpr std::size_t kMinEnvelopeSamples = 2048;

/// max(20 / rate, 4 * last breakpoint).
double default_horizon(const Schedule& schedule, double rate);

/// Coarse uniform grid (breakpoints included) followed by golden-section
/// refinement around every local maximum of exp(rate t) ||T(t, 0)||.
/// Throws RateTooLarge when the second half of the horizon exceeds the first.
EnvelopeScan scan_envelope(const Schedule& schedule, double rate,
                           std::optional<double> t_max = std::nullopt);

/// Minimal c with ||T(t, 0)|| <= c exp(-rate t) on the horizon.
double sharp_constant(const Schedule& schedule, double rate,
                      std::optional<double> t_max = std::nullopt);

/// Uniform samples of the propagator norm on [0, t_max]. `rate` defaults to
/// the asymptotic rate; the envelope constant is taken over
/// max(t_max, default_horizon).
NormCurve norm_curve(const Schedule& schedule, double t_max, std::size_t samples,
                     std::optional<double> rate = std::nullopt);

/// CSV with header `t,norm,envelope` and 17 significant digits.
void write_norm_curve_csv(std::ostream& os, const NormCurve& curve);

/// Closed-form best constant sqrt((1+a)/(1-a)) for 2x2 drifts whose two
/// eigenvalues share their real part; a = |<v1, v2>| of unit eigenvectors.
double best_constant_2d(const Covariance& k, const CoefficientPair& pair);

/// lambda_min of the symmetric part of C~, the slope of the norm at t = 0.
double initial_decay_rate(const Covariance& k, const CoefficientPair& pair);

struct InitialDecayOptimum {
  double rate = 0.0;  // d / Tr(K)
  CoefficientPair pair;
};

InitialDecayOptimum max_initial_decay(const Covariance& k);

/// First t > 0 at which exp(rate t) ||exp(-C~ t)|| reaches its supremum.
double tangency_time(const Covariance& k, const CoefficientPair& pair, double rate);

struct NamedSchedule {
  std::string id;
  Schedule schedule;
};

struct ComparisonRow {
  std::string id;
  double sharp_constant = 0.0;
  std::vector<double> piece_frobenius;  // ||C_i||_F per piece
  double max_frobenius = 0.0;
};

/// Sharp constants of several schedules at one rate, ascending.
/// Throws MixedEquilibria when the schedules do not share K.
std::vector<ComparisonRow> compare_schedules(const std::vector<NamedSchedule>& schedules,
                                             double rate);

}  // namespace fpopt
