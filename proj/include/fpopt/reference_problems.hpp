#pragma once

// Two-dimensional benchmark problems: K = diag(1/eps, 1) with rotational
// drifts C~ = [[0, -mu], [mu, 2]] and the split schedules built from them.

#include "fpopt/propagator_analysis.hpp"

#include <string>

namespace fpopt::reference {

inline constexpr double kEpsilon = 0.05;

/// Rotation strength of the optimal 2D pair for envelope constant c.
double mu_for_constant(double c);
/// Inverse of mu_for_constant: sqrt((mu + 1) / (mu - 1)).
double constant_for_mu(double mu);

/// K = diag(1/eps, 1).
Covariance anisotropic_covariance(double eps = kEpsilon);

/// D = diag(0, 2), C = [[0, -mu/sqrt(eps)], [mu sqrt(eps), 2]].
CoefficientPair rotation_pair(double mu, double eps = kEpsilon);

/// Initial-phase pair of case FP1..FP6.
///  1: mu = 7   2: (K^{-1}, I)   3: max initial decay   4: mu = 3
///  5: mu = 11  6: mu = 13.8
CoefficientPair split_case_pair(int which, double eps = kEpsilon);

/// Pair of case `which` on [0, t0), then the mu = 7 pair.
Schedule split_case_schedule(int which, double t0, double eps = kEpsilon);

std::string split_case_id(int which);

/// Switching time used for FP6.
inline constexpr double kFp6Switch = 0.11413;

}  // namespace fpopt::reference
