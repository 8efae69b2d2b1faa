#pragma once

#include "fpopt/optimal_construction.hpp"
#include "fpopt/propagator_analysis.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace fpopt::io {

using json = nlohmann::json;

/// Row-major nested arrays, or {"diag": [...]}.
Matrix parse_matrix(const json& j, const char* what);
json matrix_to_json(const Matrix& m);
json vector_to_json(const Vector& v);

/// Accepts a full matrix, {"diag": [...]} or {"eigenvalues": [...], "eigenvectors": [[...]]}.
Covariance parse_covariance(const json& j);

/// {"C": M, "D": M} or {"D": M, "J": M}.
CoefficientPair parse_pair(const json& j, const Covariance& k);

struct AnalysisBlock {
  std::optional<double> rate;
  std::optional<double> t_max;
  std::optional<std::size_t> samples;
};

struct ProblemFile {
  std::string id;
  Covariance k;
  std::optional<double> c;
  Variant variant = Variant::Standard;
  std::optional<LambdaSchedule> lambdas;
  std::optional<CoefficientPair> pair;
  std::optional<Schedule> schedule;
  AnalysisBlock analysis;

  /// The schedule, else the explicit pair held constant, else the optimal
  /// pair for budget c. Throws ParseError when none is available.
  Schedule dynamics() const;
};

/// Throws Error(ParseError) on malformed input. Construction errors of
/// schedule pieces (InvalidConstant, NotAdmissible, ...) propagate unchanged.
ProblemFile parse_problem(const json& j, const std::string& default_id = "problem");
ProblemFile load_problem(const std::filesystem::path& path);

json certificate_to_json(const OptimalCertificate& cert, const Covariance& k);
json report_to_json(const ValidationReport& r);

}  // namespace fpopt::io
