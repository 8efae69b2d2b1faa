#include "fpopt/problem_file.hpp"

#include "fpopt/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace fpopt::io {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

double number(const json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Vector parse_vector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) parse_fail(std::string(what) + " must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], what);
  return v;
}

}  // namespace

Matrix parse_matrix(const json& j, const char* what) {
  if (j.is_object()) {
    if (!j.contains("diag")) parse_fail(std::string(what) + ": object form needs \"diag\"");
    return Matrix(parse_vector(j.at("diag"), what).asDiagonal());
  }
  if (!j.is_array() || j.empty()) parse_fail(std::string(what) + " must be a nested array");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) parse_fail(std::string(what) + " rows must be arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) parse_fail(std::string(what) + " is ragged");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], what);
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Covariance parse_covariance(const json& j) {
  if (j.is_object() && j.contains("eigenvalues")) {
    if (!j.contains("eigenvectors")) parse_fail("K: eigenvalue form needs \"eigenvectors\"");
    return Covariance::from_eigen(parse_vector(j.at("eigenvalues"), "K eigenvalues"),
                                  parse_matrix(j.at("eigenvectors"), "K eigenvectors"));
  }
  return Covariance(parse_matrix(j, "K"));
}

CoefficientPair parse_pair(const json& j, const Covariance& k) {
  if (!j.is_object() || !j.contains("D")) parse_fail("pair needs \"D\" and one of \"C\", \"J\"");
  const Matrix d = parse_matrix(j.at("D"), "D");
  if (j.contains("C")) {
    const Matrix c = parse_matrix(j.at("C"), "C");
    if (c.rows() != k.dim() || c.cols() != k.dim() || d.rows() != k.dim() || d.cols() != k.dim()) {
      parse_fail("pair dimensions do not match K");
    }
    return {c, d};
  }
  if (j.contains("J")) return make_pair_from_J(k, d, parse_matrix(j.at("J"), "J"));
  parse_fail("pair needs \"C\" or \"J\"");
}

namespace {

CoefficientPair construct_piece(const json& piece, const ProblemFile& problem) {
  const json& directive = piece.at("construct");
  if (!directive.is_string()) parse_fail("\"construct\" must be a string");
  const std::string kind = directive.get<std::string>();
  if (kind == "symmetric") return symmetric_pair(problem.k);
  if (kind == "max_initial_decay") return max_initial_decay(problem.k).pair;
  if (kind == "optimal") {
    std::optional<double> c = problem.c;
    if (piece.contains("c")) c = number(piece.at("c"), "c");
    Variant variant = problem.variant;
    if (piece.contains("variant")) variant = parse_variant(piece.at("variant").get<std::string>());
    if (piece.contains("lambdas")) {
      std::vector<double> l = piece.at("lambdas").get<std::vector<double>>();
      return construct_optimal(problem.k, LambdaSchedule(std::move(l)), variant).pair;
    }
    if (!c) parse_fail("optimal construct directive needs a budget \"c\"");
    return construct_optimal(problem.k, *c, variant).pair;
  }
  parse_fail("unknown construct directive '" + kind + "'");
}

Schedule parse_schedule(const json& j, const ProblemFile& problem) {
  if (!j.is_array() || j.empty()) parse_fail("schedule must be a non-empty array");
  std::vector<double> starts;
  std::vector<CoefficientPair> pairs;
  double t = 0.0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& piece = j[i];
    if (!piece.is_object()) parse_fail("schedule entries must be objects");
    starts.push_back(t);
    if (piece.contains("pair")) {
      pairs.push_back(parse_pair(piece.at("pair"), problem.k));
    } else if (piece.contains("construct")) {
      pairs.push_back(construct_piece(piece, problem));
    } else {
      parse_fail("schedule entry needs \"pair\" or \"construct\"");
    }
    if (i + 1 < j.size()) {
      if (!piece.contains("duration")) parse_fail("every schedule entry but the last needs \"duration\"");
      const double dt = number(piece.at("duration"), "duration");
      if (!(dt > 0.0) || !std::isfinite(dt)) parse_fail("durations must be positive");
      t += dt;
    }
  }
  return Schedule(problem.k, std::move(starts), std::move(pairs));
}

}  // namespace

namespace {

ProblemFile parse_problem_unchecked(const json& j, const std::string& default_id) {
  if (!j.is_object()) parse_fail("problem file must be a JSON object");
  if (!j.contains("K")) parse_fail("problem file needs \"K\"");
  ProblemFile p{default_id, parse_covariance(j.at("K")), {}, Variant::Standard, {}, {}, {}, {}};
  if (j.contains("id")) p.id = j.at("id").get<std::string>();
  if (j.contains("c")) p.c = number(j.at("c"), "c");
  if (j.contains("variant")) p.variant = parse_variant(j.at("variant").get<std::string>());
  if (j.contains("lambdas")) p.lambdas = LambdaSchedule(j.at("lambdas").get<std::vector<double>>());
  if (j.contains("pair")) {
    p.pair = parse_pair(j.at("pair"), p.k);
  } else if (j.contains("C") && j.contains("D")) {
    p.pair = parse_pair(json{{"C", j.at("C")}, {"D", j.at("D")}}, p.k);
  }
  if (j.contains("analysis")) {
    const json& a = j.at("analysis");
    if (a.contains("rate")) p.analysis.rate = number(a.at("rate"), "rate");
    if (a.contains("tmax")) p.analysis.t_max = number(a.at("tmax"), "tmax");
    if (a.contains("samples")) p.analysis.samples = a.at("samples").get<std::size_t>();
  }
  if (j.contains("schedule")) p.schedule = parse_schedule(j.at("schedule"), p);
  return p;
}

}  // namespace

ProblemFile parse_problem(const json& j, const std::string& default_id) {
  try {
    return parse_problem_unchecked(j, default_id);
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
  return parse_problem(j, path.stem().string());
}

Schedule ProblemFile::dynamics() const {
  if (schedule) return *schedule;
  if (pair) return Schedule::constant(k, *pair);
  if (lambdas) return Schedule::constant(k, construct_optimal(k, *lambdas, variant).pair);
  if (c) return Schedule::constant(k, construct_optimal(k, *c, variant).pair);
  throw Error(ErrorCode::ParseError, "problem defines no schedule, pair or budget c");
}

json certificate_to_json(const OptimalCertificate& cert, const Covariance& k) {
  json j;
  j["variant"] = std::string(to_string(cert.variant));
  j["c"] = cert.c;
  j["certificate_constant"] = cert.constant;
  j["lambda_opt"] = cert.lambda_opt;
  j["isotropic"] = cert.isotropic;
  j["K"] = matrix_to_json(k.matrix());
  j["C"] = matrix_to_json(cert.pair.C);
  j["D"] = matrix_to_json(cert.pair.D);
  j["J"] = matrix_to_json(cert.tilde.J);
  j["C_tilde"] = matrix_to_json(cert.tilde.C_tilde);
  j["D_tilde"] = matrix_to_json(cert.tilde.D_tilde);
  j["J_tilde"] = matrix_to_json(cert.tilde.J_tilde);
  j["J_hat"] = matrix_to_json(cert.J_hat);
  j["v"] = vector_to_json(cert.v);
  j["Psi"] = matrix_to_json(cert.basis.Psi);
  j["lambdas"] = cert.lambdas;
  j["Q"] = matrix_to_json(cert.Q);
  j["P"] = matrix_to_json(cert.P);
  j["residuals"] = {
      {"lyapunov_certificate", lyapunov_certificate_residual(cert)},
      {"equidistribution", equidistribution_residual(cert)},
  };
  return j;
}

json report_to_json(const ValidationReport& r) {
  auto num = [](double x) -> json { return std::isfinite(x) ? json(x) : json(nullptr); };
  return {
      {"lyapunov_residual", num(r.lyapunov_residual)},
      {"lyapunov_relative", num(r.lyapunov_relative)},
      {"trace_D", num(r.trace_D)},
      {"min_eig_D", num(r.min_eig_D)},
      {"rank_D", r.rank_D},
      {"spectral_gap", num(r.spectral_gap)},
      {"controllable_dim", r.controllable_dim},
      {"psd", r.psd},
      {"trace_ok", r.trace_ok},
      {"admissible", r.admissible},
      {"positive_stable", r.positive_stable},
      {"hypoelliptic", r.hypoelliptic},
      {"steady_state_unique", r.steady_state_unique},
      {"all_passed", r.all_passed()},
  };
}

}  // namespace fpopt::io
