#include "fpopt/cli.hpp"

#include "fpopt/problem_file.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace fpopt::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidMatrix:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotSymmetric:
    case ErrorCode::NotPSD:
    case ErrorCode::TraceBudgetExceeded:
    case ErrorCode::InvalidInterval:
    case ErrorCode::DegenerateSchedule:
      return kExitParse;
    case ErrorCode::InvalidConstant: return kExitBadConstant;
    case ErrorCode::NotAdmissible: return kExitValidation;
    case ErrorCode::RateTooLarge: return kExitRate;
    case ErrorCode::MixedEquilibria: return kExitMixedEquilibria;
    default: return kExitFailure;
  }
}

std::size_t default_samples() {
  if (const char* env = std::getenv("FPOPT_SAMPLES")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && n >= 2) return static_cast<std::size_t>(n);
  }
  return kDefaultSamples;
}

namespace {

// Writes to --out when given, else to the command's stdout stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct OptimizeArgs {
  std::string input;
  std::optional<double> c;
  std::string variant;
  std::string out;
};

int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(a.input);
  const Variant variant = a.variant.empty() ? problem.variant : parse_variant(a.variant);
  OptimalCertificate cert;
  if (a.c) {
    cert = construct_optimal(problem.k, *a.c, variant);
  } else if (problem.lambdas) {
    cert = construct_optimal(problem.k, *problem.lambdas, variant);
  } else if (problem.c) {
    cert = construct_optimal(problem.k, *problem.c, variant);
  } else {
    throw Error(ErrorCode::ParseError, "optimize needs a budget c (file field or --c)");
  }
  Sink sink(a.out, out);
  sink.stream() << io::certificate_to_json(cert, problem.k).dump(2) << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& input, std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(input);
  if (!problem.pair) throw Error(ErrorCode::ParseError, "validate needs an explicit pair");
  const ValidationReport report = validate_pair(problem.k, *problem.pair);
  out << io::report_to_json(report).dump(2) << '\n';
  return report.all_passed() ? kExitOk : kExitValidation;
}

struct CurveArgs {
  std::string input;
  std::optional<double> rate;
  std::optional<double> t_max;
  std::optional<std::size_t> samples;
  std::string out;
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
  const io::ProblemFile problem = io::load_problem(a.input);
  const Schedule schedule = problem.dynamics();
  const double rate = a.rate.value_or(problem.analysis.rate.value_or(schedule.asymptotic_rate()));
  const double t_max = a.t_max.value_or(problem.analysis.t_max.value_or(default_horizon(schedule, rate)));
  const std::size_t samples = a.samples.value_or(problem.analysis.samples.value_or(default_samples()));
  const NormCurve curve = norm_curve(schedule, t_max, samples, rate);
  Sink sink(a.out, out);
  write_norm_curve_csv(sink.stream(), curve);
  return kExitOk;
}

struct CompareArgs {
  std::vector<std::string> inputs;
  std::optional<double> rate;
  std::string out;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
  std::vector<NamedSchedule> schedules;
  for (const auto& path : a.inputs) {
    const io::ProblemFile problem = io::load_problem(path);
    schedules.push_back({problem.id, problem.dynamics()});
  }
  const double rate = a.rate.value_or(schedules.front().schedule.asymptotic_rate());
  const auto rows = compare_schedules(schedules, rate);
  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  os << "id\tsharp_constant\tmax_frobenius_C\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "\t%.17g\t%.17g\n", row.sharp_constant, row.max_frobenius);
    os << row.id << buf;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fastest-decay Fokker-Planck coefficients for a Gaussian equilibrium", "fpopt"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Construct the optimal pair and its certificate");
  optimize->add_option("input", opt.input, "Problem file (JSON)")->required();
  optimize->add_option("--c", opt.c, "Envelope budget c > 1 (overrides the file)");
  optimize->add_option("--variant", opt.variant, "standard or transpose");
  optimize->add_option("--out", opt.out, "Output file (default: stdout)");

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Check admissibility, stability and hypoellipticity");
  validate->add_option("input", validate_input, "Problem file with an explicit pair")->required();

  CurveArgs crv;
  auto* curve = app.add_subcommand("curve", "Sample the propagator norm and its sharp envelope");
  curve->add_option("input", crv.input, "Problem file (JSON)")->required();
  curve->add_option("--rate", crv.rate, "Envelope rate (default: asymptotic spectral gap)");
  curve->add_option("--tmax", crv.t_max, "Final time");
  curve->add_option("--samples", crv.samples, "Grid size (default: $FPOPT_SAMPLES or 4096)");
  curve->add_option("--out", crv.out, "CSV output file (default: stdout)");

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Rank schedules by sharp envelope constant");
  compare->add_option("inputs", cmp.inputs, "Problem files sharing one K")->required();
  compare->add_option("--rate", cmp.rate, "Envelope rate (default: first schedule's asymptotic gap)");
  compare->add_option("--out", cmp.out, "TSV output file (default: stdout)");

  std::string figure;
  std::string outdir = ".";
  std::optional<std::size_t> reproduce_samples;
  auto* reproduce = app.add_subcommand("reproduce", "Write curve data for fig1..fig4");
  reproduce->add_option("figure", figure, "fig1, fig2, fig3 or fig4")->required();
  reproduce->add_option("--outdir", outdir, "Output directory");
  reproduce->add_option("--samples", reproduce_samples, "Grid size per curve");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*optimize) return cmd_optimize(opt, out);
    if (*validate) return cmd_validate(validate_input, out);
    if (*curve) return cmd_curve(crv, out);
    if (*compare) return cmd_compare(cmp, out);
    if (*reproduce) {
      reproduce_figure(figure, outdir, reproduce_samples.value_or(default_samples()));
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "fpopt: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "fpopt: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitParse;
}

}  // namespace fpopt::cli
