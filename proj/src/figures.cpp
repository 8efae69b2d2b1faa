#include "fpopt/cli.hpp"

#include "fpopt/optimal_construction.hpp"
#include "fpopt/problem_file.hpp"
#include "fpopt/reference_problems.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>

namespace fpopt::cli {

namespace {

using io::json;
namespace ref = reference;

#ifndef FPOPT_VERSION
#define FPOPT_VERSION "dev"
#endif

class FigureWriter {
 public:
  FigureWriter(std::string figure, std::filesystem::path outdir, std::size_t samples)
      : figure_(std::move(figure)), outdir_(std::move(outdir)), samples_(samples) {
    std::filesystem::create_directories(outdir_);
    manifest_["figure"] = figure_;
    manifest_["version"] = FPOPT_VERSION;
    manifest_["curves"] = json::array();
  }

  json& manifest() { return manifest_; }

  void norm(const std::string& name, const std::string& label, const Schedule& schedule,
            double rate, double t_max, json params) {
    const NormCurve curve = norm_curve(schedule, t_max, samples_, rate);
    const std::string file = figure_ + "_" + name + ".csv";
    std::ofstream os(outdir_ / file, std::ios::binary | std::ios::trunc);
    write_norm_curve_csv(os, curve);
    params["rate"] = rate;
    params["sharp_constant"] = curve.sharp_constant;
    add(file, "norm", label, std::move(params));
  }

  void envelope(const std::string& name, const std::string& label, double constant, double rate,
                double t_max, json params) {
    const std::string file = figure_ + "_" + name + ".csv";
    std::ofstream os(outdir_ / file, std::ios::binary | std::ios::trunc);
    os << "t,value\n";
    char buf[64];
    for (std::size_t j = 0; j < samples_; ++j) {
      const double t = t_max * static_cast<double>(j) / static_cast<double>(samples_ - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, constant * std::exp(-rate * t));
      os << buf;
    }
    params["rate"] = rate;
    params["constant"] = constant;
    add(file, "envelope", label, std::move(params));
  }

  void finish() {
    std::ofstream os(outdir_ / "manifest.json", std::ios::binary | std::ios::trunc);
    os << manifest_.dump(2) << '\n';
  }

 private:
  void add(const std::string& file, const char* kind, const std::string& label, json params) {
    manifest_["curves"].push_back(
        {{"file", file}, {"kind", kind}, {"label", label}, {"params", std::move(params)}});
  }

  std::string figure_;
  std::filesystem::path outdir_;
  std::size_t samples_;
  json manifest_;
};

// Optimal constant-coefficient pairs for c = 3, 2, 1.5 and the c -> 1 limit.
void figure1(FigureWriter& w) {
  const Covariance k = ref::anisotropic_covariance();
  constexpr double kTMax = 5.0;
  for (double c : {3.0, 2.0, 1.5}) {
    const OptimalCertificate cert = construct_optimal(k, c);
    char value[16];
    std::snprintf(value, sizeof value, "%g", c);
    const std::string tag = std::string("c") + value;
    const json params = {{"c", c}, {"mu", ref::mu_for_constant(c)}, {"epsilon", ref::kEpsilon}};
    w.norm("norm_" + tag, std::string("propagator norm, c=") + value,
           Schedule::constant(k, cert.pair), cert.lambda_opt, kTMax, params);
    w.envelope("envelope_" + tag, std::string("c exp(-t), c=") + value, c,
               cert.lambda_opt, kTMax, params);
  }
  w.envelope("limit", "high-rotational limit exp(-t)", 1.0, k.lambda_opt(), kTMax,
             {{"c", 1.0}, {"epsilon", ref::kEpsilon}});
}

// c = sqrt(2): new weights vs. d + k weights, both symmetric evolutions; full
// range and a zoom near t = 0.
void figure2(FigureWriter& w) {
  const Covariance k = ref::anisotropic_covariance();
  const double c = std::sqrt(2.0);
  const OptimalCertificate as = construct_optimal(k, c);
  const OptimalCertificate gm = construct_optimal(k, gm_schedule(2));
  const CoefficientPair sym = symmetric_pair(k);
  const InitialDecayOptimum fast = max_initial_decay(k);

  struct Curve {
    const char* name;
    const char* label;
    CoefficientPair pair;
    double rate;
  };
  const Curve curves[] = {
      {"optimal", "optimal pair, lambda_k = (d-1)/(c^2-1)+k-1", as.pair, k.lambda_opt()},
      {"gm", "optimal pair, lambda_k = d+k", gm.pair, k.lambda_opt()},
      {"symmetric", "symmetric pair (K^-1, I)", sym, spectral_gap(sym)},
      {"max_initial_decay", "symmetric pair with maximal initial decay", fast.pair, fast.rate},
  };
  for (const auto& [t_max, prefix] : {std::pair{5.0, "norm_"}, std::pair{0.5, "zoom_"}}) {
    for (const auto& curve : curves) {
      w.norm(prefix + std::string(curve.name), curve.label, Schedule::constant(k, curve.pair),
             curve.rate, t_max, {{"c", c}, {"frobenius_C", curve.pair.C.norm()}, {"t_max", t_max}});
    }
  }
  w.envelope("envelope", "sqrt(2) exp(-t)", c, k.lambda_opt(), 5.0, {{"c", c}});
}

// Five initial phases on [0, 0.1), then the mu = 7 pair.
void figure3(FigureWriter& w) {
  constexpr double kT0 = 0.1;
  constexpr double kTMax = 3.0;
  for (int which = 1; which <= 5; ++which) {
    const std::string id = ref::split_case_id(which);
    w.norm(id, id + " initial phase on [0, 0.1)", ref::split_case_schedule(which, kT0), 1.0, kTMax,
           {{"t0", kT0}, {"initial_frobenius_C", ref::split_case_pair(which).C.norm()}});
  }
  w.envelope("envelope_FP1", "sqrt(4/3) exp(-t)", ref::constant_for_mu(7.0), 1.0, kTMax,
             {{"c", ref::constant_for_mu(7.0)}});
}

// Faster rotation on an initial layer ending at a tangency point.
void figure4(FigureWriter& w) {
  constexpr double kTMax = 2.0;
  const Covariance k = ref::anisotropic_covariance();
  const double t5 = tangency_time(k, ref::split_case_pair(5), 1.0);
  const double t6_tangency = tangency_time(k, ref::split_case_pair(6), 1.0);
  const double t6 = ref::kFp6Switch;

  const Schedule fp1 = Schedule::constant(k, ref::split_case_pair(1));
  const Schedule fp5 = ref::split_case_schedule(5, t5);
  const Schedule fp6 = ref::split_case_schedule(6, t6);
  const std::pair<const char*, const Schedule*> cases[] = {{"FP1", &fp1}, {"FP5", &fp5}, {"FP6", &fp6}};
  for (const auto& [id, schedule] : cases) {
    const double breakpoint = schedule->last_breakpoint();
    w.norm(id, std::string(id) + (breakpoint > 0.0 ? " split schedule" : " constant coefficients"), *schedule, 1.0, kTMax, {{"t0", breakpoint}});
    const double c = sharp_constant(*schedule, 1.0);
    w.envelope(std::string("envelope_") + id, std::string(id) + " sharp envelope", c, 1.0, kTMax,
               {{"t0", breakpoint}});
  }
  w.manifest()["breakpoints"] = {{"FP5", t5}, {"FP6", t6}, {"FP6_tangency", t6_tangency}};
}

}  // namespace

void reproduce_figure(const std::string& figure, const std::filesystem::path& outdir,
                      std::size_t samples) {
  const std::map<std::string, std::function<void(FigureWriter&)>> figures = {
      {"fig1", figure1}, {"fig2", figure2}, {"fig3", figure3}, {"fig4", figure4}};
  const auto it = figures.find(figure);
  if (it == figures.end()) throw Error(ErrorCode::ParseError, "unknown figure '" + figure + "'");
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  FigureWriter writer(figure, outdir, samples);
  it->second(writer);
  writer.finish();
}

}  // namespace fpopt::cli
