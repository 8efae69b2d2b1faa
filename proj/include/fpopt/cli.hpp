#pragma once

#include "fpopt/errors.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace fpopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitBadConstant = 3;
inline constexpr int kExitValidation = 4;
inline constexpr int kExitRate = 5;
inline constexpr int kExitMixedEquilibria = 6;

inline constexpr std::size_t kDefaultSamples = 4096;

int exit_code_for(ErrorCode code);

/// FPOPT_SAMPLES if set and valid, else kDefaultSamples.
std::size_t default_samples();

/// Entry point of `fpopt`; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes the CSV files and manifest.json for fig1..fig4 into `outdir`.
/// Throws Error(ParseError) for an unknown figure id.
void reproduce_figure(const std::string& figure, const std::filesystem::path& outdir,
                      std::size_t samples);

}  // namespace fpopt::cli
