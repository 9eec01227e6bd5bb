#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "molgrating/cli/config.hpp"

namespace molgrating::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
  kExitOracleMismatch = 4,
};

inline constexpr std::size_t kMaxOraclePoints = 32;
inline constexpr double kOracleTolerance = 1e-3;

struct CommandOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::string> format;
  unsigned threads = 1;
  std::vector<double> k2_list;  // oracle only
};

/// Runs one subcommand (pattern, bar, formfactor, peaks, check, oracle) and
/// maps failures onto exit codes. Data goes to the output path or `out`,
/// diagnostics to `err`.
int run_command(const std::string& command, const RunConfig& config,
                const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Loads the config file first; config errors map to kExitConfigError.
int run_command(const std::string& command, const std::filesystem::path& config_path,
                const CommandOptions& options, std::ostream& out, std::ostream& err);

/// "%.17g" formatting used for every emitted number.
std::string format_number(double value);

/// Sidecar path written next to a pattern CSV: same stem, ".json".
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace molgrating::cli
