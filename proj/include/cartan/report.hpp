#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/builtins.hpp"
#include "cartan/errors.hpp"

namespace cartan {

/// Malformed or inconsistent run configuration (exit status 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double identity = 0.0;  // 0 selects the model default
  double quad = 1e-9;
  double rank = 1e-9;
  std::int64_t denominator_bound = 1'000'000;
  double rationality = 1e-12;
};

struct RunConfig {
  /// Subcommand path, e.g. {"verify"} or {"ek", "classify"}.
  std::vector<std::string> command;
  std::string model = "extremal_kahler";
  Params params;
  std::optional<double> c1, c2, a, b;
  std::vector<double> point;
  std::string flow_section;  // "", "e1", "e2" or "e3"
  double flow_time = 5.0;
  int samples = 100;
  int grid = 50;
  std::uint64_t seed = 20240517;
  Tolerances tol;
  std::string out;            // empty writes to standard output
  std::string format;         // "json" or "text"; empty picks the command default
};

struct RunResult {
  int exit_code = 0;
  nlohmann::json report;
  std::string format = "json";
  /// Preformatted text output, when the command has one.
  std::string text;
};

extern const char* const tool_version;

/// Throws UsageError for unknown commands, missing arguments or non-positive tolerances.
void validate(const RunConfig& config);

/// Fields of a JSON config object (same names as the long flags, with
/// underscores) are copied into `config`. Throws UsageError on unknown keys.
void apply_config_json(RunConfig& config, const nlohmann::json& j);

/// Tolerance and seed overrides from CARTAN_TOL, CARTAN_QUAD_TOL,
/// CARTAN_RANK_TOL, CARTAN_DENOMINATOR_BOUND, CARTAN_RATIONALITY_TOL, CARTAN_SEED.
void apply_environment(RunConfig& config,
                       const std::function<const char*(const char*)>& getenv_fn);

/// Dispatches to the subcommand. Exit code 0 on pass verdicts, 1 on fail
/// verdicts; usage problems throw UsageError.
RunResult run(const RunConfig& config);

/// Report text in the requested format (JSON is indented, text is an aligned
/// key/value listing, except for `ek table1` which prints the table).
std::string render(const RunResult& result);

}  // namespace cartan
