#pragma once

// Command-line front end. run_cli() is the whole program; tools/eofkit.cpp only
// forwards argv, which lets the tests drive every subcommand in-process.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eofkit/io.hpp"

namespace eofkit::cli {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInputInvalid = 2,
  kConfigInvalid = 3,
  kUnknownDemo = 4,
};

struct OracleValues {
  double wootters_eof = 0.0;
  double brute_force_eof = 0.0;
  int brute_force_budget = 0;
};

struct Report {
  std::string input;
  BipartiteDims dims;
  double eof_value = 0.0;
  bool converged = false;
  std::optional<Ensemble> witness;
  double spectral_upper_bound = 0.0;
  double cnt_entropy = 0.0;
  SeparabilityVerdict separability;
  std::optional<OracleValues> oracle;
  EofConfig config;
  int resolved_cardinality = 0;
  double wall_time_seconds = 0.0;
  /// Demo-specific values.
  io::Json extra = io::Json::object();
};

struct ReportOptions {
  bool emit_witness = false;
  int oracle_budget = 2000;
};

/// Runs every estimator on rho. `precomputed` replaces the eof_estimate call.
Report make_report(const std::string& input, const DensityMatrix& rho, const EofConfig& cfg,
                   const ReportOptions& opts, const std::optional<EofResult>& precomputed = std::nullopt);

io::Json report_to_json(const Report& r);

/// Violated report invariants (finite fields, eof <= spectral bound, eof <= ln d1); empty when sound.
std::vector<std::string> report_violations(const Report& r);

inline const std::vector<std::string> kDemoNames{"singlet", "maxent-d", "werner-sweep",
                                                 "tiles",   "subadditivity", "convexity"};

struct DemoOptions {
  int d = 3;
  int grid = 10;
  EofConfig config;
  ReportOptions report;
};

/// Throws Error(ParamOutOfRange) for unknown names.
std::vector<Report> run_demo(const std::string& name, const DemoOptions& opts);

/// Empirical lower floor for the tiles-state estimate, and the overlap margin.
inline constexpr double kTilesEofFloor = 0.05;
inline constexpr double kTilesOverlapMargin = 0.01;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eofkit::cli
