#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "mtsched/grouping.hpp"
#include "mtsched/search.hpp"

namespace mtsched {

enum class Mode { OnePass, TwoPass, Offline, Oracle };
enum class Regime { PmaxGiven, PmaxEstimate, PmaxUnknown };

Mode parse_mode(const std::string& name);
Regime parse_regime(const std::string& name);
const char* to_string(Mode mode);
const char* to_string(Regime regime);

struct RunConfig {
  Mode mode = Mode::OnePass;
  Regime regime = Regime::PmaxUnknown;
  double epsilon = 0.5;
  std::optional<double> pmax;
  std::optional<double> pmax_estimate;
  std::optional<double> alpha;
  std::optional<int> gamma0_override;
  std::optional<std::uint64_t> n0_override;
  std::uint64_t budget = 10'000'000;
  int threads = 0;
  std::string config_path;
  std::string jobs_path = "-";  // "-" reads standard input
  std::string schedule_out;     // empty: no schedule file
  bool stats = false;
};

// Throws ConfigError for invalid mode/regime combinations.
void validate(const RunConfig& config);

std::unique_ptr<GroupLedger> make_ledger(const RunConfig& config, const SchedulingParams& params);

struct RunReport {
  Mode mode = Mode::OnePass;
  Regime regime = Regime::PmaxUnknown;
  SchedulingParams params;
  double value = 0.0;
  double t = 0.0;
  int grid_exponent = 0;
  int k_l = -1;
  int q0 = 0;
  std::size_t large_jobs = 0;
  double total_load = 0.0;
  std::uint64_t jobs = 0;
  std::size_t peak_retained = 0;
  std::size_t peak_group_records = 0;
  std::uint64_t assignments = 0;
  std::uint64_t infeasible_assignments = 0;
  int threads = 1;
  std::optional<double> makespan;
  std::optional<double> optimal_makespan;
  double wall_seconds = 0.0;
  double mean_ingest_ns = 0.0;
};

// Runs the configured pipeline; writes the schedule file for two-pass and
// offline modes when schedule_out is set. `in` backs jobs_path == "-".
RunReport run(const RunConfig& config, std::istream& in);

struct ReportOptions {
  bool timing = true;
  bool extended = false;  // search internals, from --stats
};

// key=value lines in a fixed order. Without timing the output is a pure
// function of the inputs.
void write_report(std::ostream& out, const RunReport& report, const ReportOptions& options = {});

// Process exit code for the exception currently being handled.
int exit_code_for_current_exception(std::string& message);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int internal = 1;
inline constexpr int usage = 2;
inline constexpr int machine_config = 3;
inline constexpr int job_stream = 4;
inline constexpr int pmax_contract = 5;
inline constexpr int estimate_violation = 6;
inline constexpr int budget = 7;
inline constexpr int two_pass_mismatch = 8;
inline constexpr int io = 9;
}  // namespace exit_code

}  // namespace mtsched
