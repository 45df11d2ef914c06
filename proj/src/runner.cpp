#include "mtsched/runner.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mtsched/io.hpp"
#include "mtsched/oracle.hpp"
#include "mtsched/schedule.hpp"

namespace mtsched {

Mode parse_mode(const std::string& name) {
  if (name == "one-pass") return Mode::OnePass;
  if (name == "two-pass") return Mode::TwoPass;
  if (name == "offline") return Mode::Offline;
  if (name == "oracle") return Mode::Oracle;
  throw ConfigError("unknown mode '" + name + "'");
}

Regime parse_regime(const std::string& name) {
  if (name == "pmax-given") return Regime::PmaxGiven;
  if (name == "pmax-estimate") return Regime::PmaxEstimate;
  if (name == "pmax-unknown") return Regime::PmaxUnknown;
  throw ConfigError("unknown regime '" + name + "'");
}

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::OnePass: return "one-pass";
    case Mode::TwoPass: return "two-pass";
    case Mode::Offline: return "offline";
    case Mode::Oracle: return "oracle";
  }
  return "?";
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::PmaxGiven: return "pmax-given";
    case Regime::PmaxEstimate: return "pmax-estimate";
    case Regime::PmaxUnknown: return "pmax-unknown";
  }
  return "?";
}

void validate(const RunConfig& c) {
  if (c.config_path.empty()) throw ConfigError("--config is required");
  if (!(c.epsilon > 0.0)) throw ConfigError("--epsilon must be positive");
  if (c.budget == 0) throw ConfigError("--budget must be positive");
  if (c.mode == Mode::TwoPass && c.jobs_path == "-") {
    throw ConfigError("two-pass mode needs a --jobs file; standard input cannot be replayed");
  }
  const bool streaming = c.mode == Mode::OnePass || c.mode == Mode::TwoPass;
  if (!streaming) return;
  switch (c.regime) {
    case Regime::PmaxGiven:
      if (!c.pmax || !(*c.pmax > 0.0)) throw ConfigError("pmax-given requires a positive --pmax");
      break;
    case Regime::PmaxEstimate:
      if (!c.pmax_estimate || !(*c.pmax_estimate > 0.0)) {
        throw ConfigError("pmax-estimate requires a positive --pmax-estimate");
      }
      if (!c.alpha || !(*c.alpha >= 1.0)) throw ConfigError("pmax-estimate requires --alpha >= 1");
      break;
    case Regime::PmaxUnknown:
      break;
  }
}

std::unique_ptr<GroupLedger> make_ledger(const RunConfig& c, const SchedulingParams& params) {
  switch (c.regime) {
    case Regime::PmaxGiven:
      return std::make_unique<KnownPmaxLedger>(params, c.pmax.value());
    case Regime::PmaxEstimate:
      return std::make_unique<EstimatedPmaxLedger>(params, c.pmax_estimate.value(),
                                                   c.alpha.value());
    case Regime::PmaxUnknown:
      return std::make_unique<UnknownPmaxLedger>(params);
  }
  throw ConfigError("unknown regime");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class JobSource {
 public:
  JobSource(const std::string& path, std::istream& fallback) {
    if (path == "-") {
      in_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw std::ios_base::failure("cannot open job stream " + path);
      in_ = &file_;
    }
  }
  std::istream& stream() { return *in_; }

 private:
  std::ifstream file_;
  std::istream* in_ = nullptr;
};

void save_schedule(const std::string& path, const Schedule& schedule) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write schedule to " + path);
  write_schedule_csv(out, schedule);
  if (!out) throw std::ios_base::failure("failed writing schedule to " + path);
}

MachinePark load_park(const std::string& path) {
  const MachineConfig cfg = load_machine_config(path);
  try {
    return cfg.to_park();
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
}

void fill_search(RunReport& r, const LargeJobSet& large, const SearchOutcome& outcome) {
  r.value = outcome.value;
  r.t = outcome.t;
  r.grid_exponent = outcome.grid_exponent;
  r.k_l = large.k_l;
  r.q0 = large.q0;
  r.large_jobs = large.jobs.size();
  r.total_load = large.total_load;
  r.jobs = large.job_count;
  r.assignments = outcome.assignments;
  r.infeasible_assignments = outcome.infeasible;
}

}  // namespace

RunReport run(const RunConfig& c, std::istream& in) {
  const auto start = Clock::now();
  validate(c);
  const MachinePark park = load_park(c.config_path);
  const SchedulingParams params = with_overrides(
      derive_params(park.size(), park.m1(), park.e0(), c.epsilon), c.gamma0_override,
      c.n0_override);
  if (c.epsilon >= 1.0) {
    std::cerr << "warning: epsilon >= 1 is outside the usual (0, 1) range\n";
  }
  if (params.overridden) {
    std::cerr << "warning: override mode, the (1+eps) guarantee is not claimed\n";
  }

  const SearchOptions options{c.budget, c.threads};
  RunReport r;
  r.mode = c.mode;
  r.regime = c.regime;
  r.params = params;
#ifdef _OPENMP
  r.threads = c.threads > 0 ? c.threads : omp_get_max_threads();
#endif

  if (c.mode == Mode::Oracle || c.mode == Mode::Offline) {
    JobSource source(c.jobs_path, in);
    const auto read_start = Clock::now();
    const std::vector<Job> jobs = read_all_jobs(source.stream());
    const double read_s = seconds_since(read_start);
    r.jobs = jobs.size();
    r.mean_ingest_ns = jobs.empty() ? 0.0 : read_s * 1e9 / static_cast<double>(jobs.size());
    for (const Job& j : jobs) r.total_load += j.p;

    if (c.mode == Mode::Oracle) {
      const auto best = oracle::exact_optimum(park, jobs, c.budget);
      r.optimal_makespan = best.optimal_makespan;
      r.value = best.optimal_makespan;
    } else {
      const auto result = offline_schedule(park, params, jobs, options);
      fill_search(r, result.large, result.outcome);
      r.makespan = result.schedule.makespan;
      r.peak_retained = result.large.jobs.size();
      save_schedule(c.schedule_out, result.schedule);
    }
    r.wall_seconds = seconds_since(start);
    return r;
  }

  auto ledger = make_ledger(c, params);
  {
    JobSource source(c.jobs_path, in);
    JobReader reader(source.stream());
    const auto ingest_start = Clock::now();
    while (auto p = reader.next()) ledger->ingest({reader.position() - 1, *p});
    const double ingest_s = seconds_since(ingest_start);
    if (ledger->job_count() > 0) {
      r.mean_ingest_ns = ingest_s * 1e9 / static_cast<double>(ledger->job_count());
    }
  }
  FirstPassArtifacts first;
  first.large = ledger->finalize();
  first.outcome = enumerate_and_select(park, first.large, params, options);
  fill_search(r, first.large, first.outcome);
  r.peak_retained = ledger->peak_retained();
  r.peak_group_records = ledger->peak_group_records();

  if (c.mode == Mode::TwoPass) {
    JobSource source(c.jobs_path, in);
    JobReader reader(source.stream());
    SecondPass pass(park, first);
    while (auto p = reader.next()) pass.feed(*p);
    const Schedule schedule = pass.finish();
    r.makespan = schedule.makespan;
    save_schedule(c.schedule_out, schedule);
  }
  r.wall_seconds = seconds_since(start);
  return r;
}

void write_report(std::ostream& out, const RunReport& r, const ReportOptions& options) {
  out << "mode=" << to_string(r.mode) << '\n';
  if (r.mode == Mode::OnePass || r.mode == Mode::TwoPass) {
    out << "regime=" << to_string(r.regime) << '\n';
  }
  out << "epsilon=" << format_double(r.params.epsilon) << '\n'
      << "gamma0=" << r.params.gamma0 << '\n'
      << "n0=" << r.params.n0 << '\n'
      << "override_mode=" << (r.params.overridden ? "true" : "false") << '\n'
      << "n=" << r.jobs << '\n'
      << "P=" << format_double(r.total_load) << '\n';
  if (r.mode == Mode::Oracle) {
    out << "optimal_makespan=" << format_double(r.optimal_makespan.value_or(0.0)) << '\n';
  } else {
    out << "V=" << format_double(r.value) << '\n'
        << "t=" << format_double(r.t) << '\n'
        << "x=" << r.grid_exponent << '\n'
        << "k_L=" << r.k_l << '\n'
        << "q0=" << r.q0 << '\n'
        << "JS=" << r.large_jobs << '\n'
        << "assignments=" << r.assignments << '\n'
        << "peak_retained=" << r.peak_retained << '\n'
        << "peak_group_records=" << r.peak_group_records << '\n';
    if (r.makespan) out << "makespan=" << format_double(*r.makespan) << '\n';
    if (options.extended) {
      out << "infeasible_assignments=" << r.infeasible_assignments << '\n'
          << "threads=" << r.threads << '\n';
    }
  }
  if (options.timing) {
    out << "wall_seconds=" << format_double(r.wall_seconds) << '\n'
        << "mean_ingest_ns=" << format_double(r.mean_ingest_ns) << '\n';
  }
}

int exit_code_for_current_exception(std::string& message) {
  try {
    throw;
  } catch (const ParseError& e) {
    message = e.what();
    return exit_code::machine_config;
  } catch (const JobStreamError& e) {
    message = e.what();
    return exit_code::job_stream;
  } catch (const DomainError& e) {
    message = e.what();
    return exit_code::job_stream;
  } catch (const ContractError& e) {
    message = e.what();
    return exit_code::pmax_contract;
  } catch (const EstimateViolation& e) {
    message = e.what();
    return exit_code::estimate_violation;
  } catch (const BudgetExceeded& e) {
    message = e.what();
    return exit_code::budget;
  } catch (const TwoPassMismatch& e) {
    message = e.what();
    return exit_code::two_pass_mismatch;
  } catch (const ConfigError& e) {
    message = e.what();
    return exit_code::usage;
  } catch (const std::ios_base::failure& e) {
    message = e.what();
    return exit_code::io;
  } catch (const std::exception& e) {
    message = e.what();
    return exit_code::internal;
  }
}

}  // namespace mtsched
