// mtsched: streaming makespan approximation for machines with shared
// processing intervals.
//
//   mtsched run --config park.json --jobs jobs.txt --mode one-pass --regime pmax-unknown
//   mtsched generate --seed 7 --m 3 --m1 1 --n 1000 --config-out park.json --jobs-out jobs.txt

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mtsched/generator.hpp"
#include "mtsched/io.hpp"
#include "mtsched/runner.hpp"

namespace {

struct GenerateArgs {
  mtsched::GeneratorConfig config;
  std::string distribution = "uniform-int";
  std::string config_out;
  std::string jobs_out;
};

int generate(const GenerateArgs& args) {
  auto cfg = args.config;
  cfg.distribution = mtsched::parse_distribution(args.distribution);
  const auto machines = mtsched::generate_machines(cfg);

  std::ofstream park(args.config_out);
  if (!park) throw std::ios_base::failure("cannot write " + args.config_out);
  park << mtsched::to_json(machines);

  if (args.jobs_out.empty() || args.jobs_out == "-") {
    mtsched::write_jobs(cfg, std::cout);
  } else {
    std::ofstream jobs(args.jobs_out);
    if (!jobs) throw std::ios_base::failure("cannot write " + args.jobs_out);
    mtsched::write_jobs(cfg, jobs);
  }
  return mtsched::exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming (1+eps)-approximate makespan for machines with shared intervals"};
  app.require_subcommand(1);

  mtsched::RunConfig run;
  std::string mode = "one-pass";
  std::string regime = "pmax-unknown";
  std::optional<int> gamma0;
  std::optional<std::uint64_t> n0;

  auto* run_cmd = app.add_subcommand("run", "Approximate the makespan of a job stream");
  run_cmd->add_option("--config", run.config_path, "Machine configuration (JSON)")->required();
  run_cmd->add_option("--jobs", run.jobs_path, "Job stream file, '-' for stdin");
  run_cmd->add_option("--mode", mode, "one-pass | two-pass | offline | oracle");
  run_cmd->add_option("--regime", regime, "pmax-given | pmax-estimate | pmax-unknown");
  run_cmd->add_option("--epsilon", run.epsilon, "Approximation parameter");
  run_cmd->add_option("--pmax", run.pmax, "Largest processing time (pmax-given)");
  run_cmd->add_option("--pmax-estimate", run.pmax_estimate, "Estimate of p_max (pmax-estimate)");
  run_cmd->add_option("--alpha", run.alpha, "Estimate quality, p_max^E <= alpha * p_max");
  run_cmd->add_option("--gamma0-override", gamma0, "Replace gamma0 (drops the guarantee)");
  run_cmd->add_option("--n0-override", n0, "Replace N0 (drops the guarantee)");
  run_cmd->add_option("--budget", run.budget, "Maximum number of large-job assignments");
  run_cmd->add_option("--threads", run.threads, "Search threads, 0 for the OpenMP default");
  run_cmd->add_option("--schedule-out", run.schedule_out, "Schedule CSV (two-pass, offline)");
  run_cmd->add_flag("--stats", run.stats, "Also report search internals");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a seeded random instance");
  gen_cmd->add_option("--seed", gen.config.seed, "RNG seed");
  gen_cmd->add_option("--m", gen.config.m, "Machines");
  gen_cmd->add_option("--m1", gen.config.m1, "Machines whose ratios stay >= e0");
  gen_cmd->add_option("--e0", gen.config.e0, "Ratio lower bound");
  gen_cmd->add_option("--n", gen.config.n, "Jobs");
  gen_cmd->add_option("--min-intervals", gen.config.min_intervals, "Shared intervals per machine, min");
  gen_cmd->add_option("--max-intervals", gen.config.max_intervals, "Shared intervals per machine, max");
  gen_cmd->add_option("--max-breakpoint", gen.config.max_breakpoint, "Largest integer breakpoint");
  gen_cmd->add_option("--ratios", gen.config.ratios, "Sharing ratio set")->delimiter(',');
  gen_cmd->add_option("--distribution", gen.distribution, "uniform-int | uniform | exponential");
  gen_cmd->add_option("--job-min", gen.config.job_min, "Smallest job time");
  gen_cmd->add_option("--job-max", gen.config.job_max, "Largest job time");
  gen_cmd->add_option("--job-mean", gen.config.job_mean, "Mean job time (exponential)");
  gen_cmd->add_option("--config-out", gen.config_out, "Machine configuration output")->required();
  gen_cmd->add_option("--jobs-out", gen.jobs_out, "Job stream output, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mtsched::exit_code::usage;
  }

  try {
    if (*gen_cmd) return generate(gen);

    run.mode = mtsched::parse_mode(mode);
    run.regime = mtsched::parse_regime(regime);
    run.gamma0_override = gamma0;
    run.n0_override = n0;
    const auto report = mtsched::run(run, std::cin);
    mtsched::write_report(std::cout, report, {.timing = true, .extended = run.stats});
    return mtsched::exit_code::ok;
  } catch (...) {
    std::string message;
    const int rc = mtsched::exit_code_for_current_exception(message);
    std::cerr << "error: " << message << '\n';
    return rc;
  }
}
