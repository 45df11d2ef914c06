#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtsched/grouping.hpp"
#include "mtsched/io.hpp"

namespace mtsched {

enum class JobDistribution { UniformInt, Uniform, Exponential };

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t m = 2;
  std::size_t m1 = 1;
  double e0 = 1.0;
  std::uint64_t n = 10;

  // Shared intervals per machine and the range their integer breakpoints
  // are drawn from.
  std::size_t min_intervals = 0;
  std::size_t max_intervals = 3;
  std::uint64_t max_breakpoint = 20;
  std::vector<double> ratios{0.25, 0.5, 1.0};

  JobDistribution distribution = JobDistribution::UniformInt;
  double job_min = 1.0;
  double job_max = 16.0;
  double job_mean = 8.0;  // exponential only
};

struct Instance {
  MachineConfig machines;
  std::vector<Job> jobs;
};

// Deterministic for a given config. Machines among the first m1 have every
// sampled ratio raised to at least e0.
Instance generate_instance(const GeneratorConfig& config);

// Only the machine half; cheap when n is large and jobs are streamed.
MachineConfig generate_machines(const GeneratorConfig& config);

// Streams n job times to out without materializing them.
void write_jobs(const GeneratorConfig& config, std::ostream& out);

JobDistribution parse_distribution(const std::string& name);

}  // namespace mtsched
