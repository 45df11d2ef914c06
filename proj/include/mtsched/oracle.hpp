#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtsched/capacity.hpp"
#include "mtsched/grouping.hpp"
#include "mtsched/search.hpp"

// Brute-force references used by the test suites. Nothing here is on the
// production path.
namespace mtsched::oracle {

struct OracleResult {
  double optimal_makespan = 0.0;
  std::vector<std::uint32_t> witness;  // job index -> machine (0-based)
};

// Tries every job->machine map. Per machine the finishing time is the
// completion of its total load from time zero, so job order is irrelevant.
OracleResult exact_optimum(const MachinePark& park, std::span<const Job> jobs,
                           std::uint64_t budget = 50'000'000);

// Makespan of a given map, evaluated the same way exact_optimum does.
double evaluate_map(const MachinePark& park, std::span<const Job> jobs,
                    std::span<const std::uint32_t> map);

// Capacity by walking the segments from time zero.
double naive_capacity_at(const MachineTimeline& timeline, double t);

// Linear scan over every grid exponent with naive capacities.
std::optional<GridPoint> grid_scan_t(const MachinePark& park, std::span<const double> large_loads,
                                     double total_load, double epsilon);

// Groups the whole job list by definition, with no incremental state.
LargeJobSet replay_grouping(std::span<const Job> jobs, const SchedulingParams& params,
                            double p_max);

}  // namespace mtsched::oracle
