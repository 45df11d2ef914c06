#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mtsched/capacity.hpp"
#include "mtsched/grouping.hpp"

namespace mtsched {

// Large jobs mapped to machines (0-based) plus the resulting per-machine load.
struct LargeAssignment {
  std::vector<std::uint32_t> mapping;
  std::vector<double> per_machine_load;
  std::uint64_t ordinal = 0;
};

// Sums loads in job order, so recomputation is bit-identical.
std::vector<double> machine_loads(std::span<const std::uint32_t> mapping,
                                  std::span<const Job> jobs, std::size_t m);

// Mixed-radix decode; job 0 is the fastest-varying digit.
LargeAssignment assignment_from_ordinal(std::uint64_t ordinal, std::span<const Job> jobs,
                                        std::size_t m);

// m^count, or nullopt when it overflows 64 bits.
std::optional<std::uint64_t> assignment_count(std::size_t m, std::size_t count);

// Candidate makespans LB * (1 + eps/2)^x for x = 0..x_max, where the top point
// reaches UB = P / e0.
struct TimeGrid {
  double lower = 0.0;
  double base = 1.0;
  int x_max = 0;

  double at(int x) const;
};

TimeGrid make_grid(const MachinePark& park, double total_load, double epsilon);

// A(t) >= P and A_i(t) >= P^L_i for every machine.
bool feasible(const MachinePark& park, std::span<const double> large_loads, double total_load,
              double t);

struct GridPoint {
  int x = 0;
  double t = 0.0;
};

// Smallest feasible grid point by binary search over x; nullopt if the top of
// the grid is infeasible.
std::optional<GridPoint> smallest_grid_t(const MachinePark& park,
                                         std::span<const double> large_loads, double total_load,
                                         const TimeGrid& grid);
std::optional<GridPoint> smallest_grid_t(const MachinePark& park,
                                         const LargeAssignment& assignment, double total_load,
                                         double epsilon);

// ceil((m-1)/m1) * (1/e0) * band_top
double additive_term(const SchedulingParams& params, double band_top);

struct SearchOutcome {
  LargeAssignment best;
  double t = 0.0;
  int grid_exponent = 0;
  double value = 0.0;
  std::uint64_t assignments = 0;
  std::uint64_t infeasible = 0;
};

struct SearchOptions {
  std::uint64_t budget = 10'000'000;
  // 0 leaves the OpenMP default in place.
  int threads = 0;
};

// Evaluates every assignment of the large jobs in parallel and keeps the one
// with the smallest grid time; ties go to the smallest ordinal, so the result
// does not depend on the thread count.
SearchOutcome enumerate_and_select(const MachinePark& park, const LargeJobSet& large,
                                   const SchedulingParams& params,
                                   const SearchOptions& options = {});

// Single-threaded reference walking assignments with an odometer.
SearchOutcome enumerate_and_select_serial(const MachinePark& park, const LargeJobSet& large,
                                          const SchedulingParams& params,
                                          const SearchOptions& options = {});

}  // namespace mtsched
