#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtsched/capacity.hpp"
#include "mtsched/grouping.hpp"
#include "mtsched/search.hpp"

namespace mtsched {

struct Placement {
  JobId id = 0;
  double p = 0.0;
  std::uint32_t machine = 0;   // 0-based
  std::uint32_t position = 0;  // sequence slot on the machine
  double start = 0.0;
  double completion = 0.0;
};

struct Schedule {
  std::vector<Placement> placements;  // ascending id
  double makespan = 0.0;
};

// Jobs run back-to-back from time zero on every machine.
Schedule build_schedule(const MachinePark& park,
                        const std::vector<std::vector<Job>>& sequences);

struct ValidationResult {
  bool ok = true;
  std::string message;

  explicit operator bool() const { return ok; }
};

// Recomputes every start and completion time from the machine sequences and
// checks them against the schedule. When expected is non-empty, also checks
// that exactly those jobs were scheduled.
ValidationResult validate_schedule(const MachinePark& park, const Schedule& schedule,
                                   std::span<const Job> expected = {});

// Number of jobs per machine that complete strictly after t, with a relative
// slack for inversion round-off.
std::vector<std::size_t> crossing_counts(const Schedule& schedule, std::size_t m, double t,
                                         double rel_slack = 1e-9);

// Online small-job placement shared by the two-pass streaming path. Each job
// goes to the lowest-index machine whose committed load is still below
// A_i(t); the job that pushes a machine past A_i(t) is that machine's
// crossing job. Crossing jobs landing beyond the first m1 machines move right
// away to the first-m1 machine with the fewest crossing jobs.
class SmallJobPlacer {
 public:
  SmallJobPlacer(const MachinePark& park, const SearchOutcome& outcome,
                 std::span<const Job> large_jobs);

  void place(const Job& job);
  Schedule finish() const;

  std::span<const std::size_t> crossing() const { return crossing_; }

 private:
  std::size_t least_crossed() const;

  const MachinePark* park_;
  std::vector<double> threshold_;
  std::vector<double> committed_;
  std::vector<std::size_t> crossing_;
  std::vector<std::vector<Job>> sequences_;
  std::size_t cursor_ = 0;
};

// Batch form: greedy phase over all small jobs, then crossing jobs on machines
// beyond m1 are redistributed over the first m1 machines.
Schedule place_small_jobs(const MachinePark& park, const SearchOutcome& outcome,
                          std::span<const Job> large_jobs, std::span<const Job> small_jobs);

struct OfflineResult {
  Schedule schedule;
  LargeJobSet large;
  SearchOutcome outcome;
  double value = 0.0;
};

// All jobs in memory: grouping with the exact p_max, search, then placement.
OfflineResult offline_schedule(const MachinePark& park, const SchedulingParams& params,
                               std::span<const Job> jobs, const SearchOptions& options = {});

// What the first pass hands to the second.
struct FirstPassArtifacts {
  LargeJobSet large;
  SearchOutcome outcome;
};

// Replays the stream; large jobs are already placed, small ones go through a
// SmallJobPlacer. Detects streams that differ from the first pass.
class SecondPass {
 public:
  SecondPass(const MachinePark& park, const FirstPassArtifacts& first);

  // Jobs must arrive in stream order; the id is the stream position.
  void feed(double p);
  Schedule finish() const;

  std::span<const std::size_t> crossing() const { return placer_.crossing(); }

 private:
  const FirstPassArtifacts* first_;
  std::unordered_map<JobId, double> large_;
  SmallJobPlacer placer_;
  std::uint64_t position_ = 0;
};

Schedule second_pass(const MachinePark& park, const FirstPassArtifacts& first,
                     std::span<const double> stream);

}  // namespace mtsched
