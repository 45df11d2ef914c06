#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mtsched/errors.hpp"

namespace mtsched {

// One shared interval (t_{k-1}, end] with the fraction of capacity left for
// primary jobs during that interval.
struct Segment {
  double end;
  double ratio;
};

// Processing capacity of a single machine over time. Ratio e_k applies on
// (t_{k-1}, t_k] with t_0 = 0; past the last breakpoint the machine runs at
// full capacity.
class MachineTimeline {
 public:
  MachineTimeline() = default;
  explicit MachineTimeline(std::vector<Segment> segments);

  std::size_t interval_count() const { return breakpoints_.size(); }
  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> ratios() const { return ratios_; }
  // cumulative()[k] = A(breakpoints()[k]).
  std::span<const double> cumulative() const { return cumulative_; }

  // A(t): amount of primary processing the machine completes in (0, t].
  double capacity_at(double t) const;

  // Smallest t >= start with A(t) - A(start) >= amount.
  double completion_time(double start, double amount) const;

  // Lowest sharing ratio over every interval, including the unit tail.
  double min_ratio() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> ratios_;
  std::vector<double> cumulative_;
};

class MachinePark {
 public:
  MachinePark(std::vector<MachineTimeline> machines, std::size_t m1, double e0);

  std::size_t size() const { return machines_.size(); }
  std::size_t m1() const { return m1_; }
  double e0() const { return e0_; }
  std::size_t total_intervals() const { return total_intervals_; }

  const MachineTimeline& operator[](std::size_t i) const { return machines_[i]; }
  std::span<const MachineTimeline> machines() const { return machines_; }

  // A(t) summed over machines in index order.
  double capacity_at(double t) const;

 private:
  std::vector<MachineTimeline> machines_;
  std::size_t m1_;
  double e0_;
  std::size_t total_intervals_ = 0;
};

struct SearchBounds {
  double lower;
  double upper;
};

// LB = P/m and UB = P/e0.
SearchBounds search_bounds(const MachinePark& park, double total_load);

}  // namespace mtsched
