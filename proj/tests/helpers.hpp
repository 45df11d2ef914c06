#pragma once

#include <random>
#include <vector>

#include "mtsched/capacity.hpp"
#include "mtsched/grouping.hpp"

namespace mtsched::testing {

inline MachineTimeline unit_machine() { return MachineTimeline{}; }

inline MachineTimeline timeline(std::vector<Segment> segs) { return MachineTimeline(std::move(segs)); }

inline MachinePark park_of(std::vector<MachineTimeline> ms, std::size_t m1, double e0) {
  return MachinePark(std::move(ms), m1, e0);
}

inline MachinePark identical_unit(std::size_t m) {
  return MachinePark(std::vector<MachineTimeline>(m), 1, 1.0);
}

// Random timeline with up to max_k shared intervals, real breakpoints and
// ratios drawn from (min_ratio, 1].
inline MachineTimeline random_timeline(std::mt19937_64& rng, std::size_t max_k,
                                       double min_ratio = 0.05) {
  std::uniform_int_distribution<std::size_t> kd(0, max_k);
  std::uniform_real_distribution<double> gap(0.01, 5.0);
  std::uniform_real_distribution<double> rd(min_ratio, 1.0);
  std::vector<Segment> segs;
  double end = 0.0;
  for (std::size_t k = kd(rng); k > 0; --k) {
    end += gap(rng);
    segs.push_back({end, rd(rng)});
  }
  return MachineTimeline(std::move(segs));
}

inline std::vector<Job> jobs_of(const std::vector<double>& ps) {
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < ps.size(); ++j) jobs.push_back({j, ps[j]});
  return jobs;
}

}  // namespace mtsched::testing
