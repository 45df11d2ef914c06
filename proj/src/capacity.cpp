#include "mtsched/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mtsched {

MachineTimeline::MachineTimeline(std::vector<Segment> segments) {
  breakpoints_.reserve(segments.size());
  ratios_.reserve(segments.size());
  cumulative_.reserve(segments.size());

  double prev_end = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto [end, ratio] = segments[k];
    if (!std::isfinite(end) || end <= prev_end) {
      throw ConfigError("breakpoint " + std::to_string(k) +
                        " must be finite and strictly greater than the previous one");
    }
    if (!(ratio > 0.0 && ratio <= 1.0)) {
      throw ConfigError("ratio " + std::to_string(k) + " must lie in (0, 1]");
    }
    acc += (end - prev_end) * ratio;
    breakpoints_.push_back(end);
    ratios_.push_back(ratio);
    cumulative_.push_back(acc);
    prev_end = end;
  }
}

double MachineTimeline::capacity_at(double t) const {
  if (!(t >= 0.0)) throw DomainError("capacity_at: negative time");
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto k = static_cast<std::size_t>(it - breakpoints_.begin());
  if (k == 0) {
    return breakpoints_.empty() ? t : t * ratios_[0];
  }
  if (k == breakpoints_.size()) {
    return cumulative_.back() + (t - breakpoints_.back());
  }
  return cumulative_[k - 1] + (t - breakpoints_[k - 1]) * ratios_[k];
}

double MachineTimeline::completion_time(double start, double amount) const {
  if (!(start >= 0.0) || !(amount >= 0.0)) {
    throw DomainError("completion_time: negative start or amount");
  }
  if (amount == 0.0) return start;

  const double target = capacity_at(start) + amount;
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), target);
  const auto k = static_cast<std::size_t>(it - cumulative_.begin());
  double t;
  if (k == cumulative_.size()) {
    const double base_t = breakpoints_.empty() ? 0.0 : breakpoints_.back();
    const double base_a = cumulative_.empty() ? 0.0 : cumulative_.back();
    t = base_t + (target - base_a);
  } else {
    const double base_t = k == 0 ? 0.0 : breakpoints_[k - 1];
    const double base_a = k == 0 ? 0.0 : cumulative_[k - 1];
    t = base_t + (target - base_a) / ratios_[k];
  }
  return std::max(t, start);
}

double MachineTimeline::min_ratio() const {
  double r = 1.0;
  for (double e : ratios_) r = std::min(r, e);
  return r;
}

MachinePark::MachinePark(std::vector<MachineTimeline> machines, std::size_t m1, double e0)
    : machines_(std::move(machines)), m1_(m1), e0_(e0) {
  if (machines_.empty()) throw ConfigError("machine park needs at least one machine");
  if (m1_ < 1 || m1_ > machines_.size()) {
    throw ConfigError("m1 must satisfy 1 <= m1 <= m");
  }
  if (!(e0_ > 0.0 && e0_ <= 1.0)) throw ConfigError("e0 must lie in (0, 1]");
  for (std::size_t i = 0; i < machines_.size(); ++i) {
    if (i < m1_ && machines_[i].min_ratio() < e0_) {
      throw ConfigError("machine " + std::to_string(i + 1) +
                        " has a sharing ratio below e0 but is among the first m1");
    }
    total_intervals_ += machines_[i].interval_count();
  }
}

double MachinePark::capacity_at(double t) const {
  double total = 0.0;
  for (const auto& machine : machines_) total += machine.capacity_at(t);
  return total;
}

SearchBounds search_bounds(const MachinePark& park, double total_load) {
  if (!(total_load >= 0.0)) throw DomainError("search_bounds: negative load");
  return {total_load / static_cast<double>(park.size()), total_load / park.e0()};
}

}  // namespace mtsched
