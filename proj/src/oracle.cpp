#include "mtsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mtsched::oracle {

double evaluate_map(const MachinePark& park, std::span<const Job> jobs,
                    std::span<const std::uint32_t> map) {
  std::vector<double> load(park.size(), 0.0);
  for (std::size_t j = 0; j < jobs.size(); ++j) load[map[j]] += jobs[j].p;
  double worst = 0.0;
  for (std::size_t i = 0; i < park.size(); ++i) {
    worst = std::max(worst, park[i].completion_time(0.0, load[i]));
  }
  return worst;
}

OracleResult exact_optimum(const MachinePark& park, std::span<const Job> jobs,
                           std::uint64_t budget) {
  const auto total = assignment_count(park.size(), jobs.size());
  if (!total || *total > budget) {
    throw BudgetExceeded("oracle enumeration of " + std::to_string(park.size()) + "^" +
                         std::to_string(jobs.size()) + " maps exceeds its budget");
  }
  OracleResult best{std::numeric_limits<double>::infinity(), {}};
  std::vector<std::uint32_t> map(jobs.size(), 0);
  for (std::uint64_t n = 0; n < *total; ++n) {
    const double value = evaluate_map(park, jobs, map);
    if (value < best.optimal_makespan) best = {value, map};
    for (auto& digit : map) {
      if (++digit < park.size()) break;
      digit = 0;
    }
  }
  return best;
}

double naive_capacity_at(const MachineTimeline& timeline, double t) {
  const auto ends = timeline.breakpoints();
  const auto ratios = timeline.ratios();
  double prev = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    if (t <= ends[k]) return acc + (t - prev) * ratios[k];
    acc += (ends[k] - prev) * ratios[k];
    prev = ends[k];
  }
  return acc + (t - prev);
}

std::optional<GridPoint> grid_scan_t(const MachinePark& park, std::span<const double> large_loads,
                                     double total_load, double epsilon) {
  const double lower = total_load / static_cast<double>(park.size());
  const double upper = total_load / park.e0();
  const double base = 1.0 + epsilon / 2.0;

  auto ok = [&](double t) {
    double sum = 0.0;
    bool each = true;
    for (std::size_t i = 0; i < park.size(); ++i) {
      const double a = naive_capacity_at(park[i], t);
      sum += a;
      each = each && a >= large_loads[i];
    }
    return each && sum >= total_load;
  };

  for (int x = 0;; ++x) {
    const double t = lower * std::pow(base, x);
    if (ok(t)) return GridPoint{x, t};
    if (t >= upper) return std::nullopt;
  }
}

namespace {

int slow_ceil_log2(double p) {
  int a = static_cast<int>(std::ceil(std::log2(p)));
  while (std::ldexp(1.0, a) < p) ++a;
  while (std::ldexp(1.0, a - 1) >= p) --a;
  return a;
}

}  // namespace

LargeJobSet replay_grouping(std::span<const Job> jobs, const SchedulingParams& params,
                            double p_max) {
  LargeJobSet out;
  if (jobs.empty()) return out;

  const int q0 = slow_ceil_log2(p_max) - params.gamma0 - 1;
  auto band = [&](double p) {
    const int a = slow_ceil_log2(p);
    return a <= q0 ? -1 : a - q0 - 1;
  };

  std::vector<std::uint64_t> count(static_cast<std::size_t>(params.gamma0) + 1, 0);
  for (const Job& j : jobs) {
    out.total_load += j.p;
    out.p_max = std::max(out.p_max, j.p);
    const int k = band(j.p);
    if (k >= 0) ++count.at(static_cast<std::size_t>(k));
  }
  for (int k = params.gamma0; k >= 0; --k) {
    if (count[static_cast<std::size_t>(k)] >= params.n0) {
      out.k_l = k;
      break;
    }
  }
  for (const Job& j : jobs) {
    if (band(j.p) > out.k_l) out.jobs.push_back(j);
  }
  std::sort(out.jobs.begin(), out.jobs.end(),
            [](const Job& a, const Job& b) { return a.id < b.id; });
  out.q0 = q0;
  out.job_count = jobs.size();
  out.band_top = std::ldexp(1.0, q0 + out.k_l + 1);
  return out;
}

}  // namespace mtsched::oracle
