#include "mtsched/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mtsched {

std::vector<double> machine_loads(std::span<const std::uint32_t> mapping,
                                  std::span<const Job> jobs, std::size_t m) {
  std::vector<double> loads(m, 0.0);
  for (std::size_t j = 0; j < jobs.size(); ++j) loads[mapping[j]] += jobs[j].p;
  return loads;
}

LargeAssignment assignment_from_ordinal(std::uint64_t ordinal, std::span<const Job> jobs,
                                        std::size_t m) {
  LargeAssignment a;
  a.ordinal = ordinal;
  a.mapping.resize(jobs.size());
  std::uint64_t rest = ordinal;
  for (auto& machine : a.mapping) {
    machine = static_cast<std::uint32_t>(rest % m);
    rest /= m;
  }
  a.per_machine_load = machine_loads(a.mapping, jobs, m);
  return a;
}

std::optional<std::uint64_t> assignment_count(std::size_t m, std::size_t count) {
  std::uint64_t total = 1;
  for (std::size_t j = 0; j < count; ++j) {
    if (total > std::numeric_limits<std::uint64_t>::max() / m) return std::nullopt;
    total *= m;
  }
  return total;
}

double TimeGrid::at(int x) const { return lower * std::pow(base, x); }

TimeGrid make_grid(const MachinePark& park, double total_load, double epsilon) {
  const auto [lower, upper] = search_bounds(park, total_load);
  TimeGrid grid{lower, 1.0 + epsilon / 2.0, 0};
  if (total_load == 0.0) return grid;
  while (grid.at(grid.x_max) < upper) ++grid.x_max;
  return grid;
}

bool feasible(const MachinePark& park, std::span<const double> large_loads, double total_load,
              double t) {
  double total = 0.0;
  bool each = true;
  for (std::size_t i = 0; i < park.size(); ++i) {
    const double a = park[i].capacity_at(t);
    total += a;
    if (a < large_loads[i]) each = false;
  }
  return each && total >= total_load;
}

std::optional<GridPoint> smallest_grid_t(const MachinePark& park,
                                         std::span<const double> large_loads, double total_load,
                                         const TimeGrid& grid) {
  if (!(total_load >= 0.0)) throw DomainError("smallest_grid_t: negative load");
  if (!feasible(park, large_loads, total_load, grid.at(grid.x_max))) return std::nullopt;
  int lo = 0;
  int hi = grid.x_max;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (feasible(park, large_loads, total_load, grid.at(mid))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return GridPoint{lo, grid.at(lo)};
}

std::optional<GridPoint> smallest_grid_t(const MachinePark& park,
                                         const LargeAssignment& assignment, double total_load,
                                         double epsilon) {
  return smallest_grid_t(park, assignment.per_machine_load, total_load,
                         make_grid(park, total_load, epsilon));
}

double additive_term(const SchedulingParams& params, double band_top) {
  const auto crossing = (params.m - 1 + params.m1 - 1) / params.m1;
  return static_cast<double>(crossing) * (1.0 / params.e0) * band_top;
}

namespace {

struct Candidate {
  double t = std::numeric_limits<double>::infinity();
  std::uint64_t ordinal = std::numeric_limits<std::uint64_t>::max();
  int x = 0;

  bool better_than(const Candidate& other) const {
    return t < other.t || (t == other.t && ordinal < other.ordinal);
  }
};

std::uint64_t checked_total(const MachinePark& park, const LargeJobSet& large,
                            const SearchOptions& options) {
  const auto total = assignment_count(park.size(), large.jobs.size());
  if (!total || *total > options.budget) {
    throw BudgetExceeded("enumerating m^|JS| = " + std::to_string(park.size()) + "^" +
                         std::to_string(large.jobs.size()) +
                         " assignments exceeds the budget of " + std::to_string(options.budget));
  }
  return *total;
}

SearchOutcome finish(const MachinePark& park, const LargeJobSet& large,
                     const SchedulingParams& params, const Candidate& best, std::uint64_t total,
                     std::uint64_t infeasible) {
  if (best.ordinal == std::numeric_limits<std::uint64_t>::max()) {
    throw std::logic_error("no large-job assignment is feasible within the time grid");
  }
  SearchOutcome out;
  out.best = assignment_from_ordinal(best.ordinal, large.jobs, park.size());
  out.t = best.t;
  out.grid_exponent = best.x;
  out.value = best.t + additive_term(params, large.band_top);
  out.assignments = total;
  out.infeasible = infeasible;
  return out;
}

}  // namespace

SearchOutcome enumerate_and_select(const MachinePark& park, const LargeJobSet& large,
                                   const SchedulingParams& params, const SearchOptions& options) {
  const std::uint64_t total = checked_total(park, large, options);
  const TimeGrid grid = make_grid(park, large.total_load, params.epsilon);
  const std::size_t m = park.size();
  const std::span<const Job> jobs = large.jobs;
  const auto n_assign = static_cast<std::int64_t>(total);

  Candidate best;
  std::uint64_t infeasible = 0;

#ifdef _OPENMP
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#endif

#pragma omp parallel num_threads(threads) reduction(+ : infeasible)
  {
    Candidate local;
    std::vector<double> loads(m);
#pragma omp for schedule(static)
    for (std::int64_t ord = 0; ord < n_assign; ++ord) {
      // same summation order as machine_loads, without the allocation
      std::fill(loads.begin(), loads.end(), 0.0);
      auto rest = static_cast<std::uint64_t>(ord);
      for (const Job& job : jobs) {
        loads[rest % m] += job.p;
        rest /= m;
      }
      const auto point = smallest_grid_t(park, loads, large.total_load, grid);
      if (!point) {
        ++infeasible;
        continue;
      }
      const Candidate c{point->t, static_cast<std::uint64_t>(ord), point->x};
      if (c.better_than(local)) local = c;
    }
#pragma omp critical(mtsched_search_merge)
    {
      if (local.better_than(best)) best = local;
    }
  }
  return finish(park, large, params, best, total, infeasible);
}

SearchOutcome enumerate_and_select_serial(const MachinePark& park, const LargeJobSet& large,
                                          const SchedulingParams& params,
                                          const SearchOptions& options) {
  const std::uint64_t total = checked_total(park, large, options);
  const TimeGrid grid = make_grid(park, large.total_load, params.epsilon);
  const std::size_t m = park.size();

  Candidate best;
  std::uint64_t infeasible = 0;
  std::vector<std::uint32_t> mapping(large.jobs.size(), 0);
  for (std::uint64_t ord = 0; ord < total; ++ord) {
    if (ord > 0) {
      // odometer increment, digit 0 fastest
      for (auto& digit : mapping) {
        if (++digit < m) break;
        digit = 0;
      }
    }
    const auto loads = machine_loads(mapping, large.jobs, m);
    const auto point = smallest_grid_t(park, loads, large.total_load, grid);
    if (!point) {
      ++infeasible;
      continue;
    }
    const Candidate c{point->t, ord, point->x};
    if (c.better_than(best)) best = c;
  }
  return finish(park, large, params, best, total, infeasible);
}

}  // namespace mtsched
