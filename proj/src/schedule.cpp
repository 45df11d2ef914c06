#include "mtsched/schedule.hpp"

#include <algorithm>
#include <unordered_set>

namespace mtsched {

Schedule build_schedule(const MachinePark& park, const std::vector<std::vector<Job>>& sequences) {
  Schedule s;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    double clock = 0.0;
    std::uint32_t pos = 0;
    for (const Job& job : sequences[i]) {
      const double done = park[i].completion_time(clock, job.p);
      s.placements.push_back({job.id, job.p, static_cast<std::uint32_t>(i), pos++, clock, done});
      clock = done;
    }
    s.makespan = std::max(s.makespan, clock);
  }
  std::sort(s.placements.begin(), s.placements.end(),
            [](const Placement& a, const Placement& b) { return a.id < b.id; });
  return s;
}

ValidationResult validate_schedule(const MachinePark& park, const Schedule& schedule,
                                   std::span<const Job> expected) {
  auto fail = [](std::string msg) { return ValidationResult{false, std::move(msg)}; };

  std::vector<std::vector<const Placement*>> per_machine(park.size());
  std::unordered_set<JobId> seen;
  for (const auto& pl : schedule.placements) {
    if (pl.machine >= park.size()) return fail("job " + std::to_string(pl.id) + ": bad machine");
    if (!seen.insert(pl.id).second) return fail("job " + std::to_string(pl.id) + " placed twice");
    per_machine[pl.machine].push_back(&pl);
  }

  double makespan = 0.0;
  for (std::size_t i = 0; i < per_machine.size(); ++i) {
    auto& seq = per_machine[i];
    std::sort(seq.begin(), seq.end(),
              [](const Placement* a, const Placement* b) { return a->position < b->position; });
    double clock = 0.0;
    for (std::size_t r = 0; r < seq.size(); ++r) {
      const Placement& pl = *seq[r];
      if (pl.position != r) {
        return fail("machine " + std::to_string(i + 1) + ": positions are not contiguous");
      }
      if (pl.start != clock) {
        return fail("job " + std::to_string(pl.id) + " does not start when its predecessor ends");
      }
      const double done = park[i].completion_time(clock, pl.p);
      if (pl.completion != done) {
        return fail("job " + std::to_string(pl.id) + " has a wrong completion time");
      }
      clock = done;
    }
    makespan = std::max(makespan, clock);
  }
  if (schedule.makespan != makespan) return fail("makespan is not the largest completion time");

  if (!expected.empty()) {
    if (expected.size() != schedule.placements.size()) return fail("job count mismatch");
    for (const Job& job : expected) {
      const auto it = std::lower_bound(
          schedule.placements.begin(), schedule.placements.end(), job.id,
          [](const Placement& pl, JobId id) { return pl.id < id; });
      if (it == schedule.placements.end() || it->id != job.id || it->p != job.p) {
        return fail("job " + std::to_string(job.id) + " missing or altered");
      }
    }
  }
  return {};
}

std::vector<std::size_t> crossing_counts(const Schedule& schedule, std::size_t m, double t,
                                         double rel_slack) {
  std::vector<std::size_t> counts(m, 0);
  const double limit = t * (1.0 + rel_slack);
  for (const auto& pl : schedule.placements) {
    if (pl.completion > limit) ++counts[pl.machine];
  }
  return counts;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<Job>> large_sequences(std::size_t m, const SearchOutcome& outcome,
                                              std::span<const Job> large_jobs) {
  if (outcome.best.mapping.size() != large_jobs.size()) {
    throw ContractError("large assignment does not match the large-job set");
  }
  std::vector<std::vector<Job>> seq(m);
  for (std::size_t j = 0; j < large_jobs.size(); ++j) {
    seq[outcome.best.mapping[j]].push_back(large_jobs[j]);
  }
  return seq;
}

std::size_t fewest(std::span<const std::size_t> counts, std::size_t m1) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < m1; ++i) {
    if (counts[i] < counts[best]) best = i;
  }
  return best;
}

}  // namespace

SmallJobPlacer::SmallJobPlacer(const MachinePark& park, const SearchOutcome& outcome,
                               std::span<const Job> large_jobs)
    : park_(&park),
      committed_(outcome.best.per_machine_load),
      crossing_(park.size(), 0),
      sequences_(large_sequences(park.size(), outcome, large_jobs)) {
  committed_.resize(park.size(), 0.0);
  threshold_.reserve(park.size());
  for (std::size_t i = 0; i < park.size(); ++i) threshold_.push_back(park[i].capacity_at(outcome.t));
}

std::size_t SmallJobPlacer::least_crossed() const { return fewest(crossing_, park_->m1()); }

void SmallJobPlacer::place(const Job& job) {
  const std::size_t m = park_->size();
  while (cursor_ < m && committed_[cursor_] >= threshold_[cursor_]) ++cursor_;

  if (cursor_ == m) {
    // Only reachable when A(t) < P through round-off; treat as crossing.
    const std::size_t target = least_crossed();
    ++crossing_[target];
    sequences_[target].push_back(job);
    return;
  }

  const std::size_t i = cursor_;
  committed_[i] += job.p;
  if (committed_[i] > threshold_[i] && i >= park_->m1()) {
    const std::size_t target = least_crossed();
    ++crossing_[target];
    sequences_[target].push_back(job);
    return;
  }
  if (committed_[i] > threshold_[i]) ++crossing_[i];
  sequences_[i].push_back(job);
}

Schedule SmallJobPlacer::finish() const { return build_schedule(*park_, sequences_); }

Schedule place_small_jobs(const MachinePark& park, const SearchOutcome& outcome,
                          std::span<const Job> large_jobs, std::span<const Job> small_jobs) {
  const std::size_t m = park.size();
  const std::size_t m1 = park.m1();

  std::unordered_set<JobId> large_ids;
  for (const Job& j : large_jobs) large_ids.insert(j.id);

  auto seq = large_sequences(m, outcome, large_jobs);
  std::vector<double> load = outcome.best.per_machine_load;
  load.resize(m, 0.0);
  std::vector<double> cap(m);
  for (std::size_t i = 0; i < m; ++i) cap[i] = park[i].capacity_at(outcome.t);

  // Phase (i): fill machines in index order; at most one job per machine
  // ends after t.
  std::vector<std::size_t> crossing(m, 0);
  std::vector<Job> displaced;
  std::size_t i = 0;
  for (const Job& job : small_jobs) {
    if (large_ids.contains(job.id)) {
      throw ContractError("job " + std::to_string(job.id) + " is both large and small");
    }
    while (i < m && load[i] >= cap[i]) ++i;
    if (i == m) {
      displaced.push_back(job);
      continue;
    }
    load[i] += job.p;
    if (load[i] > cap[i]) {
      if (i < m1) {
        ++crossing[i];
        seq[i].push_back(job);
      } else {
        displaced.push_back(job);
      }
    } else {
      seq[i].push_back(job);
    }
  }

  // Phase (ii): spread crossing jobs from machines beyond m1 over the first m1.
  for (const Job& job : displaced) {
    const std::size_t target = fewest(crossing, m1);
    ++crossing[target];
    seq[target].push_back(job);
  }
  return build_schedule(park, seq);
}

OfflineResult offline_schedule(const MachinePark& park, const SchedulingParams& params,
                               std::span<const Job> jobs, const SearchOptions& options) {
  OfflineResult out;
  if (!jobs.empty()) {
    double p_max = 0.0;
    for (const Job& j : jobs) p_max = std::max(p_max, j.p);
    KnownPmaxLedger ledger(params, p_max);
    for (const Job& j : jobs) ledger.ingest(j);
    out.large = ledger.finalize();
  }
  out.outcome = enumerate_and_select(park, out.large, params, options);
  out.value = out.outcome.value;

  std::unordered_set<JobId> large_ids;
  for (const Job& j : out.large.jobs) large_ids.insert(j.id);
  std::vector<Job> small;
  small.reserve(jobs.size() - out.large.jobs.size());
  for (const Job& j : jobs) {
    if (!large_ids.contains(j.id)) small.push_back(j);
  }
  out.schedule = place_small_jobs(park, out.outcome, out.large.jobs, small);
  return out;
}

// ---------------------------------------------------------------------------

SecondPass::SecondPass(const MachinePark& park, const FirstPassArtifacts& first)
    : first_(&first), placer_(park, first.outcome, first.large.jobs) {
  large_.reserve(first.large.jobs.size());
  for (const Job& j : first.large.jobs) large_.emplace(j.id, j.p);
}

void SecondPass::feed(double p) {
  const JobId id = position_++;
  if (id >= first_->large.job_count) {
    throw TwoPassMismatch("second pass has more jobs than the first");
  }
  if (!(p > 0.0) || p > first_->large.p_max) {
    throw TwoPassMismatch("job " + std::to_string(id) + " differs from the first pass");
  }
  if (const auto it = large_.find(id); it != large_.end()) {
    if (it->second != p) {
      throw TwoPassMismatch("large job " + std::to_string(id) + " changed between passes");
    }
    return;
  }
  placer_.place({id, p});
}

Schedule SecondPass::finish() const {
  if (position_ != first_->large.job_count) {
    throw TwoPassMismatch("second pass read " + std::to_string(position_) + " jobs, first pass " +
                          std::to_string(first_->large.job_count));
  }
  return placer_.finish();
}

Schedule second_pass(const MachinePark& park, const FirstPassArtifacts& first,
                     std::span<const double> stream) {
  SecondPass pass(park, first);
  for (double p : stream) pass.feed(p);
  return pass.finish();
}

}  // namespace mtsched
