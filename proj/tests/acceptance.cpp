// Acceptance checks, one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mtsched/capacity.hpp"
#include "mtsched/generator.hpp"
#include "mtsched/grouping.hpp"
#include "mtsched/oracle.hpp"
#include "mtsched/schedule.hpp"
#include "mtsched/search.hpp"

using namespace mtsched;

namespace {

constexpr double kSlack = 1e-9;

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int id, const char* title, const Verdict& v, const std::string& summary) {
  char head[32];
  std::snprintf(head, sizeof head, "%s criterion %d: ", v.ok ? "PASS" : "FAIL", id);
  lines[id] = head + std::string(title) + " (" + (v.ok ? summary : v.detail) + ")";
  if (!v.ok) ++failures;
}

std::string str(double v) { return format_double(v); }

// Small instances shared by the first criteria.
struct Case {
  GeneratorConfig gen;
  double epsilon = 1.0;
  Instance inst;
};

std::vector<Case> sandwich_cases() {
  std::vector<Case> cases;
  std::mt19937_64 rng(2024);
  std::uint64_t seed = 1;
  for (std::size_t m = 2; m <= 3; ++m) {
    for (std::size_t m1 = 1; m1 <= m; ++m1) {
      for (double e0 : {0.5, 1.0}) {
        for (double eps : {0.5, 1.0}) {
          for (int rep = 0; rep < 13; ++rep) {
            Case c;
            c.gen.seed = seed++;
            c.gen.m = m;
            c.gen.m1 = m1;
            c.gen.e0 = e0;
            c.gen.n = 1 + rng() % 10;
            c.gen.max_intervals = 3;
            c.gen.max_breakpoint = 20;
            c.gen.ratios = {0.25, 0.5, 1.0};
            c.gen.job_min = 1;
            c.gen.job_max = 16;
            c.epsilon = eps;
            c.inst = generate_instance(c.gen);
            cases.push_back(std::move(c));
          }
        }
      }
    }
  }
  return cases;
}

double p_max_of(const std::vector<Job>& jobs) {
  double p = 0.0;
  for (const Job& j : jobs) p = std::max(p, j.p);
  return p;
}

SearchOutcome stream_through(GroupLedger& ledger, const MachinePark& park,
                             const std::vector<Job>& jobs, LargeJobSet* large_out = nullptr) {
  for (const Job& j : jobs) ledger.ingest(j);
  const auto large = ledger.finalize();
  auto outcome = enumerate_and_select(park, large, ledger.params());
  if (large_out) *large_out = large;
  return outcome;
}

// Criteria 1, 2 and 4 share the instance set and the optimum.
void small_instance_criteria() {
  const auto cases = sandwich_cases();
  Verdict sandwich, regimes, two_pass;
  double worst_ratio = 0.0;
  std::size_t runs = 0;

  for (const Case& c : cases) {
    const auto park = c.inst.machines.to_park();
    const auto& jobs = c.inst.jobs;
    const auto params = derive_params(c.gen.m, c.gen.m1, c.gen.e0, c.epsilon);
    const double opt = oracle::exact_optimum(park, jobs).optimal_makespan;
    const double p_max = p_max_of(jobs);
    const std::string tag = "seed " + std::to_string(c.gen.seed);

    // 1: sandwich on the offline value
    const auto offline = offline_schedule(park, params, jobs);
    const double v = offline.value;
    if (!(opt <= v && v <= (1 + c.epsilon) * opt * (1 + kSlack))) {
      sandwich.fail(tag + ": C*=" + str(opt) + " V=" + str(v));
    }
    worst_ratio = std::max(worst_ratio, v / opt);

    // 2: every streaming regime reports the same value bit for bit
    std::vector<std::pair<std::string, std::unique_ptr<GroupLedger>>> ledgers;
    ledgers.emplace_back("pmax-given", std::make_unique<KnownPmaxLedger>(params, p_max));
    ledgers.emplace_back("unknown", std::make_unique<UnknownPmaxLedger>(params));
    for (double alpha : {1.0, 2.0, 8.0}) {
      ledgers.emplace_back("estimate a=" + str(alpha) + " at a*pmax",
                           std::make_unique<EstimatedPmaxLedger>(params, alpha * p_max, alpha));
      ledgers.emplace_back("estimate a=" + str(alpha) + " at pmax",
                           std::make_unique<EstimatedPmaxLedger>(params, p_max, alpha));
    }
    LargeJobSet unknown_large;
    SearchOutcome unknown_outcome;
    for (auto& [name, ledger] : ledgers) {
      LargeJobSet large;
      const auto out = stream_through(*ledger, park, jobs, &large);
      ++runs;
      if (out.value != v) regimes.fail(tag + ": " + name + " V=" + str(out.value) + " offline V=" + str(v));
      if (large.jobs != offline.large.jobs || large.k_l != offline.large.k_l) {
        regimes.fail(tag + ": " + name + " large-job set differs");
      }
      if (name == "unknown") {
        unknown_large = large;
        unknown_outcome = out;
      }
    }

    // 4: two-pass schedule from the unknown-regime first pass
    const FirstPassArtifacts first{unknown_large, unknown_outcome};
    std::vector<double> times;
    for (const Job& j : jobs) times.push_back(j.p);
    SecondPass pass(park, first);
    for (double p : times) pass.feed(p);
    const auto sched = pass.finish();
    if (const auto check = validate_schedule(park, sched, jobs); !check) {
      two_pass.fail(tag + ": " + check.message);
      continue;
    }
    const auto cross = crossing_counts(sched, c.gen.m, unknown_outcome.t);
    const std::size_t bound = (c.gen.m - 1 + c.gen.m1 - 1) / c.gen.m1;
    for (std::size_t i = 0; i < c.gen.m; ++i) {
      if (cross[i] > (i < c.gen.m1 ? bound : 0)) {
        two_pass.fail(tag + ": machine " + std::to_string(i + 1) + " has " +
                      std::to_string(cross[i]) + " jobs finishing after t");
      }
    }
    const double vs = unknown_outcome.value;
    if (!(sched.makespan <= vs * (1 + kSlack) && vs <= (1 + c.epsilon) * opt * (1 + kSlack))) {
      two_pass.fail(tag + ": makespan=" + str(sched.makespan) + " V=" + str(vs) + " C*=" + str(opt));
    }
  }

  report(1, "C* <= V <= (1+eps) C* on small instances", sandwich,
         std::to_string(cases.size()) + " instances, worst V/C* = " + str(worst_ratio));
  report(2, "all regimes report bit-identical V", regimes,
         std::to_string(runs) + " streaming runs against the offline value");
  report(4, "two-pass schedules are valid with bounded crossings", two_pass,
         std::to_string(cases.size()) + " schedules validated");
}

// 3: the unknown-regime ledger equals a ledger seeded with the prefix maximum
void prefix_equivalence() {
  Verdict v;
  std::mt19937_64 rng(77);
  std::size_t prefixes = 0;
  for (int s = 0; s < 50 && v.ok; ++s) {
    const std::size_t n = 1 + rng() % 1000;
    auto params = derive_params(2 + rng() % 2, 1, (s % 2) ? 0.5 : 1.0, 1.0);
    if (s % 3 == 0) params = with_overrides(params, 1 + static_cast<int>(rng() % 3), 1 + rng() % 6);
    // integer multiples of powers of two keep every folded sum exact
    std::vector<Job> jobs;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = std::ldexp(static_cast<double>(1 + rng() % 7), static_cast<int>(rng() % 16) - 4);
      jobs.push_back({j, p});
    }
    UnknownPmaxLedger unknown(params);
    double prefix_max = 0.0;
    for (std::size_t j = 0; j < n && v.ok; ++j) {
      unknown.ingest(jobs[j]);
      prefix_max = std::max(prefix_max, jobs[j].p);
      KnownPmaxLedger known(params, prefix_max);
      for (std::size_t r = 0; r <= j; ++r) known.ingest(jobs[r]);
      ++prefixes;
      if (!(unknown.snapshot() == known.snapshot())) {
        v.fail("stream " + std::to_string(s) + " diverges after " + std::to_string(j + 1) + " jobs");
      }
    }
  }
  report(3, "unknown-p_max ledger matches the known-p_max ledger on every prefix", v,
         "50 streams, " + std::to_string(prefixes) + " prefixes");
}

// Big stream shared by the scale criteria.
struct Stream {
  SchedulingParams params;
  std::vector<Job> jobs;
  double p_max = 0.0;
};

Stream big_stream(std::size_t n) {
  Stream s;
  s.params = derive_params(3, 2, 0.5, 0.5);
  GeneratorConfig gc;
  gc.seed = 99;
  gc.m = 3;
  gc.m1 = 2;
  gc.e0 = 0.5;
  gc.n = n;
  gc.distribution = JobDistribution::Exponential;
  gc.job_mean = 10.0;
  s.jobs = generate_instance(gc).jobs;
  s.p_max = p_max_of(s.jobs);
  return s;
}

using LedgerFactory = std::function<std::unique_ptr<GroupLedger>(const Stream&)>;

std::vector<std::pair<std::string, LedgerFactory>> factories() {
  return {
      {"pmax-given",
       [](const Stream& s) { return std::make_unique<KnownPmaxLedger>(s.params, s.p_max); }},
      {"estimate a=8",
       [](const Stream& s) {
         return std::make_unique<EstimatedPmaxLedger>(s.params, 4.0 * s.p_max, 8.0);
       }},
      {"unknown", [](const Stream& s) { return std::make_unique<UnknownPmaxLedger>(s.params); }},
  };
}

// 5: retained jobs and group records stay bounded at every step
void memory_bound(const Stream& s) {
  Verdict v;
  const std::size_t retained_cap =
      static_cast<std::size_t>(s.params.gamma0 + 1) * static_cast<std::size_t>(s.params.n0);
  std::string summary;
  for (const auto& [name, make] : factories()) {
    auto ledger = make(s);
    const std::size_t record_cap =
        name == "estimate a=8" ? static_cast<std::size_t>(s.params.gamma0 + 2 + ceil_log2(8.0))
                               : static_cast<std::size_t>(s.params.gamma0 + 2);
    for (const Job& j : s.jobs) {
      ledger->ingest(j);
      if (ledger->retained_count() > retained_cap || ledger->group_records() > record_cap) {
        v.fail(name + ": " + std::to_string(ledger->retained_count()) + " retained, " +
               std::to_string(ledger->group_records()) + " records after job " +
               std::to_string(j.id));
        break;
      }
    }
    summary += name + " peak " + std::to_string(ledger->peak_retained()) + "/" +
               std::to_string(retained_cap) + " retained, " +
               std::to_string(ledger->peak_group_records()) + "/" + std::to_string(record_cap) +
               " records; ";
  }
  summary.resize(summary.size() - 2);
  report(5, "ledger memory stays bounded over 1e6 jobs", v, summary);
}

double mean_ingest_ns(const Stream& s, const LedgerFactory& make, std::size_t n) {
  double best = 1e300;
  for (int rep = 0; rep < 3; ++rep) {
    auto ledger = make(s);
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t j = 0; j < n; ++j) ledger->ingest(s.jobs[j]);
    const auto end = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::nano>(end - start).count() /
                              static_cast<double>(n));
  }
  return best;
}

// 6: per-job ingest cost does not grow with the stream length
void ingest_scaling(const Stream& s) {
  Verdict v;
  std::string summary;
  for (const auto& [name, make] : factories()) {
    const double small = mean_ingest_ns(s, make, s.jobs.size() / 10);
    const double large = mean_ingest_ns(s, make, s.jobs.size());
    if (large > 3.0 * small) {
      v.fail(name + ": " + str(large) + " ns/job at 1e6 vs " + str(small) + " ns/job at 1e5");
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %.1f vs %.1f ns/job; ", name.c_str(), large, small);
    summary += buf;
  }
  summary.resize(summary.size() - 2);
  report(6, "per-job ingest time at 1e6 within 3x of 1e5", v, summary);
}

// 7: fast paths agree with their naive references
void reference_agreement() {
  Verdict v;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_park = [&](std::size_t m) {
    std::vector<MachineTimeline> ms;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Segment> segs;
      double end = 0.0;
      for (std::size_t k = rng() % 6; k > 0; --k) {
        end += 0.1 + 5.0 * unit(rng);
        segs.push_back({end, 0.5 + 0.5 * unit(rng)});
      }
      ms.emplace_back(std::move(segs));
    }
    return MachinePark(std::move(ms), 1 + rng() % m, 0.5);
  };

  for (int c = 0; c < 1000; ++c) {
    const std::size_t m = 1 + rng() % 4;
    const auto park = random_park(m);
    std::vector<double> loads(m);
    double total = 0.0;
    for (auto& l : loads) {
      l = 20.0 * unit(rng);
      total += l;
    }
    total += 10.0 * unit(rng);
    const double eps = 0.1 + unit(rng);
    const auto grid = make_grid(park, total, eps);
    const auto fast = smallest_grid_t(park, loads, total, grid);
    const auto slow = oracle::grid_scan_t(park, loads, total, eps);
    if (fast.has_value() != slow.has_value() || (fast && (fast->x != slow->x || fast->t != slow->t))) {
      v.fail("grid case " + std::to_string(c) + " disagrees");
    }
  }
  for (int c = 0; c < 1000; ++c) {
    const auto park = random_park(1);
    const double t = 40.0 * unit(rng);
    if (park[0].capacity_at(t) != oracle::naive_capacity_at(park[0], t)) {
      v.fail("capacity at t=" + str(t) + " disagrees");
    }
  }
  report(7, "binary search and capacity lookup match their linear references", v,
         "1000 grid cases, 1000 capacity pairs");
}

// 8: a band saturated by N0 equal jobs becomes k_L and is left out of JS
void saturated_band() {
  Verdict v;
  const auto params = derive_params(2, 1, 1.0, 1.0);
  const auto park = MachinePark(std::vector<MachineTimeline>(2), 1, 1.0);
  std::vector<double> times{1, 3, 8};
  for (std::uint64_t i = 0; i < params.n0; ++i) times.push_back(4);
  times.push_back(6);
  times.push_back(3);
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < times.size(); ++j) jobs.push_back({j, times[j]});
  const double p_max = p_max_of(jobs);
  const int band = group_index(4.0, q0_for_pmax(p_max, params.gamma0));

  const Stream s{params, jobs, p_max};
  for (const auto& [name, make] : factories()) {
    auto ledger = make(s);
    LargeJobSet large;
    stream_through(*ledger, park, jobs, &large);
    if (large.k_l != band) {
      v.fail(name + ": k_L=" + std::to_string(large.k_l) + ", expected " + std::to_string(band));
    }
    for (const Job& j : large.jobs) {
      if (group_index(j.p, large.q0) <= large.k_l) {
        v.fail(name + ": job " + std::to_string(j.id) + " from band " +
               std::to_string(group_index(j.p, large.q0)) + " is in JS");
      }
    }
    if (large.jobs.size() != 2) v.fail(name + ": JS has " + std::to_string(large.jobs.size()) + " jobs");
  }
  report(8, "N0 copies saturate their band, which becomes k_L", v,
         "N0=" + std::to_string(params.n0) + ", k_L=" + std::to_string(band) + ", |JS|=2");
}

}  // namespace

int main() {
  small_instance_criteria();
  prefix_equivalence();
  const auto stream = big_stream(1'000'000);
  memory_bound(stream);
  ingest_scaling(stream);
  reference_agreement();
  saturated_band();
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
