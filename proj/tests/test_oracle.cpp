#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mtsched/oracle.hpp"

using namespace mtsched;
using namespace mtsched::testing;

TEST_CASE("exact_optimum examples") {
  auto r = oracle::exact_optimum(identical_unit(2), jobs_of({4, 4}));
  CHECK(r.optimal_makespan == 4.0);
  CHECK(r.witness[0] != r.witness[1]);

  const auto park = park_of({timeline({{2, 0.5}, {4, 1.0}})}, 1, 0.5);
  r = oracle::exact_optimum(park, jobs_of({3}));
  CHECK(r.optimal_makespan == 4.0);  // A(4) = 2*0.5 + 2*1 = 3

  r = oracle::exact_optimum(identical_unit(3), {});
  CHECK(r.optimal_makespan == 0.0);

  CHECK_THROWS_AS(oracle::exact_optimum(identical_unit(3), jobs_of(std::vector<double>(20, 1.0)), 1000),
                  BudgetExceeded);
}

TEST_CASE("witness reproduces the optimum") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MachineTimeline> ms;
    const std::size_t m = 2 + rng() % 2;
    for (std::size_t i = 0; i < m; ++i) ms.push_back(random_timeline(rng, 4, 0.3));
    const MachinePark park(std::move(ms), 1, 0.3);
    std::vector<double> ps(1 + rng() % 7);
    for (auto& p : ps) p = 1 + static_cast<double>(rng() % 9);
    const auto jobs = jobs_of(ps);
    const auto r = oracle::exact_optimum(park, jobs);
    CHECK(oracle::evaluate_map(park, jobs, r.witness) == r.optimal_makespan);
  }
}

TEST_CASE("grid_scan_t mirrors the search examples") {
  auto pt = oracle::grid_scan_t(identical_unit(1), std::vector<double>{4}, 4, 1.0);
  REQUIRE(pt);
  CHECK(pt->t == 4.0);
  pt = oracle::grid_scan_t(identical_unit(2), std::vector<double>{6, 0}, 6, 1.0);
  REQUIRE(pt);
  CHECK(pt->t == 6.75);
  CHECK(pt->x == 2);
  pt = oracle::grid_scan_t(identical_unit(2), std::vector<double>{0, 0}, 0, 1.0);
  REQUIRE(pt);
  CHECK(pt->t == 0.0);
}

TEST_CASE("replay_grouping by definition") {
  const auto params = derive_params(2, 1, 1.0, 1.0);  // gamma0 2, N0 16
  auto l = oracle::replay_grouping(jobs_of({5}), params, 5);
  CHECK(l.jobs.size() == 1);  // 5 > 2^{q0} = 1/2
  CHECK(l.k_l == -1);

  const auto big = oracle::replay_grouping(jobs_of({8, 0.25}), params, 8);
  CHECK(big.q0 == 0);
  CHECK(big.jobs == std::vector<Job>{{0, 8}});

  l = oracle::replay_grouping(jobs_of(std::vector<double>(16, 3.0)), params, 3);
  CHECK(l.k_l == 2);
  CHECK(l.jobs.empty());
  CHECK(l.total_load == 48.0);
}
