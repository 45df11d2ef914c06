// Times the parallel assignment search against the serial reference on the
// same large-job set and checks that both pick the same assignment.
//
//   bench_search [n_large=12] [m=3] [threads=0] [reps=3]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "mtsched/generator.hpp"
#include "mtsched/search.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mtsched;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 12;
  const std::size_t m = argc > 2 ? std::stoul(argv[2]) : 3;
  const int threads = argc > 3 ? std::stoi(argv[3]) : 0;
  const int reps = argc > 4 ? std::stoi(argv[4]) : 3;

  GeneratorConfig gc;
  gc.seed = 2024;
  gc.m = m;
  gc.m1 = 1;
  gc.e0 = 0.5;
  gc.n = n;
  gc.max_intervals = 8;
  gc.max_breakpoint = 200;
  gc.job_max = 64;
  const Instance inst = generate_instance(gc);
  const MachinePark park = inst.machines.to_park();
  const SchedulingParams params = derive_params(m, 1, 0.5, 0.5);

  LargeJobSet large;
  large.jobs = inst.jobs;
  for (const Job& j : inst.jobs) large.total_load += j.p;
  large.job_count = inst.jobs.size();
  large.band_top = 1.0;

  SearchOptions opts;
  opts.budget = ~0ULL;
  opts.threads = threads;

  SearchOutcome serial;
  SearchOutcome parallel;
  const double ts = best_of(reps, [&] { serial = enumerate_and_select_serial(park, large, params, opts); });
  const double tp = best_of(reps, [&] { parallel = enumerate_and_select(park, large, params, opts); });

  int used = 1;
#ifdef _OPENMP
  used = threads > 0 ? threads : omp_get_max_threads();
#endif
  std::printf("assignments=%llu threads=%d\n",
              static_cast<unsigned long long>(serial.assignments), used);
  std::printf("serial_s=%.6f parallel_s=%.6f speedup=%.2f\n", ts, tp, ts / tp);
  const bool same = serial.best.ordinal == parallel.best.ordinal && serial.t == parallel.t;
  std::printf("t=%.17g ordinal=%llu match=%s\n", serial.t,
              static_cast<unsigned long long>(serial.best.ordinal), same ? "yes" : "NO");
  return same ? 0 : 1;
}
