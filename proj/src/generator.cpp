#include "mtsched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <set>

namespace mtsched {

namespace {

void check(const GeneratorConfig& c) {
  if (c.m < 1 || c.m1 < 1 || c.m1 > c.m) throw ConfigError("generator: need 1 <= m1 <= m");
  if (!(c.e0 > 0.0 && c.e0 <= 1.0)) throw ConfigError("generator: e0 must lie in (0, 1]");
  if (c.min_intervals > c.max_intervals) {
    throw ConfigError("generator: min intervals exceeds max intervals");
  }
  if (c.max_intervals > c.max_breakpoint) {
    throw ConfigError("generator: more intervals than distinct integer breakpoints");
  }
  if (c.ratios.empty()) throw ConfigError("generator: ratio set is empty");
  for (double r : c.ratios) {
    if (!(r > 0.0 && r <= 1.0)) throw ConfigError("generator: ratios must lie in (0, 1]");
  }
  switch (c.distribution) {
    case JobDistribution::UniformInt:
      if (!(c.job_min >= 1.0) || c.job_min > c.job_max) {
        throw ConfigError("generator: integer job bounds need 1 <= min <= max");
      }
      break;
    case JobDistribution::Uniform:
      if (!(c.job_min > 0.0) || c.job_min > c.job_max) {
        throw ConfigError("generator: job bounds need 0 < min <= max");
      }
      break;
    case JobDistribution::Exponential:
      if (!(c.job_mean > 0.0)) throw ConfigError("generator: exponential mean must be positive");
      break;
  }
}

// Separate streams so the machine park does not depend on n.
std::mt19937_64 machine_rng(std::uint64_t seed) { return std::mt19937_64(seed); }
std::mt19937_64 job_rng(std::uint64_t seed) {
  return std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ULL);
}

template <class Emit>
void draw_jobs(const GeneratorConfig& c, Emit&& emit) {
  auto rng = job_rng(c.seed);
  switch (c.distribution) {
    case JobDistribution::UniformInt: {
      std::uniform_int_distribution<long long> dist(std::llround(c.job_min),
                                                    std::llround(std::floor(c.job_max)));
      for (std::uint64_t j = 0; j < c.n; ++j) emit(static_cast<double>(dist(rng)));
      break;
    }
    case JobDistribution::Uniform: {
      std::uniform_real_distribution<double> dist(c.job_min, c.job_max);
      for (std::uint64_t j = 0; j < c.n; ++j) {
        double p = dist(rng);
        emit(p > 0.0 ? p : c.job_min);
      }
      break;
    }
    case JobDistribution::Exponential: {
      std::exponential_distribution<double> dist(1.0 / c.job_mean);
      for (std::uint64_t j = 0; j < c.n; ++j) {
        double p = dist(rng);
        emit(p > 0.0 ? p : c.job_mean);
      }
      break;
    }
  }
}

}  // namespace

MachineConfig generate_machines(const GeneratorConfig& c) {
  check(c);
  auto rng = machine_rng(c.seed);
  std::uniform_int_distribution<std::size_t> count(c.min_intervals, c.max_intervals);
  std::uniform_int_distribution<std::uint64_t> point(1, c.max_breakpoint);
  std::uniform_int_distribution<std::size_t> pick(0, c.ratios.size() - 1);

  MachineConfig cfg;
  cfg.m1 = c.m1;
  cfg.e0 = c.e0;
  for (std::size_t i = 0; i < c.m; ++i) {
    const std::size_t k = count(rng);
    std::set<std::uint64_t> ends;
    while (ends.size() < k) ends.insert(point(rng));
    std::vector<Segment> segs;
    for (std::uint64_t end : ends) {
      double r = c.ratios[pick(rng)];
      if (i < c.m1) r = std::max(r, c.e0);
      segs.push_back({static_cast<double>(end), r});
    }
    cfg.machines.push_back(std::move(segs));
  }
  return cfg;
}

Instance generate_instance(const GeneratorConfig& c) {
  Instance inst{generate_machines(c), {}};
  inst.jobs.reserve(c.n);
  draw_jobs(c, [&](double p) { inst.jobs.push_back({inst.jobs.size(), p}); });
  return inst;
}

void write_jobs(const GeneratorConfig& c, std::ostream& out) {
  check(c);
  draw_jobs(c, [&](double p) { out << format_double(p) << '\n'; });
}

JobDistribution parse_distribution(const std::string& name) {
  if (name == "uniform-int") return JobDistribution::UniformInt;
  if (name == "uniform") return JobDistribution::Uniform;
  if (name == "exponential") return JobDistribution::Exponential;
  throw ConfigError("unknown job distribution '" + name + "'");
}

}  // namespace mtsched
