#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtsched/capacity.hpp"
#include "mtsched/grouping.hpp"
#include "mtsched/schedule.hpp"

namespace mtsched {

// On-disk machine description:
//
//   {"m": 2, "m1": 1, "e0": 0.5,
//    "machines": [[[2, 0.5], [4, 1.0]], []]}
//
// Each machine lists (breakpoint, ratio) pairs; ratio applies up to and
// including its breakpoint, and full capacity follows the last one.
struct MachineConfig {
  std::size_t m1 = 1;
  double e0 = 1.0;
  std::vector<std::vector<Segment>> machines;

  MachinePark to_park() const;
};

MachineConfig parse_machine_config_text(std::string_view text);
MachineConfig load_machine_config(const std::filesystem::path& path);
MachinePark parse_machine_config(const std::filesystem::path& path);
std::string to_json(const MachineConfig& config);

// Whitespace-separated positive decimals, read one token at a time.
class JobReader {
 public:
  explicit JobReader(std::istream& in) : in_(&in) {}

  // Next processing time, or nullopt at end of stream.
  std::optional<double> next();
  std::uint64_t position() const { return position_; }

 private:
  std::istream* in_;
  std::string token_;
  std::uint64_t position_ = 0;
};

std::vector<Job> read_all_jobs(std::istream& in);
std::vector<Job> parse_jobs(std::string_view text);

// job_id,machine,start,completion with 1-based machines, then a makespan line.
void write_schedule_csv(std::ostream& out, const Schedule& schedule);

// Shortest text that reads back as the same double.
std::string format_double(double v);

}  // namespace mtsched
