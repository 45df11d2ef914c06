#include "mtsched/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace mtsched {

using nlohmann::json;

MachinePark MachineConfig::to_park() const {
  std::vector<MachineTimeline> timelines;
  timelines.reserve(machines.size());
  for (std::size_t i = 0; i < machines.size(); ++i) {
    try {
      timelines.emplace_back(machines[i]);
    } catch (const ConfigError& e) {
      throw ConfigError("machines[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return MachinePark(std::move(timelines), m1, e0);
}

namespace {

double number_at(const json& node, const std::string& where) {
  if (!node.is_number()) throw ParseError(where + ": expected a number");
  return node.get<double>();
}

}  // namespace

MachineConfig parse_machine_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("machine config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("machine config must be a JSON object");
  for (const char* key : {"m", "m1", "e0", "machines"}) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  }
  if (!doc["m"].is_number_integer() || doc["m"].get<long long>() < 1) {
    throw ParseError("m: expected a positive integer");
  }
  if (!doc["m1"].is_number_integer() || doc["m1"].get<long long>() < 1) {
    throw ParseError("m1: expected a positive integer");
  }
  const auto m = doc["m"].get<std::size_t>();

  MachineConfig cfg;
  cfg.m1 = doc["m1"].get<std::size_t>();
  cfg.e0 = number_at(doc["e0"], "e0");
  if (cfg.m1 > m) throw ParseError("m1: must not exceed m");
  if (!(cfg.e0 > 0.0 && cfg.e0 <= 1.0)) throw ParseError("e0: must lie in (0, 1]");

  const json& machines = doc["machines"];
  if (!machines.is_array()) throw ParseError("machines: expected an array");
  if (machines.size() != m) {
    throw ParseError("machines: lists " + std::to_string(machines.size()) +
                     " machines but m = " + std::to_string(m));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::string where = "machines[" + std::to_string(i) + "]";
    const json& list = machines[i];
    if (!list.is_array()) throw ParseError(where + ": expected an array of [breakpoint, ratio]");
    std::vector<Segment> segments;
    double prev = 0.0;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string at = where + "[" + std::to_string(k) + "]";
      const json& pair = list[k];
      if (!pair.is_array() || pair.size() != 2) throw ParseError(at + ": expected [breakpoint, ratio]");
      const double end = number_at(pair[0], at + ".breakpoint");
      const double ratio = number_at(pair[1], at + ".ratio");
      if (!std::isfinite(end) || end <= prev) {
        throw ParseError(at + ".breakpoint: must be strictly increasing and positive");
      }
      if (!(ratio > 0.0 && ratio <= 1.0)) throw ParseError(at + ".ratio: must lie in (0, 1]");
      if (i < cfg.m1 && ratio < cfg.e0) {
        throw ParseError(at + ".ratio: machine " + std::to_string(i + 1) +
                         " is among the first m1 but its ratio is below e0");
      }
      segments.push_back({end, ratio});
      prev = end;
    }
    cfg.machines.push_back(std::move(segments));
  }
  return cfg;
}

MachineConfig load_machine_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open machine config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine_config_text(buf.str());
}

MachinePark parse_machine_config(const std::filesystem::path& path) {
  return load_machine_config(path).to_park();
}

std::string to_json(const MachineConfig& config) {
  json machines = json::array();
  for (const auto& segs : config.machines) {
    json list = json::array();
    for (const auto& s : segs) list.push_back({s.end, s.ratio});
    machines.push_back(std::move(list));
  }
  json doc = {{"m", config.machines.size()},
              {"m1", config.m1},
              {"e0", config.e0},
              {"machines", std::move(machines)}};
  return doc.dump() + "\n";
}

std::optional<double> JobReader::next() {
  if (!(*in_ >> token_)) return std::nullopt;
  double value = 0.0;
  const char* first = token_.data();
  const char* last = first + token_.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  const std::uint64_t pos = position_++;
  if (ec != std::errc() || ptr != last) {
    throw JobStreamError("job " + std::to_string(pos) + ": cannot parse '" + token_ + "'");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw JobStreamError("job " + std::to_string(pos) + ": processing time must be positive");
  }
  return value;
}

std::vector<Job> read_all_jobs(std::istream& in) {
  JobReader reader(in);
  std::vector<Job> jobs;
  while (auto p = reader.next()) jobs.push_back({reader.position() - 1, *p});
  return jobs;
}

std::vector<Job> parse_jobs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_all_jobs(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_schedule_csv(std::ostream& out, const Schedule& schedule) {
  out << "job_id,machine,start,completion\n";
  for (const auto& pl : schedule.placements) {
    out << pl.id << ',' << (pl.machine + 1) << ',' << format_double(pl.start) << ','
        << format_double(pl.completion) << '\n';
  }
  out << "makespan," << format_double(schedule.makespan) << '\n';
}

}  // namespace mtsched
