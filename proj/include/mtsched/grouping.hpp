#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mtsched/errors.hpp"

namespace mtsched {

using JobId = std::uint64_t;

struct Job {
  JobId id;
  double p;

  bool operator==(const Job&) const = default;
};

struct SchedulingParams {
  std::size_t m = 1;
  std::size_t m1 = 1;
  double e0 = 1.0;
  double epsilon = 1.0;
  int gamma0 = 0;
  std::uint64_t n0 = 1;
  // Set when gamma0 or n0 came from configuration instead of the formulas;
  // the (1+eps) guarantee is then not claimed.
  bool overridden = false;
};

// gamma0: smallest integer with 2^gamma0 >= ceil((m+m1-1) / ((eps/2) m1 e0)).
// N0 = ceil(m (m+m1-1) / ((eps/4) e0 m1)).
// epsilon >= 1 is accepted; callers decide whether to warn.
SchedulingParams derive_params(std::size_t m, std::size_t m1, double e0, double epsilon);

SchedulingParams with_overrides(SchedulingParams params, std::optional<int> gamma0,
                                std::optional<std::uint64_t> n0);

// Smallest integer a with 2^a >= p, read off the binary representation.
int ceil_log2(double p);

// -1 when p <= 2^q0, otherwise ceil(log2 p) - q0 - 1.
int group_index(double p, int q0);

// q0 such that p_max lies in (2^{q0+gamma0}, 2^{q0+gamma0+1}].
int q0_for_pmax(double p_max, int gamma0);

struct GroupTriple {
  std::uint64_t count = 0;
  double load = 0.0;
  std::vector<Job> retained;

  bool operator==(const GroupTriple&) const = default;
};

// Canonical view of a ledger: groups k = 0..gamma0 relative to q0, with every
// lower band folded into the low bucket. All three regimes can be compared
// through this.
struct LedgerSnapshot {
  int q0 = 0;
  std::uint64_t low_count = 0;
  double low_load = 0.0;
  std::vector<GroupTriple> groups;

  bool operator==(const LedgerSnapshot&) const = default;
};

struct LargeJobSet {
  int k_l = -1;
  int q0 = 0;
  std::vector<Job> jobs;  // ascending id
  double total_load = 0.0;
  // 2^{q0+k_L+1}; zero for an empty stream.
  double band_top = 0.0;
  std::uint64_t job_count = 0;
  double p_max = 0.0;
};

// Computes k_L, JS and band_top from a canonical snapshot.
LargeJobSet large_jobs_from(const LedgerSnapshot& snap, const SchedulingParams& params,
                            double total_load, std::uint64_t job_count, double p_max);

// Single-writer streaming summary of a job stream. Retained lists follow the
// saturation rule: a band keeps its jobs while its count is below N0 and
// drops them for good once the count reaches N0.
class GroupLedger {
 public:
  explicit GroupLedger(const SchedulingParams& params) : params_(params) {}
  virtual ~GroupLedger() = default;

  virtual void ingest(const Job& job) = 0;
  virtual LedgerSnapshot snapshot() const = 0;
  virtual std::size_t group_records() const = 0;

  LargeJobSet finalize() const;

  const SchedulingParams& params() const { return params_; }
  double total_load() const { return total_load_; }
  std::uint64_t job_count() const { return job_count_; }
  double p_max_seen() const { return p_max_seen_; }
  std::size_t retained_count() const { return retained_; }
  std::size_t peak_retained() const { return peak_retained_; }
  std::size_t peak_group_records() const { return peak_records_; }

 protected:
  void account(const Job& job);
  void record_peaks();
  // Adds the job to a band group and applies the saturation rule.
  void add_to_band(GroupTriple& group, const Job& job, bool retain);
  void drop_retained(GroupTriple& group);

  SchedulingParams params_;
  double total_load_ = 0.0;
  std::uint64_t job_count_ = 0;
  double p_max_seen_ = 0.0;
  std::size_t retained_ = 0;
  std::size_t peak_retained_ = 0;
  std::size_t peak_records_ = 0;
};

// p_max known up front; gamma0+2 fixed groups.
class KnownPmaxLedger final : public GroupLedger {
 public:
  KnownPmaxLedger(const SchedulingParams& params, double p_max);

  void ingest(const Job& job) override;
  LedgerSnapshot snapshot() const override;
  std::size_t group_records() const override { return groups_.size(); }

  int q0() const { return q0_; }
  const GroupTriple& group(int k) const { return groups_[static_cast<std::size_t>(k + 1)]; }

 private:
  double p_max_;
  int q0_;
  std::vector<GroupTriple> groups_;  // index k+1 for k = -1..gamma0
};

// p_max^E with p_max <= p_max^E <= alpha * p_max. Splits the low bucket into
// ceil(log2 alpha) + 1 pieces so the true q0 can be recovered at the end.
class EstimatedPmaxLedger final : public GroupLedger {
 public:
  EstimatedPmaxLedger(const SchedulingParams& params, double p_max_estimate, double alpha);

  void ingest(const Job& job) override;
  LedgerSnapshot snapshot() const override;
  std::size_t group_records() const override { return groups_.size(); }

  int estimate_q0() const { return q0_estimate_; }
  int extra_groups() const { return extra_; }
  // Lowest index is -1-extra_groups(), highest gamma0.
  int group_index_of(double p) const;
  const GroupTriple& group(int k) const {
    return groups_[static_cast<std::size_t>(k + 1 + extra_)];
  }

 private:
  void prune_below(int q0);
  LedgerSnapshot snapshot_at(int q0) const;

  double p_max_estimate_;
  double alpha_;
  int q0_estimate_;
  int extra_;
  int pruned_q0_;
  std::vector<GroupTriple> groups_;
};

// No knowledge of p_max; bands live in an ordered map keyed by the exponent of
// kappa_k = 2^{q0+k+1} and the low bucket absorbs bands as q0 grows.
class UnknownPmaxLedger final : public GroupLedger {
 public:
  explicit UnknownPmaxLedger(const SchedulingParams& params) : GroupLedger(params) {}

  void ingest(const Job& job) override;
  LedgerSnapshot snapshot() const override;
  std::size_t group_records() const override { return tree_.size() + 1; }

  // Meaningful once a job has been read.
  int q0() const { return q0_; }
  std::size_t key_count() const { return tree_.size(); }
  std::uint64_t low_count() const { return low_count_; }
  double low_load() const { return low_load_; }

 private:
  std::map<int, GroupTriple> tree_;
  std::uint64_t low_count_ = 0;
  double low_load_ = 0.0;
  int q0_ = 0;
  bool started_ = false;
};

}  // namespace mtsched
