#include "mtsched/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mtsched {

SchedulingParams derive_params(std::size_t m, std::size_t m1, double e0, double epsilon) {
  if (m < 1 || m1 < 1 || m1 > m) throw ConfigError("need 1 <= m1 <= m");
  if (!(e0 > 0.0 && e0 <= 1.0)) throw ConfigError("e0 must lie in (0, 1]");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be positive");

  const double md = static_cast<double>(m);
  const double m1d = static_cast<double>(m1);
  const double spread = md + m1d - 1.0;

  const double gamma_target = std::ceil(spread / ((epsilon / 2.0) * m1d * e0));
  const double n0 = std::ceil(md * spread / ((epsilon / 4.0) * e0 * m1d));
  if (!(n0 < 9.0e18)) throw ConfigError("N0 does not fit in 64 bits");

  SchedulingParams params;
  params.m = m;
  params.m1 = m1;
  params.e0 = e0;
  params.epsilon = epsilon;
  params.gamma0 = ceil_log2(gamma_target);
  params.n0 = static_cast<std::uint64_t>(n0);
  return params;
}

SchedulingParams with_overrides(SchedulingParams params, std::optional<int> gamma0,
                                std::optional<std::uint64_t> n0) {
  if (gamma0) {
    if (*gamma0 < 0 || *gamma0 > 60) throw ConfigError("gamma0 override must lie in [0, 60]");
    params.gamma0 = *gamma0;
    params.overridden = true;
  }
  if (n0) {
    if (*n0 < 1) throw ConfigError("N0 override must be at least 1");
    params.n0 = *n0;
    params.overridden = true;
  }
  return params;
}

int ceil_log2(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("ceil_log2: value must be positive");
  int exp = 0;
  const double mant = std::frexp(p, &exp);  // p = mant * 2^exp, mant in [0.5, 1)
  return mant == 0.5 ? exp - 1 : exp;
}

int group_index(double p, int q0) {
  const int a = ceil_log2(p);
  return a <= q0 ? -1 : a - q0 - 1;
}

int q0_for_pmax(double p_max, int gamma0) { return ceil_log2(p_max) - gamma0 - 1; }

LargeJobSet large_jobs_from(const LedgerSnapshot& snap, const SchedulingParams& params,
                            double total_load, std::uint64_t job_count, double p_max) {
  LargeJobSet out;
  out.q0 = snap.q0;
  out.total_load = total_load;
  out.job_count = job_count;
  out.p_max = p_max;
  if (job_count == 0) return out;

  const int top = static_cast<int>(snap.groups.size()) - 1;
  for (int k = top; k >= 0; --k) {
    if (snap.groups[static_cast<std::size_t>(k)].count >= params.n0) {
      out.k_l = k;
      break;
    }
  }
  for (int k = out.k_l + 1; k <= top; ++k) {
    const auto& r = snap.groups[static_cast<std::size_t>(k)].retained;
    out.jobs.insert(out.jobs.end(), r.begin(), r.end());
  }
  std::sort(out.jobs.begin(), out.jobs.end(),
            [](const Job& a, const Job& b) { return a.id < b.id; });
  out.band_top = std::ldexp(1.0, snap.q0 + out.k_l + 1);
  return out;
}

LargeJobSet GroupLedger::finalize() const {
  return large_jobs_from(snapshot(), params_, total_load_, job_count_, p_max_seen_);
}

void GroupLedger::account(const Job& job) {
  if (!(job.p > 0.0) || !std::isfinite(job.p)) {
    throw DomainError("job " + std::to_string(job.id) + " has a nonpositive processing time");
  }
  ++job_count_;
  total_load_ += job.p;
  p_max_seen_ = std::max(p_max_seen_, job.p);
}

void GroupLedger::record_peaks() {
  peak_retained_ = std::max(peak_retained_, retained_);
  peak_records_ = std::max(peak_records_, group_records());
}

void GroupLedger::add_to_band(GroupTriple& group, const Job& job, bool retain) {
  ++group.count;
  group.load += job.p;
  if (group.count >= params_.n0) {
    drop_retained(group);
  } else if (retain) {
    group.retained.push_back(job);
    ++retained_;
  }
}

void GroupLedger::drop_retained(GroupTriple& group) {
  retained_ -= group.retained.size();
  std::vector<Job>().swap(group.retained);
}

// ---------------------------------------------------------------------------

KnownPmaxLedger::KnownPmaxLedger(const SchedulingParams& params, double p_max)
    : GroupLedger(params),
      p_max_(p_max),
      q0_(q0_for_pmax(p_max, params.gamma0)),
      groups_(static_cast<std::size_t>(params.gamma0) + 2) {
  record_peaks();
}

void KnownPmaxLedger::ingest(const Job& job) {
  if (job.p > p_max_) {
    throw ContractError("job " + std::to_string(job.id) + " exceeds the given p_max");
  }
  account(job);
  const int k = group_index(job.p, q0_);
  auto& g = groups_[static_cast<std::size_t>(k + 1)];
  if (k == -1) {
    ++g.count;
    g.load += job.p;
  } else {
    add_to_band(g, job, true);
  }
  record_peaks();
}

LedgerSnapshot KnownPmaxLedger::snapshot() const {
  LedgerSnapshot snap;
  snap.q0 = q0_;
  snap.low_count = groups_[0].count;
  snap.low_load = groups_[0].load;
  snap.groups.assign(groups_.begin() + 1, groups_.end());
  return snap;
}

// ---------------------------------------------------------------------------

EstimatedPmaxLedger::EstimatedPmaxLedger(const SchedulingParams& params, double p_max_estimate,
                                         double alpha)
    : GroupLedger(params), p_max_estimate_(p_max_estimate), alpha_(alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 1");
  if (!(p_max_estimate > 0.0) || !std::isfinite(p_max_estimate)) {
    throw ConfigError("p_max estimate must be positive");
  }
  q0_estimate_ = q0_for_pmax(p_max_estimate, params.gamma0);
  extra_ = ceil_log2(alpha);
  pruned_q0_ = std::numeric_limits<int>::min();
  groups_.resize(static_cast<std::size_t>(params.gamma0 + 2 + extra_));
  record_peaks();
}

int EstimatedPmaxLedger::group_index_of(double p) const {
  const int a = ceil_log2(p);
  if (a <= q0_estimate_ - extra_) return -1 - extra_;
  return a - q0_estimate_ - 1;
}

// Bands whose top is at or below 2^q0 can never become large again.
void EstimatedPmaxLedger::prune_below(int q0) {
  if (q0 <= pruned_q0_) return;
  pruned_q0_ = q0;
  for (int k = -extra_; k <= params_.gamma0; ++k) {
    if (q0_estimate_ + k + 1 > q0) break;
    auto& g = groups_[static_cast<std::size_t>(k + 1 + extra_)];
    if (!g.retained.empty()) drop_retained(g);
  }
}

void EstimatedPmaxLedger::ingest(const Job& job) {
  if (job.p > p_max_estimate_) {
    throw EstimateViolation("job " + std::to_string(job.id) + " exceeds the p_max estimate");
  }
  account(job);
  prune_below(q0_for_pmax(p_max_seen_, params_.gamma0));

  const int k = group_index_of(job.p);
  auto& g = groups_[static_cast<std::size_t>(k + 1 + extra_)];
  if (k == -1 - extra_) {
    ++g.count;
    g.load += job.p;
  } else {
    add_to_band(g, job, q0_estimate_ + k + 1 > pruned_q0_);
  }
  record_peaks();
}

LedgerSnapshot EstimatedPmaxLedger::snapshot_at(int q0) const {
  if (q0 < q0_estimate_ - extra_) {
    throw EstimateViolation("p_max estimate exceeds alpha times the observed p_max");
  }
  LedgerSnapshot snap;
  snap.q0 = q0;
  snap.groups.resize(static_cast<std::size_t>(params_.gamma0) + 1);
  for (int k = -1 - extra_; k <= params_.gamma0; ++k) {
    const auto& g = groups_[static_cast<std::size_t>(k + 1 + extra_)];
    const int top_exp = k == -1 - extra_ ? q0_estimate_ - extra_ : q0_estimate_ + k + 1;
    const int final_k = top_exp - q0 - 1;
    if (final_k <= -1) {
      snap.low_count += g.count;
      snap.low_load += g.load;
    } else if (g.count > 0) {
      snap.groups.at(static_cast<std::size_t>(final_k)) = g;
    }
  }
  return snap;
}

LedgerSnapshot EstimatedPmaxLedger::snapshot() const {
  if (job_count_ == 0) {
    LedgerSnapshot snap;
    snap.groups.resize(static_cast<std::size_t>(params_.gamma0) + 1);
    return snap;
  }
  return snapshot_at(q0_for_pmax(p_max_seen_, params_.gamma0));
}

// ---------------------------------------------------------------------------

void UnknownPmaxLedger::ingest(const Job& job) {
  account(job);
  const int a = ceil_log2(job.p);
  const int gamma0 = params_.gamma0;

  if (!started_ || a > q0_ + gamma0 + 1) {
    const int q0_new = a - gamma0 - 1;
    // Fold every band with key <= 2^{q0_new} into the low bucket.
    auto end = tree_.upper_bound(q0_new);
    for (auto it = tree_.begin(); it != end; ++it) {
      low_count_ += it->second.count;
      low_load_ += it->second.load;
      retained_ -= it->second.retained.size();
    }
    tree_.erase(tree_.begin(), end);
    q0_ = q0_new;
    started_ = true;
    add_to_band(tree_[a], job, true);
  } else if (a <= q0_) {
    ++low_count_;
    low_load_ += job.p;
  } else {
    add_to_band(tree_[a], job, true);
  }
  record_peaks();
}

LedgerSnapshot UnknownPmaxLedger::snapshot() const {
  LedgerSnapshot snap;
  snap.q0 = q0_;
  snap.low_count = low_count_;
  snap.low_load = low_load_;
  snap.groups.resize(static_cast<std::size_t>(params_.gamma0) + 1);
  for (const auto& [exp, g] : tree_) {
    snap.groups.at(static_cast<std::size_t>(exp - q0_ - 1)) = g;
  }
  return snap;
}

}  // namespace mtsched
