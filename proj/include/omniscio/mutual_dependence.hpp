#ifndef OMNISCIO_MUTUAL_DEPENDENCE_HPP
#define OMNISCIO_MUTUAL_DEPENDENCE_HPP

// Mutual dependence of a partition and the upper bound
//
//   I(C_1..C_k) = (Σ_i H(X_{C_i}) - H(X_M)) / (k-1)
//   I(A)        = min over 2 <= k <= |A| and (C_1..C_k) ∈ P_k(A)
//
// P_k(A) holds the k-block set partitions of M whose blocks all meet A.

#include "omniscio/error.hpp"
#include "omniscio/partition.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/source_model.hpp"
#include "omniscio/subset.hpp"

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace omniscio {

inline constexpr int kDefaultEnumerationCap = 12;

/// Enumeration cap for the bound: OMNISCIO_MAX_M when set, else 12.
inline int enumeration_cap() {
  if (const char* env = std::getenv("OMNISCIO_MAX_M")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2 && v <= kMaxTerminals) return static_cast<int>(v);
    throw InputError(std::string("OMNISCIO_MAX_M must be an integer in [2, 20], got \"") + env + "\"");
  }
  return kDefaultEnumerationCap;
}

namespace detail {

// Restricted-growth assignment: terminal j+1 goes to block label[j], a label
// at most one above the largest so far. Branches are cut once the remaining
// active terminals cannot supply every open or still-to-open block.
class PartitionWalker {
 public:
  PartitionWalker(int m, SubsetMask active, int k, const std::function<void(const Partition&)>& emit)
      : m_(m), k_(k), active_(active), emit_(emit), blocks_(k, SubsetMask::empty(m)) {
    remaining_active_.assign(m + 1, 0);
    for (int j = m - 1; j >= 0; --j) remaining_active_[j] = remaining_active_[j + 1] + (active.has(j + 1) ? 1 : 0);
  }

  void run() { place(0, 0, 0); }

 private:
  // `open` blocks exist; `starved` of them do not meet A yet.
  void place(int j, int open, int starved) {
    if (j == m_) {
      if (open == k_ && starved == 0) emit_(Partition{blocks_});
      return;
    }
    if (m_ - j < k_ - open) return;
    if (starved + (k_ - open) > remaining_active_[j]) return;
    const SubsetMask item = SubsetMask::singleton(j + 1, m_);
    const bool is_active = active_.has(j + 1);
    for (int b = 0; b <= open && b < k_; ++b) {
      const bool opening = b == open;
      const bool was_starved = !opening && !blocks_[b].intersects(active_);
      int next_starved = starved;
      if (opening && !is_active) ++next_starved;
      if (was_starved && is_active) --next_starved;
      blocks_[b] = blocks_[b] | item;
      place(j + 1, opening ? open + 1 : open, next_starved);
      blocks_[b] = blocks_[b] - item;
    }
  }

  int m_;
  int k_;
  SubsetMask active_;
  const std::function<void(const Partition&)>& emit_;
  std::vector<SubsetMask> blocks_;
  std::vector<int> remaining_active_;
};

}  // namespace detail

/// Calls `fn` for every member of P_k(A), in restricted-growth (canonical) order.
inline void for_each_partition(int m, SubsetMask active, int k, const std::function<void(const Partition&)>& fn) {
  if (active.m() != m) throw InputError("active set is over the wrong terminal count");
  if (k < 2 || k > active.size())
    throw InputError("block count " + std::to_string(k) + " outside [2, |A|=" + std::to_string(active.size()) + "]");
  detail::PartitionWalker(m, active, k, fn).run();
}

inline std::vector<Partition> enumerate_partitions(int m, SubsetMask active, int k) {
  std::vector<Partition> out;
  for_each_partition(m, active, k, [&](const Partition& p) { out.push_back(p); });
  return out;
}

/// P_k(A) for k = 2..|A|, concatenated in increasing k.
inline std::vector<Partition> enumerate_admissible(int m, SubsetMask active) {
  std::vector<Partition> out;
  for (int k = 2; k <= active.size(); ++k)
    for_each_partition(m, active, k, [&](const Partition& p) { out.push_back(p); });
  return out;
}

struct DependenceValue {
  Partition partition;
  Rational value;             // entropy-sum form
  Rational complement_value;  // h(M) - Σ h(C_i^c) / (k-1)
  bool forms_agree = true;
};

inline DependenceValue partition_dependence(const EntropyOracle& oracle, const Partition& partition) {
  const int m = oracle.m();
  if (!partition.covers(m)) throw InputError("partition " + partition.to_string() + " does not cover the terminals");
  const int k = partition.k();
  if (k < 2) throw InputError("partition needs at least two blocks");
  const SubsetMask full = SubsetMask::full(m);

  Rational sum_joint = 0, sum_complement = 0;
  for (const auto& block : partition.blocks) {
    sum_joint += oracle.joint(block);
    sum_complement += oracle.h(block.complement());
  }
  DependenceValue dv;
  dv.partition = partition;
  dv.value = (sum_joint - oracle.joint(full)) / (k - 1);
  dv.complement_value = oracle.h(full) - sum_complement / (k - 1);
  dv.forms_agree = oracle.equal(dv.value, dv.complement_value);
  require_contract(dv.forms_agree, "entropy-sum and complement forms disagree on " + partition.to_string());
  return dv;
}

struct MutualDependenceResult {
  Rational value;
  std::vector<Partition> minimizers;  // canonical order: increasing k, then restricted-growth order
  std::size_t evaluated = 0;
};

inline MutualDependenceResult mutual_dependence_bound(const EntropyOracle& oracle, SubsetMask active,
                                                      std::optional<int> max_m = std::nullopt) {
  const int m = oracle.m();
  if (active.m() != m) throw InputError("active set is over the wrong terminal count");
  if (active.size() < 2) throw InputError("the active set needs at least two terminals");
  const int cap = max_m.value_or(enumeration_cap());
  if (m > cap)
    throw InputError("partition enumeration capped at m = " + std::to_string(cap) +
                     " (raise with OMNISCIO_MAX_M)");

  std::vector<DependenceValue> values;
  for (int k = 2; k <= active.size(); ++k)
    for_each_partition(m, active, k, [&](const Partition& p) { values.push_back(partition_dependence(oracle, p)); });
  require_contract(!values.empty(), "no admissible partition");

  MutualDependenceResult res;
  res.evaluated = values.size();
  res.value = values.front().value;
  for (const auto& v : values)
    if (v.value < res.value) res.value = v.value;
  for (const auto& v : values)
    if (oracle.equal(v.value, res.value)) res.minimizers.push_back(v.partition);
  return res;
}

}  // namespace omniscio

#endif  // OMNISCIO_MUTUAL_DEPENDENCE_HPP
