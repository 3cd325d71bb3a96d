#ifndef OMNISCIO_PARTITION_HPP
#define OMNISCIO_PARTITION_HPP

#include "omniscio/error.hpp"
#include "omniscio/subset.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace omniscio {

/// Ordered blocks C_1..C_k of a set partition of the terminals.
/// Canonical form orders blocks by their smallest member.
struct Partition {
  std::vector<SubsetMask> blocks;

  int k() const { return static_cast<int>(blocks.size()); }

  /// Blocks nonempty, pairwise disjoint, union = {1..m}.
  bool covers(int m) const {
    SubsetMask::Bits seen = 0;
    for (const auto& b : blocks) {
      if (b.m() != m || b.is_empty() || (b.bits() & seen) != 0) return false;
      seen |= b.bits();
    }
    return seen == SubsetMask::full(m).bits();
  }

  /// Member of P_k(A): a covering partition into 2 <= k <= |A| blocks, each meeting A.
  bool admissible(SubsetMask active) const {
    if (!covers(active.m())) return false;
    if (k() < 2 || k() > active.size()) return false;
    return std::all_of(blocks.begin(), blocks.end(),
                       [&](SubsetMask b) { return b.intersects(active); });
  }

  Partition canonical() const {
    Partition p = *this;
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](SubsetMask a, SubsetMask b) { return a.first() < b.first(); });
    return p;
  }

  static Partition singletons(int m) {
    Partition p;
    for (int j = 1; j <= m; ++j) p.blocks.push_back(SubsetMask::singleton(j, m));
    return p;
  }

  /// "{1,4}|{2,5}|{3,6}"
  std::string to_string() const {
    std::string out;
    for (const auto& b : blocks) {
      if (!out.empty()) out += '|';
      out += b.to_string();
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
};

}  // namespace omniscio

#endif  // OMNISCIO_PARTITION_HPP
