#ifndef OMNISCIO_TIGHTNESS_HPP
#define OMNISCIO_TIGHTNESS_HPP

// When is C_SK(A) = I(A)?
//
// The bound is tight iff some admissible partition (C_1..C_k) and some
// achievable rate vector R make every block-complement constraint tight,
// SW(R, C_i^c) = 0. Two independent checks are provided: comparing the two
// numbers directly, and searching partitions for such an R with an LP.
// With all terminals active a partition can also be read off any optimal
// dual solution by grouping identical columns of its support rows.

#include "omniscio/co_sk.hpp"
#include "omniscio/error.hpp"
#include "omniscio/lp_exact.hpp"
#include "omniscio/mutual_dependence.hpp"
#include "omniscio/partition.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/source_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace omniscio {

struct TightnessWitness {
  Partition partition;
  RateVector rates;
};

struct TightnessVerdict {
  bool tight = false;
  std::optional<TightnessWitness> witness;
  std::optional<Rational> gap;  // I(A) - C_SK(A)
  std::optional<Rational> c_sk;
  std::optional<Rational> mutual_dependence;
  std::size_t partitions_tried = 0;
};

/// Σ_i SW(R, C_i^c) terms of a candidate witness, each of which must be 0.
inline std::vector<Rational> complement_gaps(const RateVector& rates, const Partition& partition,
                                             const EntropyOracle& oracle, const ConstraintFamily& family) {
  std::vector<Rational> out;
  for (const auto& block : partition.blocks) out.push_back(sw_gap(rates, block.complement(), oracle, family));
  return out;
}

/// Computes C_SK(A) and I(A) separately and compares them.
inline TightnessVerdict check_bound(const EntropyOracle& oracle, SubsetMask active,
                                    std::optional<int> max_m = std::nullopt) {
  const CapacityReport cap = r_co(oracle, active);
  const MutualDependenceResult md = mutual_dependence_bound(oracle, active, max_m);
  TightnessVerdict v;
  v.c_sk = cap.c_sk;
  v.mutual_dependence = md.value;
  v.gap = md.value - cap.c_sk;
  v.partitions_tried = md.evaluated;
  require_contract(oracle.less_equal(0, *v.gap), "mutual dependence below the secret-key capacity: gap " +
                                                     to_string(*v.gap));
  v.tight = oracle.equal(*v.gap, 0);
  if (v.tight) {
    // Every optimum makes the complements of a minimizing partition tight.
    TightnessWitness w{md.minimizers.front(), cap.rates};
    for (const auto& g : complement_gaps(w.rates, w.partition, oracle, cap.family))
      require_contract(oracle.equal(g, 0), "minimizing partition has a slack complement at the optimum");
    v.witness = std::move(w);
  }
  return v;
}

/// For each admissible partition in canonical order, looks for R ∈ R(A) with
/// SW(R, C_i^c) = 0 for all i. The first partition that admits one is the witness.
inline TightnessVerdict witness_by_partition_search(const EntropyOracle& oracle, SubsetMask active,
                                                    std::optional<int> max_m = std::nullopt) {
  const int m = oracle.m();
  const int cap = max_m.value_or(enumeration_cap());
  if (m > cap) throw InputError("partition enumeration capped at m = " + std::to_string(cap));
  const ConstraintFamily family = build_family(m, active);
  const ConstraintSystem sys = family.system(oracle);

  TightnessVerdict v;
  for (int k = 2; k <= active.size() && !v.witness; ++k) {
    for (const auto& p : enumerate_partitions(m, active, k)) {
      ++v.partitions_tried;
      std::vector<SubsetMask> eq_rows;
      RationalVector eq_rhs;
      for (const auto& block : p.blocks) {
        eq_rows.push_back(block.complement());
        eq_rhs.push_back(oracle.h(block.complement()));
      }
      if (auto rates = solve_with_equalities(sys, eq_rows, eq_rhs)) {
        v.witness = TightnessWitness{p, std::move(*rates)};
        break;
      }
    }
  }
  v.tight = v.witness.has_value();
  if (v.tight) v.gap = Rational(0);
  return v;
}

struct ClosureVerdict {
  bool preconditions_met = true;
  std::vector<std::string> precondition_failures;
  Rational gap_b1, gap_b2, gap_union;
  std::optional<Rational> gap_intersection;  // absent when B1 ∩ B2 = ∅
  bool union_tight = false;
  bool intersection_tight = false;  // true for an empty intersection

  bool holds() const { return union_tight && intersection_tight; }
};

/// Given tight constraints B1, B2 at R ∈ R(A) with B1 ∪ B2 ∈ B(A), reports
/// whether B1 ∪ B2 and B1 ∩ B2 are tight too. Preconditions are reported, not asserted.
inline ClosureVerdict verify_closure(const EntropyOracle& oracle, SubsetMask active, const RateVector& rates,
                                     SubsetMask b1, SubsetMask b2) {
  const ConstraintFamily family = build_family(oracle.m(), active);
  ClosureVerdict v;
  auto gap_of = [&](SubsetMask b) {
    Rational sum = 0;
    for (int j : b.elements()) sum += rates[j - 1];
    return sum - oracle.h(b);
  };
  if (static_cast<int>(rates.size()) != oracle.m()) throw InputError("rate vector has the wrong length");
  if (!family.contains(b1 | b2)) {
    v.preconditions_met = false;
    v.precondition_failures.push_back("union " + (b1 | b2).to_string() + " is not in B(A)");
  }
  if (b1.is_empty() || b2.is_empty()) {
    v.preconditions_met = false;
    v.precondition_failures.push_back("B1 and B2 must be nonempty");
  }
  if (auto membership = region_contains(rates, family, oracle); !membership.contained) {
    v.preconditions_met = false;
    v.precondition_failures.push_back("rate vector violates " + membership.first_violated->to_string());
  }
  v.gap_b1 = gap_of(b1);
  v.gap_b2 = gap_of(b2);
  if (!oracle.equal(v.gap_b1, 0)) {
    v.preconditions_met = false;
    v.precondition_failures.push_back("B1 " + b1.to_string() + " is not tight");
  }
  if (!oracle.equal(v.gap_b2, 0)) {
    v.preconditions_met = false;
    v.precondition_failures.push_back("B2 " + b2.to_string() + " is not tight");
  }
  v.gap_union = gap_of(b1 | b2);
  v.union_tight = oracle.equal(v.gap_union, 0);
  if ((b1 & b2).is_empty()) {
    v.intersection_tight = true;
  } else {
    v.gap_intersection = gap_of(b1 & b2);
    v.intersection_tight = oracle.equal(*v.gap_intersection, 0);
  }
  return v;
}

/// Support of an optimal dual: rows with y_i > 0, and the distinct columns
/// of that submatrix (class vectors, one entry per retained row).
struct TightSystem {
  std::vector<std::size_t> retained;
  std::vector<SubsetMask> masks;
  RationalVector entropies;   // b restricted to retained rows
  RationalVector weights;     // y restricted to retained rows
  std::vector<std::vector<bool>> classes;

  std::size_t t() const { return retained.size(); }
};

struct ConstructedPartition {
  Partition partition;
  TightSystem tight_system;
};

/// Builds the optimal partition from a dual solution when every terminal is
/// active: terminals with identical columns in the dual-support rows share a
/// block. Each step of the correctness argument is checked and any failure
/// raises ContractError.
inline ConstructedPartition construct_partition_from_dual(const LpSolution& solution, const ConstraintFamily& family,
                                                          const EntropyOracle& oracle) {
  const int m = family.m;
  if (!family.active.is_full()) throw InputError("the dual construction needs every terminal active");
  if (oracle.m() != m) throw InputError("oracle and constraint family disagree on m");
  if (solution.y.size() != family.size() || static_cast<int>(solution.x.size()) != m)
    throw InputError("solution does not match the constraint family");

  ConstructedPartition out;
  TightSystem& ts = out.tight_system;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (solution.y[i] <= 0) continue;
    ts.retained.push_back(i);
    ts.masks.push_back(family.members[i]);
    ts.entropies.push_back(oracle.h(family.members[i]));
    ts.weights.push_back(solution.y[i]);
  }
  const std::size_t t = ts.t();
  require_contract(t >= 2, "dual support has " + std::to_string(t) + " rows; at least 2 are needed");
  for (const auto& mask : ts.masks)
    require_contract(!mask.is_empty() && !mask.is_full(), "support row " + mask.to_string() + " is all 0 or all 1");

  // Complementary slackness: support rows are tight at x.
  for (std::size_t r = 0; r < t; ++r) {
    Rational sum = 0;
    for (int j : ts.masks[r].elements()) sum += solution.x[j - 1];
    require_contract(sum == ts.entropies[r], "support row " + ts.masks[r].to_string() + " is not tight");
  }

  // Group identical columns.
  auto column = [&](int j) {
    std::vector<bool> col(t);
    for (std::size_t r = 0; r < t; ++r) col[r] = ts.masks[r].has(j);
    return col;
  };
  std::vector<SubsetMask> blocks;
  for (int j = 1; j <= m; ++j) {
    auto col = column(j);
    std::size_t cls = 0;
    while (cls < ts.classes.size() && ts.classes[cls] != col) ++cls;
    if (cls == ts.classes.size()) {
      ts.classes.push_back(std::move(col));
      blocks.push_back(SubsetMask::empty(m));
    }
    blocks[cls] = blocks[cls] | SubsetMask::singleton(j, m);
  }
  out.partition.blocks = blocks;
  const std::size_t k = blocks.size();
  require_contract(k >= 2, "all support columns coincide");
  require_contract(out.partition.admissible(family.active), "constructed partition is not admissible");

  // No class pattern is dominated by another: for i != i' some support row
  // has a 1 in class i and a 0 in class i'. Otherwise y·A would differ
  // between the two columns, contradicting y A = 1.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t ii = 0; ii < k; ++ii) {
      if (i == ii) continue;
      bool separated = false;
      for (std::size_t r = 0; r < t && !separated; ++r) separated = ts.classes[i][r] && !ts.classes[ii][r];
      require_contract(separated, "class " + blocks[ii].to_string() + " dominates class " + blocks[i].to_string());
    }

  // C_i^c is the union of the support rows with a 0 in class i, and it is tight.
  for (std::size_t i = 0; i < k; ++i) {
    SubsetMask unite = SubsetMask::empty(m);
    for (std::size_t r = 0; r < t; ++r)
      if (!ts.classes[i][r]) unite = unite | ts.masks[r];
    const SubsetMask complement = blocks[i].complement();
    require_contract(unite == complement, "union of support rows " + unite.to_string() + " differs from " +
                                              complement.to_string());
    Rational sum = 0;
    for (int j : complement.elements()) sum += solution.x[j - 1];
    require_contract(oracle.equal(sum, oracle.h(complement)), "block complement " + complement.to_string() + " is not tight");
  }
  return out;
}

}  // namespace omniscio

#endif  // OMNISCIO_TIGHTNESS_HPP
