#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace omniscio;

namespace {

EntropyOracle table_oracle() { return EntropyOracle::from_vector(builtins::cardinality_table_vector()); }

EntropyOracle shared_bit(int m) {
  LinearGF2Source src{m, 1, {}};
  for (int j = 0; j < m; ++j) src.rows.push_back({Gf2Vector::parse("1", 1)});
  return EntropyOracle::from_linear(src);
}

}  // namespace

TEST(CheckBound, CardinalityTableIsLoose) {
  const auto v = check_bound(table_oracle(), builtins::helper_example_active());
  EXPECT_FALSE(v.tight);
  EXPECT_EQ(*v.gap, Rational(1, 4));
  EXPECT_FALSE(v.witness.has_value());
}

TEST(CheckBound, AllActiveIsTight) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int m = 2 + static_cast<int>(seed % 4);
    const auto o = EntropyOracle::from_linear(random_linear_source(m, 5, 2, seed));
    const auto v = check_bound(o, o.full());
    EXPECT_TRUE(v.tight) << "seed " << seed;
    EXPECT_EQ(*v.gap, 0);
    ASSERT_TRUE(v.witness.has_value());
  }
}

TEST(PartitionSearch, SharedBit) {
  const auto v = witness_by_partition_search(shared_bit(3), SubsetMask::full(3));
  ASSERT_TRUE(v.tight);
  EXPECT_EQ(v.witness->partition.k(), 2);
  EXPECT_EQ(v.witness->rates, (RateVector{0, 0, 0}));
}

TEST(PartitionSearch, TwoTerminals) {
  const auto o = EntropyOracle::from_linear(random_linear_source(2, 4, 2, 5));
  const auto v = witness_by_partition_search(o, o.full());
  ASSERT_TRUE(v.tight);
  EXPECT_EQ(v.witness->partition.to_string(), "{1}|{2}");
  EXPECT_EQ(v.witness->rates, (RateVector{o.h(SubsetMask::singleton(1, 2)), o.h(SubsetMask::singleton(2, 2))}));
}

TEST(PartitionSearch, NoWitnessForEitherHelperExample) {
  const auto t = witness_by_partition_search(table_oracle(), builtins::helper_example_active());
  EXPECT_FALSE(t.tight);
  EXPECT_EQ(t.partitions_tried, 51u);
  const auto ce = make_counterexample();
  EXPECT_FALSE(witness_by_partition_search(EntropyOracle::from_linear(ce.source), ce.active).tight);
}

TEST(PartitionSearch, AgreesWithDirectCheck) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int m = 3 + static_cast<int>(seed % 2);
    const auto o = EntropyOracle::from_linear(random_linear_source(m, 4, 1 + seed % 2, seed));
    const auto active = SubsetMask::of({1, 2}, m);
    EXPECT_EQ(check_bound(o, active).tight, witness_by_partition_search(o, active).tight) << "seed " << seed;
  }
}

TEST(Closure, SharedBitDisjointPair) {
  const auto v = verify_closure(shared_bit(3), SubsetMask::full(3), {0, 0, 0}, SubsetMask::of({1}, 3),
                                SubsetMask::of({2}, 3));
  EXPECT_TRUE(v.preconditions_met);
  EXPECT_EQ(v.gap_union, 0);
  EXPECT_FALSE(v.gap_intersection.has_value());
  EXPECT_TRUE(v.holds());
}

TEST(Closure, HoldsForTightPairsOfRandomSources) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int m = 3 + static_cast<int>(seed % 3);
    const auto o = EntropyOracle::from_linear(random_linear_source(m, 4, 2, seed));
    const auto rep = r_co(o, o.full());
    for (const auto& b1 : rep.tight_masks)
      for (const auto& b2 : rep.tight_masks) {
        if (!rep.family.contains(b1 | b2)) continue;
        const auto v = verify_closure(o, o.full(), rep.rates, b1, b2);
        EXPECT_TRUE(v.preconditions_met);
        EXPECT_TRUE(v.holds()) << b1.to_string() << " " << b2.to_string();
        ++checked;
      }
  }
  EXPECT_GT(checked, 0);
}

TEST(Closure, CardinalityTableReportsFailure) {
  // {1,2,4} and {1,2,5} are tight at the optimum but their intersection {1,2} is not.
  const auto v = verify_closure(table_oracle(), builtins::helper_example_active(), builtins::helper_example_rates(),
                                SubsetMask::of({1, 2, 4}, 6), SubsetMask::of({1, 2, 5}, 6));
  EXPECT_TRUE(v.preconditions_met);
  EXPECT_FALSE(v.holds());
  ASSERT_TRUE(v.gap_intersection.has_value());
  EXPECT_EQ(*v.gap_intersection, Rational(1, 2));
}

TEST(Closure, ReportsBrokenPreconditions) {
  const auto o = table_oracle();
  const auto v = verify_closure(o, builtins::helper_example_active(), builtins::helper_example_rates(),
                                SubsetMask::of({4, 5, 6}, 6), SubsetMask::of({1, 2, 3}, 6));
  EXPECT_FALSE(v.preconditions_met);
  EXPECT_GE(v.precondition_failures.size(), 2u);
}

TEST(Construct, TwoTerminals) {
  const auto o = EntropyOracle::from_linear(random_linear_source(2, 3, 2, 11));
  const auto rep = r_co(o, o.full());
  const auto cp = construct_partition_from_dual(rep.solution, rep.family, o);
  EXPECT_EQ(cp.partition.to_string(), "{1}|{2}");
}

TEST(Construct, SunflowerAttainsCore) {
  const auto o = EntropyOracle::from_linear(make_sunflower(3, 1, 1));
  const auto rep = r_co(o, o.full());
  const auto cp = construct_partition_from_dual(rep.solution, rep.family, o);
  EXPECT_EQ(partition_dependence(o, cp.partition).value, 1);
  EXPECT_EQ(rep.c_sk, 1);
}

TEST(Construct, SharedBitWithSingletonSupport) {
  // All h = 0 on proper subsets: y = 1 on {1},{2},{3} is an optimal dual.
  const auto o = shared_bit(3);
  const auto rep = r_co(o, o.full());
  LpSolution sol = rep.solution;
  sol.y.assign(rep.family.size(), Rational(0));
  for (std::size_t i = 0; i < rep.family.size(); ++i)
    if (rep.family.members[i].size() == 1) sol.y[i] = 1;
  const auto cp = construct_partition_from_dual(sol, rep.family, o);
  EXPECT_EQ(cp.partition.to_string(), "{1}|{2}|{3}");
  EXPECT_EQ(cp.tight_system.t(), 3u);
  EXPECT_EQ(partition_dependence(o, cp.partition).value, 1);
}

TEST(Construct, RejectsHelperFamilies) {
  const auto ce = make_counterexample();
  const auto o = EntropyOracle::from_linear(ce.source);
  const auto rep = r_co(o, ce.active);
  EXPECT_THROW(construct_partition_from_dual(rep.solution, rep.family, o), InputError);
}

TEST(Construct, FailsLoudlyOnThinSupport) {
  const auto o = shared_bit(3);
  const auto rep = r_co(o, o.full());
  LpSolution sol = rep.solution;
  sol.y.assign(rep.family.size(), Rational(0));
  sol.y[0] = 1;
  EXPECT_THROW(construct_partition_from_dual(sol, rep.family, o), ContractError);
}
