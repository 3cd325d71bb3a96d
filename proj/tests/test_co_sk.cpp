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

TEST(ConstraintFamily, Sizes) {
  EXPECT_EQ(build_family(6, SubsetMask::of({1, 2, 3}, 6)).size(), 55u);
  const auto two = build_family(2, SubsetMask::full(2));
  EXPECT_EQ(two.members, (std::vector<SubsetMask>{SubsetMask::of({1}, 2), SubsetMask::of({2}, 2)}));
  EXPECT_EQ(build_family(3, SubsetMask::full(3)).size(), 6u);
  for (int m = 2; m <= 8; ++m)
    for (int a = 2; a <= m; ++a) {
      std::vector<int> terms;
      for (int j = 1; j <= a; ++j) terms.push_back(j);
      EXPECT_EQ(build_family(m, SubsetMask::of(terms, m)).size(), ConstraintFamily::expected_size(m, a));
    }
  EXPECT_THROW(build_family(3, SubsetMask::of({1}, 3)), InputError);
}

TEST(ConstraintFamily, MembershipExcludesSupersetsOfActive) {
  const auto fam = build_family(6, SubsetMask::of({1, 2, 3}, 6));
  EXPECT_FALSE(fam.contains(SubsetMask::of({1, 2, 3, 4}, 6)));
  EXPECT_FALSE(fam.contains(SubsetMask::full(6)));
  EXPECT_FALSE(fam.contains(SubsetMask::empty(6)));
  EXPECT_TRUE(fam.contains(SubsetMask::of({1, 2, 4, 5, 6}, 6)));
}

TEST(SwGap, PaperRates) {
  const auto o = table_oracle();
  const auto fam = build_family(6, builtins::helper_example_active());
  const auto x = builtins::helper_example_rates();
  EXPECT_EQ(sw_gap(x, SubsetMask::of({1, 3, 4}, 6), o, fam), 0);
  EXPECT_EQ(sw_gap(x, SubsetMask::of({4, 5, 6}, 6), o, fam), Rational(1, 2));
  EXPECT_THROW(sw_gap(x, SubsetMask::of({1, 2, 3}, 6), o, fam), InputError);
  const RateVector zero(6, Rational(0));
  const auto go = EntropyOracle::from_linear(make_counterexample().source);
  EXPECT_EQ(sw_gap(zero, SubsetMask::of({1, 2, 4}, 6), go, fam), 0);
}

TEST(RegionContains, FeasibilityAndFirstViolation) {
  const auto o = table_oracle();
  const auto fam = build_family(6, builtins::helper_example_active());
  EXPECT_TRUE(region_contains(builtins::helper_example_rates(), fam, o).contained);
  const auto zero = region_contains(RateVector(6, Rational(0)), fam, o);
  ASSERT_FALSE(zero.contained);
  // First mask in increasing order with h > 0.
  std::optional<SubsetMask> expected;
  for (const auto& b : fam.members)
    if (o.h(b) > 0) {
      expected = b;
      break;
    }
  EXPECT_EQ(zero.first_violated, expected);
  EXPECT_EQ(*zero.first_violated, SubsetMask::of({1, 2, 4}, 6));
  EXPECT_TRUE(region_contains(RateVector(6, o.h(o.full())), fam, o).contained);
}

TEST(Capacity, CardinalityTable) {
  const auto rep = r_co(table_oracle(), builtins::helper_example_active());
  EXPECT_EQ(rep.r_co, Rational(9, 4));
  EXPECT_EQ(rep.c_sk, Rational(7, 4));
  EXPECT_EQ(rep.rates, builtins::helper_example_rates());
  EXPECT_EQ(rep.uniqueness.verdict, UniquenessVerdict::kUnique);
  EXPECT_TRUE(region_contains(rep.rates, rep.family, table_oracle()).contained);
}

TEST(Capacity, GenerativeCounterexample) {
  const auto ce = make_counterexample();
  const auto rep = r_co(EntropyOracle::from_linear(ce.source), ce.active);
  EXPECT_EQ(rep.h_full, 3);
  EXPECT_EQ(rep.r_co, Rational(9, 4));
  EXPECT_EQ(rep.c_sk, Rational(3, 4));
  EXPECT_EQ(rep.tight_masks, builtins::helper_example_tight_rows());
  for (std::size_t i = 0; i < rep.dual.size(); ++i) {
    const auto& rows = builtins::helper_example_tight_rows();
    const bool in_six = std::find(rows.begin(), rows.end(), rep.family.members[i]) != rows.end();
    EXPECT_EQ(rep.dual[i], in_six ? Rational(1, 4) : Rational(0));
  }
}

TEST(Capacity, SharedBitThreeTerminals) {
  const auto rep = r_co(shared_bit(3), SubsetMask::full(3));
  EXPECT_EQ(rep.r_co, 0);
  EXPECT_EQ(rep.c_sk, 1);
}

TEST(Capacity, TwoTerminalsIsMutualInformation) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto o = EntropyOracle::from_linear(random_linear_source(2, 4, 1 + seed % 3, seed));
    const auto rep = r_co(o, o.full());
    const auto s1 = SubsetMask::singleton(1, 2), s2 = SubsetMask::singleton(2, 2);
    EXPECT_EQ(rep.r_co, o.h(s1) + o.h(s2));
    EXPECT_EQ(rep.c_sk, o.joint(s1) + o.joint(s2) - o.joint(o.full()));
  }
}

TEST(Capacity, OptimumIsFeasibleAndMatchesDual) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int m = 3 + static_cast<int>(seed % 3);
    const auto o = EntropyOracle::from_linear(random_linear_source(m, 5, 2, seed));
    const auto active = seed % 2 ? o.full() : SubsetMask::of({1, 2}, m);
    const auto rep = r_co(o, active);
    EXPECT_TRUE(region_contains(rep.rates, rep.family, o).contained);
    Rational yb = 0;
    for (std::size_t i = 0; i < rep.dual.size(); ++i) yb += rep.dual[i] * rep.system.b[i];
    EXPECT_EQ(yb, rep.r_co);
    EXPECT_GE(rep.c_sk, 0);
  }
}
