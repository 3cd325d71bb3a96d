#ifndef OMNISCIO_CO_SK_HPP
#define OMNISCIO_CO_SK_HPP

// Smallest communication-for-omniscience rate and secret-key capacity.
//
//   R_CO(A) = min { Σ_j R_j : Σ_{j∈B} R_j >= h(B) for all B ∈ B(A) }
//   C_SK(A) = h(M) - R_CO(A)
//
// with B(A) = { B : ∅ ≠ B ⊊ M, B ⊉ A }, the Slepian-Wolf constraints.

#include "omniscio/error.hpp"
#include "omniscio/lp_exact.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/source_model.hpp"
#include "omniscio/subset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace omniscio {

using RateVector = RationalVector;

/// B(A) in increasing mask order. Stores masks only, so one family can be
/// priced under several oracles.
struct ConstraintFamily {
  int m = 0;
  SubsetMask active;
  std::vector<SubsetMask> members;

  std::size_t size() const { return members.size(); }

  bool contains(SubsetMask b) const { return b.m() == m && in_constraint_family(b, active); }

  /// 2^m - 2^(m-|A|) - 1
  static std::size_t expected_size(int m, int active_size) {
    return (std::size_t{1} << m) - (std::size_t{1} << (m - active_size)) - 1;
  }

  ConstraintSystem system(const EntropyOracle& oracle) const {
    if (oracle.m() != m) throw InputError("oracle and constraint family disagree on m");
    ConstraintSystem sys;
    sys.m = m;
    sys.rows = members;
    sys.b.reserve(members.size());
    for (const auto& b : members) sys.b.push_back(oracle.h(b));
    sys.c.assign(m, Rational(1));
    return sys;
  }
};

inline ConstraintFamily build_family(int m, SubsetMask active) {
  if (active.m() != m) throw InputError("active set is over the wrong terminal count");
  if (active.size() < 2) throw InputError("the active set needs at least two terminals");
  ConstraintFamily fam{m, active, {}};
  const auto size = SubsetMask::universe_size(m);
  for (SubsetMask::Bits bits = 1; bits + 1 < size; ++bits) {
    SubsetMask b(bits, m);
    if (!b.contains(active)) fam.members.push_back(b);
  }
  require_contract(fam.size() == ConstraintFamily::expected_size(m, active.size()),
                   "constraint family has the wrong size");
  return fam;
}

/// Σ_{j∈B} R_j - h(B): >= 0 satisfied, = 0 tight, > 0 slack.
inline Rational sw_gap(const RateVector& rates, SubsetMask b, const EntropyOracle& oracle,
                       const ConstraintFamily& family) {
  if (!family.contains(b)) throw InputError(b.to_string() + " is not a Slepian-Wolf constraint of this family");
  if (static_cast<int>(rates.size()) != family.m) throw InputError("rate vector has the wrong length");
  Rational sum = 0;
  for (int j : b.elements()) sum += rates[j - 1];
  return sum - oracle.h(b);
}

struct RegionMembership {
  bool contained = true;
  std::optional<SubsetMask> first_violated;  // smallest violated mask
};

inline RegionMembership region_contains(const RateVector& rates, const ConstraintFamily& family,
                                        const EntropyOracle& oracle) {
  for (const auto& b : family.members)
    if (sw_gap(rates, b, oracle, family) < 0) return {false, b};
  return {};
}

struct CapacityReport {
  SubsetMask active;
  Rational h_full;   // h(M) = H(X_M)
  Rational r_co;
  Rational c_sk;
  RateVector rates;  // vertex optimum
  RationalVector dual;
  std::vector<SubsetMask> tight_masks;
  UniquenessCertificate uniqueness;
  ConstraintFamily family;
  ConstraintSystem system;
  LpSolution solution;
};

inline CapacityReport r_co(const EntropyOracle& oracle, SubsetMask active) {
  CapacityReport rep;
  rep.active = active;
  rep.family = build_family(oracle.m(), active);
  rep.system = rep.family.system(oracle);
  rep.solution = solve(rep.system);
  rep.h_full = oracle.h(oracle.full());
  rep.r_co = rep.solution.objective;
  rep.c_sk = rep.h_full - rep.r_co;
  rep.rates = rep.solution.x;
  rep.dual = rep.solution.y;
  for (std::size_t i : rep.solution.tight) rep.tight_masks.push_back(rep.system.rows[i]);
  rep.uniqueness = uniqueness_test(rep.system, rep.solution);
  return rep;
}

}  // namespace omniscio

#endif  // OMNISCIO_CO_SK_HPP
