#ifndef OMNISCIO_BUILTINS_HPP
#define OMNISCIO_BUILTINS_HPP

#include "omniscio/rational.hpp"
#include "omniscio/source_model.hpp"
#include "omniscio/subset.hpp"

#include <array>
#include <vector>

namespace omniscio::builtins {

/// Conditional entropy of the six-terminal helper example as a function of
/// |B| only, with h(M) = 4. This table is not a valid entropy function
/// (it is not supermodular); it is kept verbatim for reproduction.
inline Rational cardinality_h(int size) {
  static constexpr std::array<int, 7> table = {0, 0, 0, 1, 1, 2, 4};
  return table.at(static_cast<std::size_t>(size));
}

/// Joint entropies H(X_S) = h(M) - h(S^c) for the cardinality table above.
inline EntropyVector cardinality_table_vector() {
  constexpr int m = 6;
  EntropyVector vec{m, std::vector<Rational>(SubsetMask::universe_size(m))};
  for (SubsetMask::Bits bits = 0; bits < vec.values.size(); ++bits) {
    SubsetMask s(bits, m);
    vec.values[bits] = cardinality_h(m) - cardinality_h(s.complement().size());
  }
  return vec;
}

inline SubsetMask helper_example_active() { return SubsetMask::of({1, 2, 3}, 6); }

/// Rows of the tight constraints at the optimum of the cardinality table.
inline std::vector<SubsetMask> helper_example_tight_rows() {
  return {SubsetMask::of({1, 3, 4}, 6),       SubsetMask::of({2, 3, 5}, 6),
          SubsetMask::of({1, 2, 6}, 6),       SubsetMask::of({1, 2, 4, 5, 6}, 6),
          SubsetMask::of({1, 3, 4, 5, 6}, 6), SubsetMask::of({2, 3, 4, 5, 6}, 6)};
}

inline RationalVector helper_example_rates() {
  const Rational q(1, 4), h(1, 2);
  return {q, q, q, h, h, h};
}

}  // namespace omniscio::builtins

#endif  // OMNISCIO_BUILTINS_HPP
