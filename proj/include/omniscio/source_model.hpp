#ifndef OMNISCIO_SOURCE_MODEL_HPP
#define OMNISCIO_SOURCE_MODEL_HPP

// Sources and their exact entropy oracles.
//
// Entropies are in bits. For a source over terminals M = {1..m} the oracle
// precomputes the joint entropy H(X_S) for all 2^m subsets S and answers the
// conditional entropy function h(B) = H(X_B | X_{B^c}) = H(X_M) - H(X_{B^c}).

#include "omniscio/error.hpp"
#include "omniscio/gf2.hpp"
#include "omniscio/partition.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/subset.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

namespace omniscio {

/// Terminal j observes XOR combinations of n iid uniform bits Y_1..Y_n, one
/// per coefficient row.
struct LinearGF2Source {
  int m = 0;
  int n = 0;
  std::vector<std::vector<Gf2Vector>> rows;  // rows[j-1] for terminal j

  void validate() const {
    if (m < 1 || m > kMaxTerminals) throw InputError("linear source: m must lie in [1, 20]");
    if (n < 0 || n > kMaxBaseBits) throw InputError("linear source: base_bits must lie in [0, 256]");
    if (static_cast<int>(rows.size()) != m)
      throw InputError("linear source: expected " + std::to_string(m) + " terminals, got " +
                       std::to_string(rows.size()));
    for (const auto& terminal : rows)
      for (const auto& r : terminal)
        if (r.highest() >= n) throw InputError("linear source: coefficient beyond base_bits");
  }
};

/// Joint pmf over per-terminal alphabets {0..size-1}.
struct TabularSource {
  struct Entry {
    std::vector<int> symbols;
    Rational probability;
  };

  int m = 0;
  std::vector<int> alphabets;
  std::vector<Entry> pmf;

  void validate() const {
    if (m < 1 || m > kMaxTerminals) throw InputError("tabular source: m must lie in [1, 20]");
    if (static_cast<int>(alphabets.size()) != m) throw InputError("tabular source: alphabets must have m entries");
    for (int a : alphabets)
      if (a < 1) throw InputError("tabular source: alphabet sizes must be positive");
    if (pmf.empty()) throw InputError("tabular source: empty pmf");
    Rational total = 0;
    std::set<std::vector<int>> seen;
    for (const auto& e : pmf) {
      if (static_cast<int>(e.symbols.size()) != m) throw InputError("tabular source: symbol tuple of wrong length");
      for (int j = 0; j < m; ++j)
        if (e.symbols[j] < 0 || e.symbols[j] >= alphabets[j])
          throw InputError("tabular source: symbol outside its alphabet");
      if (e.probability < 0) throw InputError("tabular source: negative probability");
      if (!seen.insert(e.symbols).second) throw InputError("tabular source: repeated symbol tuple");
      total += e.probability;
    }
    if (total != 1) throw InputError("tabular source: probabilities sum to " + to_string(total) + ", not 1");
  }
};

/// Raw joint-entropy vector: values[S.bits()] = H(X_S).
struct EntropyVector {
  int m = 0;
  std::vector<Rational> values;

  const Rational& operator[](SubsetMask s) const { return values[s.bits()]; }
};

using Source = std::variant<LinearGF2Source, TabularSource, EntropyVector>;

enum class OracleKind { kLinear, kTabular, kVector };

inline const char* kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::kLinear: return "linear_gf2";
    case OracleKind::kTabular: return "tabular";
    case OracleKind::kVector: return "entropy_vector";
  }
  return "?";
}

/// Default comparison tolerance for tabular (irrational) entropies.
inline Rational default_tabular_tolerance() { return make_rational(1, 1000000000); }

namespace detail {

// Tabular entropies are rounded to multiples of 2^-kTabularScaleBits.
inline constexpr int kTabularScaleBits = 128;

inline Rational tabular_entropy(const TabularSource& src, SubsetMask s) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  std::map<std::vector<int>, Rational> marginal;
  const auto members = s.elements();
  for (const auto& e : src.pmf) {
    std::vector<int> key;
    key.reserve(members.size());
    for (int j : members) key.push_back(e.symbols[j - 1]);
    marginal[key] += e.probability;
  }
  Float acc = 0;
  const Float ln2 = boost::multiprecision::log(Float(2));
  for (const auto& [key, p] : marginal) {
    if (p == 0) continue;
    Float fp = Float(numerator_of(p).str()) / Float(denominator_of(p).str());
    acc -= fp * boost::multiprecision::log(fp) / ln2;
  }
  Float scaled = boost::multiprecision::ldexp(acc, kTabularScaleBits);
  const Integer num = boost::multiprecision::round(scaled).convert_to<Integer>();
  return Rational(num, Integer(1) << kTabularScaleBits);
}

}  // namespace detail

/// Exact map S -> H(X_S), precomputed for every subset. Immutable and cheap to copy.
class EntropyOracle {
 public:
  EntropyOracle() = default;

  static EntropyOracle from_linear(const LinearGF2Source& src) {
    src.validate();
    EntropyOracle o(OracleKind::kLinear, src.m, std::make_shared<const Source>(src));
    const auto size = SubsetMask::universe_size(src.m);
    o.values_.resize(size);
    for (SubsetMask::Bits bits = 0; bits < size; ++bits) {
      Gf2Basis basis;
      for (int j = 0; j < src.m; ++j)
        if ((bits >> j) & 1U)
          for (const auto& r : src.rows[j]) basis.insert(r);
      o.values_[bits] = basis.rank();
    }
    return o;
  }

  /// Tabular entropies are irrational in general; they are carried as
  /// rationals accurate to 2^-128 and compared with `tolerance`.
  static EntropyOracle from_tabular(const TabularSource& src,
                                    const Rational& tolerance = default_tabular_tolerance()) {
    src.validate();
    if (tolerance < Rational(1, Integer(1) << 100))
      throw InputError("tabular tolerance " + to_string(tolerance) + " is below the attainable precision 2^-100");
    EntropyOracle o(OracleKind::kTabular, src.m, std::make_shared<const Source>(src));
    o.exact_ = false;
    o.tolerance_ = tolerance;
    const auto size = SubsetMask::universe_size(src.m);
    o.values_.resize(size);
    for (SubsetMask::Bits bits = 1; bits < size; ++bits)
      o.values_[bits] = detail::tabular_entropy(src, SubsetMask(bits, src.m));
    return o;
  }

  /// Takes the vector as given; validity is a separate question (see check_validity).
  static EntropyOracle from_vector(const EntropyVector& vec) {
    if (vec.m < 1 || vec.m > kMaxTerminals) throw InputError("entropy vector: m must lie in [1, 20]");
    if (vec.values.size() != SubsetMask::universe_size(vec.m))
      throw InputError("entropy vector: expected 2^m values");
    EntropyOracle o(OracleKind::kVector, vec.m, std::make_shared<const Source>(vec));
    o.values_ = vec.values;
    return o;
  }

  static EntropyOracle from_source(const Source& src,
                                   const Rational& tolerance = default_tabular_tolerance()) {
    return std::visit(
        [&](const auto& s) -> EntropyOracle {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, LinearGF2Source>) return from_linear(s);
          else if constexpr (std::is_same_v<T, TabularSource>) return from_tabular(s, tolerance);
          else return from_vector(s);
        },
        src);
  }

  int m() const { return m_; }
  OracleKind kind() const { return kind_; }
  bool exact() const { return exact_; }
  /// Zero for exact oracles.
  const Rational& tolerance() const { return tolerance_; }
  const Source& source() const { return *source_; }
  SubsetMask full() const { return SubsetMask::full(m_); }

  /// H(X_S), no range check.
  const Rational& joint(SubsetMask s) const { return values_[s.bits()]; }

  /// h(B) = H(X_M) - H(X_{B^c}), no range check.
  Rational h(SubsetMask b) const { return values_.back() - values_[b.complement().bits()]; }

  EntropyVector as_vector() const { return {m_, values_}; }

  bool equal(const Rational& a, const Rational& b) const { return approx_equal(a, b, tolerance_); }
  /// a <= b up to the oracle tolerance.
  bool less_equal(const Rational& a, const Rational& b) const { return a <= b + tolerance_; }

 private:
  EntropyOracle(OracleKind kind, int m, std::shared_ptr<const Source> src)
      : kind_(kind), m_(m), source_(std::move(src)) {}

  OracleKind kind_ = OracleKind::kVector;
  int m_ = 0;
  bool exact_ = true;
  Rational tolerance_ = 0;
  std::shared_ptr<const Source> source_;
  std::vector<Rational> values_;
};

inline void check_subset(const EntropyOracle& oracle, SubsetMask s) {
  if (s.m() != oracle.m())
    throw InputError("subset " + s.to_string() + " is over " + std::to_string(s.m()) +
                     " terminals, oracle has " + std::to_string(oracle.m()));
}

/// H(X_S) in bits.
inline Rational joint_entropy(const EntropyOracle& oracle, SubsetMask s) {
  check_subset(oracle, s);
  return oracle.joint(s);
}

/// h(B) = H(X_B | X_{B^c}).
inline Rational cond_entropy_h(const EntropyOracle& oracle, SubsetMask b) {
  check_subset(oracle, b);
  return oracle.h(b);
}

/// H(X_S) of a linear source by enumerating all 2^n base-bit assignments and
/// counting distinct observations. Independent of the rank computation.
inline Rational enumerated_joint_entropy(const LinearGF2Source& src, SubsetMask s) {
  src.validate();
  if (src.n > 24) throw InputError("enumeration limited to 24 base bits");
  std::vector<Gf2Vector> rows;
  for (int j : s.elements())
    for (const auto& r : src.rows[j - 1]) rows.push_back(r);
  std::unordered_set<std::string> outcomes;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << src.n); ++y) {
    Gf2Vector assignment;
    for (int i = 0; i < src.n; ++i)
      if ((y >> i) & 1U) assignment.set(i);
    std::string obs(rows.size(), '0');
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (rows[r].dot(assignment)) obs[r] = '1';
    outcomes.insert(obs);
  }
  // Uniform over a coset image: the count is a power of two.
  const auto count = outcomes.size();
  if (!std::has_single_bit(count)) throw ContractError("linear image size is not a power of two");
  return static_cast<int>(std::countr_zero(count));
}

// --- validity ---------------------------------------------------------------

struct SupermodularityViolation {
  SubsetMask b1, b2;
  Rational lhs;  // h(B1) + h(B2)
  Rational rhs;  // h(B1 ∪ B2) + h(B1 ∩ B2)
  bool within_family = false;  // B1 ∪ B2 ∈ B(A) for the supplied active set
};

struct MonotonicityViolation {
  SubsetMask smaller, larger;  // smaller ⊂ larger but h(smaller) > h(larger)
  Rational h_smaller, h_larger;
};

struct ValidityReport {
  bool normalized = true;  // H(X_∅) = 0
  bool exhaustive_pairs = true;  // false when only local supermodularity conditions were scanned
  std::vector<SupermodularityViolation> supermodularity;
  std::vector<MonotonicityViolation> monotonicity;
  std::size_t supermodularity_count = 0;
  std::size_t monotonicity_count = 0;

  bool valid() const { return normalized && supermodularity_count == 0 && monotonicity_count == 0; }

  /// First violation whose union lies in B(A), else the first violation.
  const SupermodularityViolation* cited_violation() const {
    for (const auto& v : supermodularity)
      if (v.within_family) return &v;
    return supermodularity.empty() ? nullptr : &supermodularity.front();
  }
};

inline constexpr int kExhaustivePairLimit = 10;
inline constexpr std::size_t kStoredViolationLimit = 4096;

/// Membership in B(A): nonempty, proper, and not a superset of A.
inline bool in_constraint_family(SubsetMask b, SubsetMask active) {
  return !b.is_empty() && !b.is_full() && !b.contains(active);
}

/// Scans normalization, monotonicity and supermodularity of h
/// (h(B1) + h(B2) <= h(B1 ∪ B2) + h(B1 ∩ B2)). All unordered pairs are scanned
/// for m <= 10; above that the equivalent local conditions are used.
inline ValidityReport check_validity(const EntropyOracle& oracle,
                                     std::optional<SubsetMask> active = std::nullopt) {
  ValidityReport report;
  const int m = oracle.m();
  const auto size = SubsetMask::universe_size(m);
  report.normalized = oracle.equal(oracle.joint(SubsetMask::empty(m)), 0);

  for (SubsetMask::Bits bits = 0; bits < size; ++bits) {
    SubsetMask larger(bits, m);
    for (int j = 1; j <= m; ++j) {
      if (!larger.has(j)) continue;
      SubsetMask smaller = larger - SubsetMask::singleton(j, m);
      Rational hs = oracle.h(smaller), hl = oracle.h(larger);
      if (!oracle.less_equal(hs, hl)) {
        ++report.monotonicity_count;
        if (report.monotonicity.size() < kStoredViolationLimit)
          report.monotonicity.push_back({smaller, larger, hs, hl});
      }
    }
  }

  auto record = [&](SubsetMask b1, SubsetMask b2) {
    Rational lhs = oracle.h(b1) + oracle.h(b2);
    Rational rhs = oracle.h(b1 | b2) + oracle.h(b1 & b2);
    if (oracle.less_equal(lhs, rhs)) return;
    ++report.supermodularity_count;
    if (report.supermodularity.size() < kStoredViolationLimit) {
      bool within = active.has_value() && in_constraint_family(b1 | b2, *active);
      report.supermodularity.push_back({b1, b2, lhs, rhs, within});
    }
  };

  if (m <= kExhaustivePairLimit) {
    for (SubsetMask::Bits a = 0; a < size; ++a)
      for (SubsetMask::Bits b = a + 1; b < size; ++b) {
        // Comparable pairs satisfy the inequality with equality.
        if ((a & b) == a || (a & b) == b) continue;
        record(SubsetMask(a, m), SubsetMask(b, m));
      }
  } else {
    report.exhaustive_pairs = false;
    for (SubsetMask::Bits bits = 0; bits < size; ++bits) {
      SubsetMask base(bits, m);
      for (int i = 1; i <= m; ++i) {
        if (base.has(i)) continue;
        for (int j = i + 1; j <= m; ++j) {
          if (base.has(j)) continue;
          record(base | SubsetMask::singleton(i, m), base | SubsetMask::singleton(j, m));
        }
      }
    }
  }
  return report;
}

// --- merging ----------------------------------------------------------------

/// Source whose terminal i observes X_{C_i} for the blocks C_i of `partition`.
inline Source merge_terminals(const Source& source, const Partition& partition) {
  const int m = std::visit([](const auto& s) { return s.m; }, source);
  if (!partition.covers(m)) throw InputError("merge_terminals: blocks do not partition the terminals");
  const int k = partition.k();

  if (const auto* lin = std::get_if<LinearGF2Source>(&source)) {
    LinearGF2Source out{k, lin->n, {}};
    for (const auto& block : partition.blocks) {
      std::vector<Gf2Vector> rows;
      for (int j : block.elements())
        rows.insert(rows.end(), lin->rows[j - 1].begin(), lin->rows[j - 1].end());
      out.rows.push_back(std::move(rows));
    }
    return out;
  }
  if (const auto* tab = std::get_if<TabularSource>(&source)) {
    TabularSource out;
    out.m = k;
    for (const auto& block : partition.blocks) {
      long long size = 1;
      for (int j : block.elements()) {
        size *= tab->alphabets[j - 1];
        if (size > (1LL << 30)) throw InputError("merge_terminals: merged alphabet too large");
      }
      out.alphabets.push_back(static_cast<int>(size));
    }
    for (const auto& e : tab->pmf) {
      TabularSource::Entry merged{{}, e.probability};
      for (const auto& block : partition.blocks) {
        // Mixed radix, lowest-numbered member most significant.
        long long code = 0;
        for (int j : block.elements()) code = code * tab->alphabets[j - 1] + e.symbols[j - 1];
        merged.symbols.push_back(static_cast<int>(code));
      }
      out.pmf.push_back(std::move(merged));
    }
    return out;
  }
  const auto& vec = std::get<EntropyVector>(source);
  EntropyVector out{k, std::vector<Rational>(SubsetMask::universe_size(k))};
  for (SubsetMask::Bits bits = 0; bits < out.values.size(); ++bits) {
    SubsetMask::Bits original = 0;
    for (int i = 0; i < k; ++i)
      if ((bits >> i) & 1U) original |= partition.blocks[i].bits();
    out.values[bits] = vec.values[original];
  }
  return out;
}

// --- constructors -----------------------------------------------------------

struct SourceWithActive {
  LinearGF2Source source;
  SubsetMask active;
};

/// Six terminals, each the XOR of a distinct pair of four iid uniform bits;
/// terminals 1, 2, 3 active.
inline SourceWithActive make_counterexample() {
  const char* rows[] = {"1010", "1001", "0011", "0110", "0101", "1100"};
  LinearGF2Source src{6, 4, {}};
  for (const char* r : rows) src.rows.push_back({Gf2Vector::parse(r, 4)});
  return {std::move(src), SubsetMask::of({1, 2, 3}, 6)};
}

/// X_i = (Y, Z_i): a shared core of `core_bits` bits plus `petal_bits` private
/// bits per terminal, all independent.
inline LinearGF2Source make_sunflower(int m, int core_bits, int petal_bits) {
  if (m < 2 || core_bits < 0 || petal_bits < 0) throw InputError("make_sunflower: need m >= 2, c >= 0, p >= 0");
  const int n = core_bits + m * petal_bits;
  if (n > kMaxBaseBits) throw InputError("make_sunflower: too many base bits");
  LinearGF2Source src{m, n, {}};
  for (int i = 0; i < m; ++i) {
    std::vector<Gf2Vector> rows;
    for (int c = 0; c < core_bits; ++c) rows.push_back(Gf2Vector::unit(c));
    for (int p = 0; p < petal_bits; ++p) rows.push_back(Gf2Vector::unit(core_bits + i * petal_bits + p));
    src.rows.push_back(std::move(rows));
  }
  return src;
}

/// Deterministic in `seed`; every row uniform over the nonzero n-bit vectors.
inline LinearGF2Source random_linear_source(int m, int n, int rows_per_terminal, std::uint64_t seed) {
  if (m < 1 || m > kMaxTerminals || n < 1 || n > 63 || rows_per_terminal < 0)
    throw InputError("random_linear_source: parameters out of range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, (std::uint64_t{1} << n) - 1);
  LinearGF2Source src{m, n, {}};
  for (int j = 0; j < m; ++j) {
    std::vector<Gf2Vector> rows;
    for (int r = 0; r < rows_per_terminal; ++r) {
      std::uint64_t bits = pick(rng);
      Gf2Vector v;
      for (int i = 0; i < n; ++i)
        if ((bits >> i) & 1U) v.set(i);
      rows.push_back(v);
    }
    src.rows.push_back(std::move(rows));
  }
  return src;
}

}  // namespace omniscio

#endif  // OMNISCIO_SOURCE_MODEL_HPP
