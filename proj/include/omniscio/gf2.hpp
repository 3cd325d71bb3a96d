#ifndef OMNISCIO_GF2_HPP
#define OMNISCIO_GF2_HPP

#include "omniscio/error.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace omniscio {

/// Base-bit capacity of a linear source: four machine words.
inline constexpr int kMaxBaseBits = 256;

/// Coefficient vector over GF(2). Bit i is the coefficient of base bit Y_{i+1}.
class Gf2Vector {
 public:
  static constexpr int kWords = kMaxBaseBits / 64;

  Gf2Vector() = default;

  /// Parses a bit string whose first character is the coefficient of Y_1.
  static Gf2Vector parse(std::string_view text, int n) {
    if (static_cast<int>(text.size()) != n)
      throw InputError("coefficient string \"" + std::string(text) + "\" has length " +
                       std::to_string(text.size()) + ", expected " + std::to_string(n));
    Gf2Vector v;
    for (int i = 0; i < n; ++i) {
      if (text[i] == '1')
        v.set(i);
      else if (text[i] != '0')
        throw InputError("coefficient string \"" + std::string(text) + "\" is not binary");
    }
    return v;
  }

  static Gf2Vector unit(int i) {
    Gf2Vector v;
    v.set(i);
    return v;
  }

  void set(int i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(int i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  bool is_zero() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Index of the highest set bit, -1 for the zero vector.
  int highest() const {
    for (int w = kWords - 1; w >= 0; --w)
      if (words_[w] != 0) return w * 64 + 63 - std::countl_zero(words_[w]);
    return -1;
  }

  Gf2Vector& operator^=(const Gf2Vector& other) {
    for (int w = 0; w < kWords; ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  /// Inner product over GF(2).
  bool dot(const Gf2Vector& other) const {
    int parity = 0;
    for (int w = 0; w < kWords; ++w) parity ^= std::popcount(words_[w] & other.words_[w]) & 1;
    return parity != 0;
  }

  std::string to_string(int n) const {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

/// Incremental echelon basis; rows kept in decreasing order of their
/// leading bit, each leading bit distinct.
class Gf2Basis {
 public:
  /// Returns true when the vector was independent of the basis so far.
  bool insert(Gf2Vector v) {
    for (const auto& [pivot, row] : rows_)
      if (v.test(pivot)) v ^= row;
    const int top = v.highest();
    if (top < 0) return false;
    auto it = rows_.begin();
    while (it != rows_.end() && it->first > top) ++it;
    rows_.insert(it, {top, v});
    return true;
  }

  /// True when v lies in the span of the inserted vectors.
  bool spans(Gf2Vector v) const {
    for (const auto& [pivot, row] : rows_)
      if (v.test(pivot)) v ^= row;
    return v.is_zero();
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<std::pair<int, Gf2Vector>> rows_;
};

inline int gf2_rank(std::span<const Gf2Vector> rows) {
  Gf2Basis basis;
  for (const auto& r : rows) basis.insert(r);
  return basis.rank();
}

}  // namespace omniscio

#endif  // OMNISCIO_GF2_HPP
