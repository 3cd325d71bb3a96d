#ifndef OMNISCIO_SUBSET_HPP
#define OMNISCIO_SUBSET_HPP

#include "omniscio/error.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace omniscio {

inline constexpr int kMaxTerminals = 20;

/// A subset of the terminals {1..m}. Terminal j corresponds to bit j-1.
class SubsetMask {
 public:
  using Bits = std::uint32_t;

  constexpr SubsetMask() = default;

  SubsetMask(Bits bits, int m) : bits_(bits), m_(m) {
    if (m < 1 || m > kMaxTerminals)
      throw InputError("terminal count " + std::to_string(m) + " outside [1, 20]");
    if (bits >= universe_size(m))
      throw InputError("subset mask " + std::to_string(bits) + " exceeds 2^" + std::to_string(m));
  }

  static Bits universe_size(int m) { return Bits{1} << m; }

  static SubsetMask empty(int m) { return {0, m}; }
  static SubsetMask full(int m) { return {universe_size(m) - 1, m}; }

  /// `terminal` is 1-based.
  static SubsetMask singleton(int terminal, int m) {
    if (terminal < 1 || terminal > m)
      throw InputError("terminal " + std::to_string(terminal) + " outside [1, " + std::to_string(m) + "]");
    return {Bits{1} << (terminal - 1), m};
  }

  static SubsetMask of(const std::vector<int>& terminals, int m) {
    SubsetMask s = empty(m);
    for (int t : terminals) s = s | singleton(t, m);
    return s;
  }

  /// Parses "1,3,4" (1-based, any order, duplicates rejected). "" is the empty set.
  static SubsetMask parse(std::string_view text, int m) {
    SubsetMask s = empty(m);
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view token = text.substr(pos, comma - pos);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      require_input(!token.empty(), "empty element in subset \"" + std::string(text) + "\"");
      int value = 0;
      for (char c : token) {
        require_input(c >= '0' && c <= '9', "bad subset element in \"" + std::string(text) + "\"");
        value = value * 10 + (c - '0');
        require_input(value <= kMaxTerminals, "subset element too large in \"" + std::string(text) + "\"");
      }
      SubsetMask one = singleton(value, m);
      require_input(!s.contains(one), "duplicate element in subset \"" + std::string(text) + "\"");
      s = s | one;
      pos = comma + 1;
    }
    return s;
  }

  Bits bits() const { return bits_; }
  int m() const { return m_; }

  int size() const { return std::popcount(bits_); }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == universe_size(m_) - 1; }

  /// 1-based membership test.
  bool has(int terminal) const { return terminal >= 1 && terminal <= m_ && ((bits_ >> (terminal - 1)) & 1U); }
  bool contains(SubsetMask other) const { return (other.bits_ & ~bits_) == 0; }
  bool is_subset_of(SubsetMask other) const { return other.contains(*this); }
  bool intersects(SubsetMask other) const { return (bits_ & other.bits_) != 0; }

  SubsetMask complement() const { return unchecked(~bits_ & (universe_size(m_) - 1), m_); }

  friend SubsetMask operator|(SubsetMask a, SubsetMask b) { return unchecked(a.bits_ | b.bits_, a.m_); }
  friend SubsetMask operator&(SubsetMask a, SubsetMask b) { return unchecked(a.bits_ & b.bits_, a.m_); }
  friend SubsetMask operator-(SubsetMask a, SubsetMask b) { return unchecked(a.bits_ & ~b.bits_, a.m_); }

  friend bool operator==(SubsetMask a, SubsetMask b) { return a.bits_ == b.bits_ && a.m_ == b.m_; }
  friend auto operator<=>(SubsetMask a, SubsetMask b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

  /// Sorted 1-based members.
  std::vector<int> elements() const {
    std::vector<int> out;
    for (int j = 1; j <= m_; ++j)
      if (has(j)) out.push_back(j);
    return out;
  }

  /// Smallest member (1-based), 0 for the empty set.
  int first() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

  /// "1,3,4"
  std::string to_list() const {
    std::string out;
    for (int j : elements()) {
      if (!out.empty()) out += ',';
      out += std::to_string(j);
    }
    return out;
  }

  /// "{1,3,4}"
  std::string to_string() const { return "{" + to_list() + "}"; }

 private:
  static SubsetMask unchecked(Bits bits, int m) {
    SubsetMask s;
    s.bits_ = bits;
    s.m_ = m;
    return s;
  }

  Bits bits_ = 0;
  int m_ = 0;
};

}  // namespace omniscio

#endif  // OMNISCIO_SUBSET_HPP
