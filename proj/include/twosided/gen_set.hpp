#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>

namespace twosided {

/// Maximum number of simple generators supported by the bitset encoding.
inline constexpr int kMaxRank = 16;

/// A subset of the simple generators {0, ..., n-1}, stored as a bitmask.
class GenSet {
public:
  constexpr GenSet() = default;
  constexpr explicit GenSet(std::uint32_t bits) : bits_(bits) {}
  constexpr GenSet(std::initializer_list<int> gens) {
    for (int s : gens)
      bits_ |= 1u << s;
  }

  static constexpr GenSet full(int rank) {
    return GenSet(rank >= 32 ? ~0u : ((1u << rank) - 1u));
  }
  static constexpr GenSet single(int s) { return GenSet(1u << s); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int s) const { return (bits_ >> s) & 1u; }
  constexpr bool subset_of(GenSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(GenSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  /// Smallest generator in the set; the set must be nonempty.
  constexpr int first() const {
    assert(bits_ != 0);
    return std::countr_zero(bits_);
  }

  constexpr GenSet with(int s) const { return GenSet(bits_ | (1u << s)); }
  constexpr GenSet without(int s) const { return GenSet(bits_ & ~(1u << s)); }
  constexpr GenSet complement(int rank) const {
    return GenSet(full(rank).bits_ & ~bits_);
  }

  constexpr GenSet operator|(GenSet o) const { return GenSet(bits_ | o.bits_); }
  constexpr GenSet operator&(GenSet o) const { return GenSet(bits_ & o.bits_); }
  constexpr GenSet operator-(GenSet o) const { return GenSet(bits_ & ~o.bits_); }
  constexpr auto operator<=>(const GenSet &) const = default;

  /// Iterates generator indices in increasing order.
  class iterator {
  public:
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator &operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr bool operator==(const iterator &) const = default;

  private:
    std::uint32_t rest_;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  /// Subscript notation used in labels, e.g. {0,1} -> "12"; "" for the empty set.
  std::string subscripts() const {
    std::string out;
    for (int s : *this) {
      if (s >= 9)
        out += '(' + std::to_string(s + 1) + ')';
      else
        out += static_cast<char>('1' + s);
    }
    return out;
  }

private:
  std::uint32_t bits_ = 0;
};

/// Calls fn(sub) for every subset of `set`, including the empty set and `set`.
template <typename Fn> void for_each_subset(GenSet set, Fn &&fn) {
  const std::uint32_t mask = set.bits();
  std::uint32_t sub = 0;
  while (true) {
    fn(GenSet(sub));
    if (sub == mask)
      break;
    sub = (sub - mask) & mask;
  }
}

} // namespace twosided

template <> struct std::hash<twosided::GenSet> {
  std::size_t operator()(twosided::GenSet g) const noexcept {
    return std::hash<std::uint32_t>{}(g.bits());
  }
};
