#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "twosided/coxeter.hpp"
#include "twosided/gen_set.hpp"

namespace twosided {

/// Dense index of a group element inside a GroupTable.  The identity is 0.
struct ElementId {
  std::uint32_t value = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::uint32_t v) : value(v) {}
  constexpr auto operator<=>(const ElementId &) const = default;
};

inline constexpr ElementId kIdentity{0};

/// Default element budget for build_group.
inline constexpr std::uint64_t kDefaultElementBudget = 10'000'000;

/// A finite Coxeter group enumerated into flat tables.  Elements are numbered
/// in breadth-first order from the identity, so lengths are nondecreasing in
/// the id.  Immutable after construction.
class GroupTable {
public:
  /// Assembles a table from raw arrays (used by deserialization) and checks
  /// every structural invariant; throws InvariantViolation on failure.
  GroupTable(CoxeterSystem system, std::vector<std::uint16_t> length,
             std::vector<std::uint32_t> left_mult, std::vector<std::uint32_t> right_mult,
             std::vector<GenSet> des_left, std::vector<GenSet> des_right,
             std::vector<std::uint32_t> inverse, ElementId longest);

  const CoxeterSystem &system() const { return system_; }
  int rank() const { return system_.rank(); }
  std::uint32_t order() const { return static_cast<std::uint32_t>(length_.size()); }
  GenSet generators() const { return GenSet::full(rank()); }

  int length(ElementId w) const { return length_[w.value]; }
  /// s * w
  ElementId left(ElementId w, int s) const {
    return ElementId(left_mult_[static_cast<std::size_t>(w.value) * rank() + s]);
  }
  /// w * s
  ElementId right(ElementId w, int s) const {
    return ElementId(right_mult_[static_cast<std::size_t>(w.value) * rank() + s]);
  }
  GenSet des_left(ElementId w) const { return des_left_[w.value]; }
  GenSet des_right(ElementId w) const { return des_right_[w.value]; }
  GenSet asc_left(ElementId w) const { return des_left_[w.value].complement(rank()); }
  GenSet asc_right(ElementId w) const { return des_right_[w.value].complement(rank()); }
  ElementId inverse(ElementId w) const { return ElementId(inverse_[w.value]); }
  ElementId longest() const { return longest_; }
  int max_length() const { return length_[longest_.value]; }

  std::span<const std::uint16_t> lengths() const { return length_; }
  std::span<const std::uint32_t> left_table() const { return left_mult_; }
  std::span<const std::uint32_t> right_table() const { return right_mult_; }
  std::span<const GenSet> left_descents() const { return des_left_; }
  std::span<const GenSet> right_descents() const { return des_right_; }
  std::span<const std::uint32_t> inverses() const { return inverse_; }

  bool operator==(const GroupTable &other) const;

private:
  void validate() const;

  CoxeterSystem system_;
  std::vector<std::uint16_t> length_;
  std::vector<std::uint32_t> left_mult_;
  std::vector<std::uint32_t> right_mult_;
  std::vector<GenSet> des_left_;
  std::vector<GenSet> des_right_;
  std::vector<std::uint32_t> inverse_;
  ElementId longest_;
};

/// Enumerates the group by breadth-first search over an exact realization and
/// returns its table.  Throws CapacityExceeded if |W| > budget.
GroupTable build_group(const CoxeterSystem &system,
                       std::uint64_t budget = kDefaultElementBudget);

/// Convenience: parse, classify and build.
GroupTable build_group(std::string_view type_spec,
                       std::uint64_t budget = kDefaultElementBudget);

inline GenSet descents_left(const GroupTable &table, ElementId w) { return table.des_left(w); }
inline GenSet descents_right(const GroupTable &table, ElementId w) { return table.des_right(w); }

/// u <=_LR v in the two-sided weak order.
bool leq_two_sided(const GroupTable &table, ElementId u, ElementId v);

/// All ids sorted by length, ties broken by id.  A linear extension of <=_LR.
std::vector<ElementId> length_order(const GroupTable &table);

/// Lexicographically first reduced word (0-based generator indices).
std::vector<int> reduced_word(const GroupTable &table, ElementId w);

/// Product s_{word[0]} s_{word[1]} ... ; the word need not be reduced.
ElementId element_from_word(const GroupTable &table, std::span<const int> word);
inline ElementId element_from_word(const GroupTable &table, std::initializer_list<int> word) {
  return element_from_word(table, std::span<const int>(word.begin(), word.size()));
}

/// "e" or e.g. "s1s2s1".
std::string word_string(const GroupTable &table, ElementId w);

} // namespace twosided

template <> struct std::hash<twosided::ElementId> {
  std::size_t operator()(twosided::ElementId w) const noexcept {
    return std::hash<std::uint32_t>{}(w.value);
  }
};
