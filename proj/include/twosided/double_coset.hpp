#pragma once

#include <cstdint>
#include <vector>

#include "twosided/gen_set.hpp"
#include "twosided/group_table.hpp"

namespace twosided {

/// Canonical form (I, u, J) of the double coset W_I u W_J: u is its unique
/// minimal-length member, i.e. Des_L(u) misses I and Des_R(u) misses J.
struct DoubleCoset {
  GenSet left;
  ElementId rep;
  GenSet right;

  auto operator<=>(const DoubleCoset &) const = default;
};

/// The minimal element of W_I w W_J.  Strips left descents in I and right
/// descents in J, alternating left and right sweeps in generator order.
ElementId minimize(const GroupTable &table, GenSet I, ElementId w, GenSet J);

inline DoubleCoset canonical_coset(const GroupTable &table, GenSet I, ElementId w, GenSet J) {
  return {I, minimize(table, I, w, J), J};
}

/// True iff w is the minimal representative of W_I w W_J.
inline bool is_minimal(const GroupTable &table, GenSet I, ElementId w, GenSet J) {
  return !table.des_left(w).intersects(I) && !table.des_right(w).intersects(J);
}

/// Members of W_I u W_J, sorted by id.  Requires is_minimal(I, u, J).
std::vector<ElementId> coset_elements(const GroupTable &table, GenSet I, ElementId u, GenSet J);

/// |{w : Des_L(w) misses I, Des_R(w) misses J}|.
std::uint64_t count_minimal_by_descents(const GroupTable &table, GenSet I, GenSet J);

/// Number of distinct values of minimize(I, w, J) over all w.
std::uint64_t count_minimal_by_reduction(const GroupTable &table, GenSet I, GenSet J);

/// |^I W^J|, the number of double cosets W_I \ W / W_J.  Computes both counts
/// above and throws MethodMismatch if they differ.
std::uint64_t count_double_quotient(const GroupTable &table, GenSet I, GenSet J);

} // namespace twosided
