#include "twosided/double_coset.hpp"

#include <algorithm>

#include "twosided/errors.hpp"

namespace twosided {

ElementId minimize(const GroupTable &table, GenSet I, ElementId w, GenSet J) {
  while (true) {
    bool changed = false;
    for (GenSet d = table.des_left(w) & I; !d.empty(); d = table.des_left(w) & I) {
      w = table.left(w, d.first());
      changed = true;
    }
    for (GenSet d = table.des_right(w) & J; !d.empty(); d = table.des_right(w) & J) {
      w = table.right(w, d.first());
      changed = true;
    }
    if (!changed)
      return w;
  }
}

std::vector<ElementId> coset_elements(const GroupTable &table, GenSet I, ElementId u, GenSet J) {
  if (!is_minimal(table, I, u, J))
    throw InvalidArgument("coset_elements needs a minimal representative");
  std::vector<bool> seen(table.order(), false);
  std::vector<ElementId> out{u};
  seen[u.value] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    const ElementId x = out[head];
    auto visit = [&](ElementId y) {
      if (!seen[y.value]) {
        seen[y.value] = true;
        out.push_back(y);
      }
    };
    for (int s : I)
      visit(table.left(x, s));
    for (int s : J)
      visit(table.right(x, s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_minimal_by_descents(const GroupTable &table, GenSet I, GenSet J) {
  const auto dl = table.left_descents();
  const auto dr = table.right_descents();
  std::uint64_t count = 0;
  for (std::size_t w = 0; w < dl.size(); ++w)
    count += !dl[w].intersects(I) && !dr[w].intersects(J);
  return count;
}

std::uint64_t count_minimal_by_reduction(const GroupTable &table, GenSet I, GenSet J) {
  std::vector<bool> hit(table.order(), false);
  std::uint64_t count = 0;
  for (std::uint32_t w = 0; w < table.order(); ++w) {
    const ElementId u = minimize(table, I, ElementId(w), J);
    if (!hit[u.value]) {
      hit[u.value] = true;
      ++count;
    }
  }
  return count;
}

std::uint64_t count_double_quotient(const GroupTable &table, GenSet I, GenSet J) {
  const std::uint64_t a = count_minimal_by_descents(table, I, J);
  const std::uint64_t b = count_minimal_by_reduction(table, I, J);
  if (a != b)
    throw MethodMismatch("double quotient count for I=" + I.subscripts() +
                         " J=" + J.subscripts() + ": descent filter gives " +
                         std::to_string(a) + ", reduction gives " + std::to_string(b));
  return a;
}

} // namespace twosided
