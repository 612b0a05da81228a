#include "twosided/group_table.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "realization.hpp"
#include "twosided/errors.hpp"

namespace twosided {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

/// Open-addressing set of element ids keyed by their state vectors, which
/// live in a shared arena.
class StateIndex {
public:
  StateIndex(const std::vector<std::int32_t> &arena, int width, std::uint64_t expected)
      : arena_(arena), width_(width) {
    std::uint64_t cap = 16;
    while (cap < 2 * expected)
      cap <<= 1;
    slots_.assign(cap, kUnset);
    mask_ = cap - 1;
  }

  /// Returns the id holding `state`, or kUnset after reserving the slot for
  /// `candidate`.
  std::uint32_t find_or_insert(std::span<const std::int32_t> state, std::uint32_t candidate) {
    std::uint64_t pos = hash(state) & mask_;
    while (true) {
      const std::uint32_t id = slots_[pos];
      if (id == kUnset) {
        slots_[pos] = candidate;
        return kUnset;
      }
      if (std::equal(state.begin(), state.end(),
                     arena_.begin() + static_cast<std::ptrdiff_t>(id) * width_))
        return id;
      pos = (pos + 1) & mask_;
    }
  }

private:
  static std::uint64_t hash(std::span<const std::int32_t> state) {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::int32_t v : state) {
      h ^= static_cast<std::uint32_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
    }
    return h ^ (h >> 31);
  }

  const std::vector<std::int32_t> &arena_;
  int width_;
  std::vector<std::uint32_t> slots_;
  std::uint64_t mask_;
};

} // namespace

GroupTable::GroupTable(CoxeterSystem system, std::vector<std::uint16_t> length,
                       std::vector<std::uint32_t> left_mult,
                       std::vector<std::uint32_t> right_mult, std::vector<GenSet> des_left,
                       std::vector<GenSet> des_right, std::vector<std::uint32_t> inverse,
                       ElementId longest)
    : system_(std::move(system)), length_(std::move(length)), left_mult_(std::move(left_mult)),
      right_mult_(std::move(right_mult)), des_left_(std::move(des_left)),
      des_right_(std::move(des_right)), inverse_(std::move(inverse)), longest_(longest) {
  validate();
}

void GroupTable::validate() const {
  const std::size_t N = length_.size();
  const int n = rank();
  auto fail = [](const std::string &what) { throw InvariantViolation("group table: " + what); };
  if (N == 0)
    fail("empty");
  if (left_mult_.size() != N * n || right_mult_.size() != N * n || des_left_.size() != N ||
      des_right_.size() != N || inverse_.size() != N)
    fail("array sizes disagree");
  if (longest_.value >= N)
    fail("longest element out of range");
  if (length_[0] != 0 || !des_left_[0].empty() || !des_right_[0].empty() || inverse_[0] != 0)
    fail("id 0 is not the identity");

  const GenSet full = GenSet::full(n);
  for (std::size_t w = 0; w < N; ++w) {
    if (w > 0 && length_[w] < length_[w - 1])
      fail("ids are not sorted by length");
    if (inverse_[w] >= N || inverse_[inverse_[w]] != w)
      fail("inverse is not an involution");
    if (!des_left_[w].subset_of(full) || !des_right_[w].subset_of(full))
      fail("descent set outside S");
    for (int s = 0; s < n; ++s) {
      const std::uint32_t r = right_mult_[w * n + s];
      const std::uint32_t l = left_mult_[w * n + s];
      if (r >= N || l >= N || r == w || l == w)
        fail("multiplication by a generator is out of range or fixes an element");
      if (right_mult_[static_cast<std::size_t>(r) * n + s] != w ||
          left_mult_[static_cast<std::size_t>(l) * n + s] != w)
        fail("generators are not involutions");
      const int dr = static_cast<int>(length_[r]) - length_[w];
      const int dl = static_cast<int>(length_[l]) - length_[w];
      if ((dr != 1 && dr != -1) || (dl != 1 && dl != -1))
        fail("multiplication by a generator does not change length by one");
      if (des_right_[w].contains(s) != (dr < 0) || des_left_[w].contains(s) != (dl < 0))
        fail("descent sets disagree with lengths");
    }
    if (des_left_[w] != des_right_[inverse_[w]])
      fail("Des_L(w) != Des_R(w^-1)");
  }
  if (des_right_[longest_.value] != full || length_[longest_.value] != length_[N - 1])
    fail("longest element does not have full descents and maximal length");
}

bool GroupTable::operator==(const GroupTable &other) const {
  return system_.matrix() == other.system_.matrix() && length_ == other.length_ &&
         left_mult_ == other.left_mult_ && right_mult_ == other.right_mult_ &&
         des_left_ == other.des_left_ && des_right_ == other.des_right_ &&
         inverse_ == other.inverse_ && longest_ == other.longest_;
}

GroupTable build_group(const CoxeterSystem &system, std::uint64_t budget) {
  const std::uint64_t expected = system.order();
  if (expected > budget)
    throw CapacityExceeded(system.label() + " has " + std::to_string(expected) +
                           " elements, over the budget of " + std::to_string(budget));
  if (expected >= kUnset)
    throw CapacityExceeded(system.label() + " is too large for 32-bit element ids");

  const int n = system.rank();
  const detail::Realization real(system);
  const int width = real.width();

  // state(w) = w^{-1} . rho, so right multiplication w -> ws is the left
  // action of s on states.
  std::vector<std::int32_t> arena;
  arena.reserve(expected * width);
  const auto rho = real.initial_state();
  arena.insert(arena.end(), rho.begin(), rho.end());

  std::vector<std::uint16_t> length{0};
  std::vector<std::uint32_t> parent{0};
  std::vector<std::uint8_t> last_letter{0};
  std::vector<std::uint32_t> right(expected * n, kUnset);
  length.reserve(expected);
  parent.reserve(expected);
  last_letter.reserve(expected);

  StateIndex index(arena, width, expected);
  index.find_or_insert(rho, 0);
  std::vector<std::int32_t> next(width);

  for (std::uint32_t w = 0; w < length.size(); ++w) {
    for (int s = 0; s < n; ++s) {
      if (right[static_cast<std::size_t>(w) * n + s] != kUnset)
        continue;
      real.apply(std::span<const std::int32_t>(arena.data() + static_cast<std::size_t>(w) * width,
                                               width),
                 s, next);
      const auto candidate = static_cast<std::uint32_t>(length.size());
      std::uint32_t found = index.find_or_insert(next, candidate);
      if (found == kUnset) {
        if (candidate >= expected)
          throw InvariantViolation("enumeration of " + system.label() +
                                   " exceeded the expected order " + std::to_string(expected));
        found = candidate;
        arena.insert(arena.end(), next.begin(), next.end());
        length.push_back(static_cast<std::uint16_t>(length[w] + 1));
        parent.push_back(w);
        last_letter.push_back(static_cast<std::uint8_t>(s));
      }
      right[static_cast<std::size_t>(w) * n + s] = found;
      right[static_cast<std::size_t>(found) * n + s] = w;
    }
  }
  if (length.size() != expected)
    throw InvariantViolation("enumerated " + std::to_string(length.size()) + " elements of " +
                             system.label() + ", expected " + std::to_string(expected));
  arena.clear();
  arena.shrink_to_fit();

  const std::size_t N = length.size();
  // w = p * a  =>  s * w = (s * p) * a
  std::vector<std::uint32_t> left(N * n);
  for (int s = 0; s < n; ++s)
    left[s] = right[s];
  for (std::size_t w = 1; w < N; ++w) {
    const std::size_t p = parent[w];
    const int a = last_letter[w];
    for (int s = 0; s < n; ++s)
      left[w * n + s] = right[static_cast<std::size_t>(left[p * n + s]) * n + a];
  }
  // w = p * a  =>  w^{-1} = a * p^{-1}
  std::vector<std::uint32_t> inverse(N);
  inverse[0] = 0;
  for (std::size_t w = 1; w < N; ++w)
    inverse[w] = left[static_cast<std::size_t>(inverse[parent[w]]) * n + last_letter[w]];

  std::vector<GenSet> des_left(N), des_right(N);
  for (std::size_t w = 0; w < N; ++w) {
    std::uint32_t dl = 0, dr = 0;
    for (int s = 0; s < n; ++s) {
      if (length[left[w * n + s]] < length[w])
        dl |= 1u << s;
      if (length[right[w * n + s]] < length[w])
        dr |= 1u << s;
    }
    des_left[w] = GenSet(dl);
    des_right[w] = GenSet(dr);
  }
  const auto longest = static_cast<std::uint32_t>(N - 1);

  return GroupTable(system, std::move(length), std::move(left), std::move(right),
                    std::move(des_left), std::move(des_right), std::move(inverse),
                    ElementId(longest));
}

GroupTable build_group(std::string_view type_spec, std::uint64_t budget) {
  return build_group(classify_finite(parse_type_spec(type_spec)), budget);
}

bool leq_two_sided(const GroupTable &table, ElementId u, ElementId v) {
  const int lu = table.length(u);
  if (lu > table.length(v))
    return false;
  if (lu == table.length(v))
    return u == v;
  // Walk down from v through left and right descents, never dropping below
  // the length of u.
  std::vector<ElementId> stack{v};
  std::unordered_set<std::uint32_t> seen{v.value};
  while (!stack.empty()) {
    const ElementId x = stack.back();
    stack.pop_back();
    if (x == u)
      return true;
    if (table.length(x) == lu)
      continue;
    auto visit = [&](ElementId y) {
      if (seen.insert(y.value).second)
        stack.push_back(y);
    };
    for (int s : table.des_left(x))
      visit(table.left(x, s));
    for (int s : table.des_right(x))
      visit(table.right(x, s));
  }
  return false;
}

std::vector<ElementId> length_order(const GroupTable &table) {
  std::vector<ElementId> order(table.order());
  for (std::uint32_t i = 0; i < table.order(); ++i)
    order[i] = ElementId(i);
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return table.length(a) < table.length(b);
  });
  return order;
}

std::vector<int> reduced_word(const GroupTable &table, ElementId w) {
  std::vector<int> word;
  while (w != kIdentity) {
    const int s = table.des_left(w).first();
    word.push_back(s);
    w = table.left(w, s);
  }
  return word;
}

ElementId element_from_word(const GroupTable &table, std::span<const int> word) {
  ElementId w = kIdentity;
  for (int s : word) {
    if (s < 0 || s >= table.rank())
      throw InvalidArgument("generator index " + std::to_string(s) + " out of range");
    w = table.right(w, s);
  }
  return w;
}

std::string word_string(const GroupTable &table, ElementId w) {
  if (w == kIdentity)
    return "e";
  std::string out;
  for (int s : reduced_word(table, w))
    out += "s" + std::to_string(s + 1);
  return out;
}

} // namespace twosided
