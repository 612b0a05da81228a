#include "twosided/complex.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "twosided/errors.hpp"

namespace twosided {

namespace {

/// Packs the bits of `value` selected by `mask` into the low bits.
std::uint32_t compress(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  for (std::uint32_t m = mask; m != 0; m &= m - 1, ++k)
    if (value & (m & -m))
      out |= 1u << k;
  return out;
}

/// Inverse of compress: spreads the low bits of `value` over `mask`.
std::uint32_t expand(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  int k = 0;
  for (std::uint32_t m = mask; m != 0; m &= m - 1, ++k)
    if ((value >> k) & 1u)
      out |= m & -m;
  return out;
}

template <typename Fn> void for_sampled(const XiComplex &complex, FaceSample sample, Fn &&fn) {
  if (sample.count == 0 || sample.count >= complex.size()) {
    for (std::uint64_t i = 0; i < complex.size(); ++i)
      fn(complex.face_at(i));
    return;
  }
  std::mt19937_64 rng(sample.seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, complex.size() - 1);
  for (std::uint64_t k = 0; k < sample.count; ++k)
    fn(complex.face_at(pick(rng)));
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i)
    out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

} // namespace

std::string face_label(const GroupTable &table, const Face &face) {
  return "(" + face.left.subscripts() + "|" + word_string(table, face.w) + "|" +
         face.right.subscripts() + ")";
}

XiComplex::XiComplex(const GroupTable &table, std::uint64_t budget) : table_(&table) {
  offset_.resize(static_cast<std::size_t>(table.order()) + 1);
  offset_[0] = 0;
  for (std::uint32_t w = 0; w < table.order(); ++w) {
    const ElementId id(w);
    const int free = table.asc_left(id).size() + table.asc_right(id).size();
    offset_[w + 1] = offset_[w] + (std::uint64_t{1} << free);
    if (offset_[w + 1] > budget)
      throw CapacityExceeded("two-sided complex of " + table.system().label() +
                             " exceeds the face budget of " + std::to_string(budget));
  }
}

std::uint64_t XiComplex::index_of(const Face &face) const {
  const GroupTable &t = *table_;
  if (face.w.value >= t.order() || !is_minimal(t, face.left, face.w, face.right) ||
      !face.left.subset_of(t.generators()) || !face.right.subset_of(t.generators()))
    throw InvalidArgument("not a face of the two-sided complex");
  const GenSet al = t.asc_left(face.w);
  const GenSet ar = t.asc_right(face.w);
  const std::uint64_t local =
      compress(face.left.bits(), al.bits()) |
      (static_cast<std::uint64_t>(compress(face.right.bits(), ar.bits())) << al.size());
  return offset_[face.w.value] + local;
}

Face XiComplex::face_at(std::uint64_t index) const {
  if (index >= size())
    throw InvalidArgument("face index out of range");
  const auto it = std::upper_bound(offset_.begin(), offset_.end(), index);
  const auto w = static_cast<std::uint32_t>(it - offset_.begin() - 1);
  const ElementId id(w);
  const std::uint64_t local = index - offset_[w];
  const GenSet al = table_->asc_left(id);
  const GenSet ar = table_->asc_right(id);
  const auto low = static_cast<std::uint32_t>(local & ((std::uint64_t{1} << al.size()) - 1));
  const auto high = static_cast<std::uint32_t>(local >> al.size());
  return {GenSet(expand(low, al.bits())), id, GenSet(expand(high, ar.bits()))};
}

std::vector<std::uint64_t> XiComplex::count_by_rank() const {
  const int n = rank();
  std::vector<std::uint64_t> counts(2 * n + 1, 0);
  for (std::uint32_t w = 0; w < table_->order(); ++w) {
    const int a = table_->asc_left(ElementId(w)).size();
    const int b = table_->asc_right(ElementId(w)).size();
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j)
        counts[2 * n - i - j] += binomial(a, i) * binomial(b, j);
  }
  return counts;
}

XiComplex all_faces(const GroupTable &table, std::uint64_t budget) {
  return XiComplex(table, budget);
}

bool leq(const GroupTable &table, const Face &f, const Face &g) {
  return g.left.subset_of(f.left) && g.right.subset_of(f.right) &&
         minimize(table, f.left, g.w, f.right) == f.w;
}

std::vector<Face> lower_interval(const GroupTable &table, const Face &face) {
  const GenSet S = table.generators();
  const GenSet free_left = S - face.left;
  const GenSet free_right = S - face.right;
  const int a = free_left.size();
  const int b = free_right.size();
  std::vector<Face> out;
  out.reserve(std::size_t{1} << (a + b));
  for (std::uint32_t bits = 0; bits < (1u << (a + b)); ++bits) {
    const GenSet I = face.left | GenSet(expand(bits & ((1u << a) - 1), free_left.bits()));
    const GenSet J = face.right | GenSet(expand(bits >> a, free_right.bits()));
    out.push_back({I, minimize(table, I, face.w, J), J});
  }
  return out;
}

FaceColor face_color(int rank, const Face &face) {
  return {face.left.complement(rank), face.right.complement(rank)};
}

Face restriction(const GroupTable &table, ElementId w) {
  return {table.asc_left(w), w, table.asc_right(w)};
}

std::vector<Face> codim1_faces_of_facet(const GroupTable &table, ElementId w) {
  std::vector<Face> out;
  for (int s = 0; s < table.rank(); ++s)
    out.push_back({GenSet::single(s), minimize(table, GenSet::single(s), w, {}), {}});
  for (int s = 0; s < table.rank(); ++s)
    out.push_back({{}, minimize(table, {}, w, GenSet::single(s)), GenSet::single(s)});
  return out;
}

ShellingReport verify_shelling(const XiComplex &complex, std::span<const ElementId> order,
                               std::span<const std::size_t> positions) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  const std::size_t N = table.order();
  if (order.size() != N)
    throw NotAFacetPermutation("facet order has " + std::to_string(order.size()) +
                               " entries, expected " + std::to_string(N));
  std::vector<std::size_t> pos(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    if (order[k].value >= N || pos[order[k].value] != N)
      throw NotAFacetPermutation("facet order repeats or leaves the group");
    pos[order[k].value] = k;
  }

  std::vector<std::size_t> todo(positions.begin(), positions.end());
  if (todo.empty())
    for (std::size_t k = 0; k < N; ++k)
      todo.push_back(k);
  std::sort(todo.begin(), todo.end());

  ShellingReport report;
  for (std::size_t k : todo) {
    if (k >= N)
      throw InvalidArgument("shelling position out of range");
    const ElementId w = order[k];
    const Face facet{{}, w, {}};

    // Faces of the boundary of F_w that also lie in an earlier facet: F lies
    // under the facet v exactly when v belongs to the double coset of F.
    std::set<Face> shared;
    for (const Face &f : lower_interval(table, facet)) {
      if (f == facet)
        continue;
      for (ElementId v : coset_elements(table, f.left, f.w, f.right))
        if (pos[v.value] < k) {
          shared.insert(f);
          break;
        }
    }

    std::set<Face> predicted;
    for (int s : table.des_left(w)) {
      const Face g{GenSet::single(s), table.left(w, s), {}};
      for (const Face &f : lower_interval(table, g))
        predicted.insert(f);
    }
    for (int t : table.des_right(w)) {
      const Face g{{}, table.right(w, t), GenSet::single(t)};
      for (const Face &f : lower_interval(table, g))
        predicted.insert(f);
    }
    if (shared != predicted && report.descent_formula) {
      report.descent_formula = false;
      report.first_formula_mismatch = k + 1;
    }

    if (k > 0) {
      std::set<Face> generated;
      for (const Face &f : shared)
        if (f.rank(n) == 2 * n - 1)
          for (const Face &g : lower_interval(table, f))
            generated.insert(g);
      const bool pure = !shared.empty() && generated == shared;
      if (!pure && report.is_shelling) {
        report.is_shelling = false;
        report.first_failure = k + 1;
      }
    }
    ++report.positions_checked;
  }
  return report;
}

CheckResult verify_pseudomanifold(const XiComplex &complex) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  CheckResult result;
  std::vector<std::uint8_t> incidence(complex.size(), 0);
  for (std::uint32_t w = 0; w < table.order(); ++w) {
    for (const Face &g : codim1_faces_of_facet(table, ElementId(w))) {
      auto &c = incidence[complex.index_of(g)];
      if (c < 255)
        ++c;
    }
  }
  for (std::uint64_t i = 0; i < complex.size(); ++i) {
    const Face f = complex.face_at(i);
    if (f.rank(n) != 2 * n - 1)
      continue;
    ++result.checked;
    if (incidence[i] != 2)
      result.fail("face " + face_label(table, f) + " lies in " + std::to_string(incidence[i]) +
                  " facets");
  }
  return result;
}

CheckResult verify_thin(const XiComplex &complex) {
  const GroupTable &table = complex.table();
  const GenSet S = table.generators();
  const int n = table.rank();
  CheckResult result;

  // A "move" adds one generator to the left (index < n) or right set.
  auto add = [n](Face f, int move) {
    if (move < n)
      f.left = f.left.with(move);
    else
      f.right = f.right.with(move - n);
    return f;
  };
  for (std::uint64_t idx = 0; idx < complex.size() && result.ok; ++idx) {
    const Face g = complex.face_at(idx);
    std::vector<int> moves;
    for (int s : S - g.left)
      moves.push_back(s);
    for (int s : S - g.right)
      moves.push_back(n + s);
    // One-move faces above g, computed once per face.
    std::vector<Face> up(moves.size());
    for (std::size_t x = 0; x < moves.size(); ++x) {
      up[x] = add(g, moves[x]);
      up[x].w = minimize(table, up[x].left, g.w, up[x].right);
    }
    for (std::size_t x = 0; x < moves.size() && result.ok; ++x) {
      for (std::size_t y = x + 1; y < moves.size(); ++y) {
        const Face &h1 = up[x], &h2 = up[y];
        Face f = add(h1, moves[y]);
        f.w = minimize(table, f.left, g.w, f.right);
        // Any face strictly between f and g has index sets equal to those
        // of h1 or h2, and its representative is then forced by g.
        int size = 2;
        size += minimize(table, f.left, h1.w, f.right) == f.w;
        size += minimize(table, f.left, h2.w, f.right) == f.w;
        ++result.checked;
        if (size != 4) {
          result.fail("interval [" + face_label(table, f) + ", " + face_label(table, g) +
                      "] has " + std::to_string(size) + " elements");
          break;
        }
      }
    }
  }
  if (!result.ok)
    return result;

  CheckResult top = verify_pseudomanifold(complex);
  top.checked += result.checked;
  return top;
}

std::int64_t euler_characteristic(const XiComplex &complex) {
  const auto counts = complex.count_by_rank();
  std::int64_t chi = 0;
  for (std::size_t r = 1; r < counts.size(); ++r)
    chi += ((r - 1) % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(counts[r]);
  return chi;
}

CheckResult verify_boolean_intervals(const XiComplex &complex, FaceSample sample) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  CheckResult result;
  for_sampled(complex, sample, [&](const Face &face) {
    if (!result.ok)
      return;
    ++result.checked;
    const auto below = lower_interval(table, face);
    const std::size_t expected = std::size_t{1} << face.rank(n);
    std::set<Face> distinct(below.begin(), below.end());
    if (below.size() != expected || distinct.size() != expected) {
      result.fail("lower interval of " + face_label(table, face) + " has " +
                  std::to_string(distinct.size()) + " distinct faces, expected " +
                  std::to_string(expected));
      return;
    }
    for (const Face &a : below) {
      if (!is_minimal(table, a.left, a.w, a.right) || !leq(table, a, face)) {
        result.fail(face_label(table, a) + " is not a face below " + face_label(table, face));
        return;
      }
      for (const Face &b : below) {
        const bool by_sets = b.left.subset_of(a.left) && b.right.subset_of(a.right);
        if (leq(table, a, b) != by_sets) {
          result.fail("order below " + face_label(table, face) + " differs from subset order at " +
                      face_label(table, a) + " vs " + face_label(table, b));
          return;
        }
      }
    }
  });
  return result;
}

CheckResult verify_balanced(const XiComplex &complex, FaceSample sample) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  CheckResult result;
  for_sampled(complex, sample, [&](const Face &face) {
    if (!result.ok)
      return;
    ++result.checked;
    std::vector<FaceColor> colors;
    for (const Face &v : lower_interval(table, face))
      if (v.rank(n) == 1)
        colors.push_back(face_color(n, v));
    FaceColor joined{};
    std::set<FaceColor> distinct;
    for (const FaceColor &c : colors) {
      if (c.left.size() + c.right.size() != 1) {
        result.fail("vertex below " + face_label(table, face) + " has a non-singleton color");
        return;
      }
      distinct.insert(c);
      joined.left = joined.left | c.left;
      joined.right = joined.right | c.right;
    }
    if (distinct.size() != colors.size() || joined != face_color(n, face) ||
        static_cast<int>(colors.size()) != face.rank(n))
      result.fail("vertex colors below " + face_label(table, face) +
                  " are not distinct or do not make up its color");
  });
  return result;
}

CheckResult verify_partition(const XiComplex &complex, FaceSample sample) {
  const GroupTable &table = complex.table();
  CheckResult result;
  for_sampled(complex, sample, [&](const Face &face) {
    if (!result.ok)
      return;
    ++result.checked;
    // The facets above face are exactly the members of its double coset;
    // face must lie in [R_v, F_v] for v = face.w and no other member.
    int hits = 0;
    bool own = false;
    for (ElementId v : coset_elements(table, face.left, face.w, face.right)) {
      if (!leq(table, face, Face{{}, v, {}}))
        continue;
      if (leq(table, restriction(table, v), face)) {
        ++hits;
        own = own || v == face.w;
      }
    }
    if (hits != 1 || !own)
      result.fail("face " + face_label(table, face) + " lies in " + std::to_string(hits) +
                  " restriction intervals");
  });
  return result;
}

CheckResult verify_weak_order_monotone(const XiComplex &complex, FaceSample sample) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  CheckResult result;
  // Covers suffice: the face order and the weak order are both transitive.
  for_sampled(complex, sample, [&](const Face &face) {
    if (!result.ok)
      return;
    for (const Face &a : lower_interval(table, face)) {
      if (a.rank(n) + 1 != face.rank(n))
        continue;
      ++result.checked;
      if (!leq_two_sided(table, a.w, face.w)) {
        result.fail(face_label(table, a) + " <= " + face_label(table, face) +
                    " but the representatives are not weakly ordered");
        return;
      }
    }
  });
  return result;
}

SigmaReport coxeter_subcomplex(const XiComplex &complex, std::uint64_t pair_sample,
                               std::uint64_t seed) {
  const GroupTable &table = complex.table();
  const int n = table.rank();
  const GenSet S = table.generators();
  const std::uint32_t N = table.order();
  SigmaReport report;

  const Face base{{}, kIdentity, S};
  for (std::uint64_t i = 0; i < complex.size(); ++i) {
    const Face f = complex.face_at(i);
    if (leq(table, base, f))
      report.ideal.push_back(f);
  }

  // Left cosets w W_J by closure under right multiplication by J.
  const std::uint32_t subsets = 1u << n;
  std::vector<std::vector<std::uint32_t>> label(subsets);
  std::vector<std::uint32_t> coset_count(subsets, 0);
  for (std::uint32_t jb = 0; jb < subsets; ++jb) {
    const GenSet J(jb);
    auto &lab = label[jb];
    lab.assign(N, UINT32_MAX);
    for (std::uint32_t start = 0; start < N; ++start) {
      if (lab[start] != UINT32_MAX)
        continue;
      const std::uint32_t id = coset_count[jb]++;
      std::vector<std::uint32_t> stack{start};
      lab[start] = id;
      while (!stack.empty()) {
        const std::uint32_t x = stack.back();
        stack.pop_back();
        for (int s : J) {
          const std::uint32_t y = table.right(ElementId(x), s).value;
          if (lab[y] == UINT32_MAX) {
            lab[y] = id;
            stack.push_back(y);
          }
        }
      }
    }
    report.coset_faces += coset_count[jb];
  }

  auto &iso = report.isomorphism;
  // Bijection: each ideal face has the form (0, w, J) and the map to the
  // coset w W_J hits every coset exactly once.
  std::vector<std::vector<bool>> hit(subsets);
  for (std::uint32_t jb = 0; jb < subsets; ++jb)
    hit[jb].assign(coset_count[jb], false);
  for (const Face &f : report.ideal) {
    if (!f.left.empty()) {
      iso.fail("ideal contains " + face_label(table, f) + " with nonempty left set");
      return report;
    }
    const std::uint32_t coset = label[f.right.bits()][f.w.value];
    if (hit[f.right.bits()][coset]) {
      iso.fail("two ideal faces map to the coset of " + face_label(table, f));
      return report;
    }
    hit[f.right.bits()][coset] = true;
  }
  if (report.ideal.size() != report.coset_faces) {
    iso.fail("ideal has " + std::to_string(report.ideal.size()) + " faces, coset complex has " +
             std::to_string(report.coset_faces));
    return report;
  }

  // Order: (0,u,J) <= (0,v,K) iff u W_J contains v W_K, i.e. K within J and
  // v lies in u W_J.
  auto sigma_leq = [&](const Face &a, const Face &b) {
    return b.right.subset_of(a.right) &&
           label[a.right.bits()][b.w.value] == label[a.right.bits()][a.w.value];
  };
  auto compare = [&](const Face &a, const Face &b) {
    ++iso.checked;
    if (leq(table, a, b) != sigma_leq(a, b))
      iso.fail("order mismatch between " + face_label(table, a) + " and " +
               face_label(table, b));
  };
  const std::size_t m = report.ideal.size();
  if (pair_sample == 0) {
    for (std::size_t i = 0; i < m && iso.ok; ++i)
      for (std::size_t j = 0; j < m && iso.ok; ++j)
        compare(report.ideal[i], report.ideal[j]);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::uint64_t k = 0; k < pair_sample && iso.ok; ++k) {
      const Face &b = report.ideal[pick(rng)];
      // Half the samples are drawn below b so comparable pairs are exercised.
      if (k % 2 == 0) {
        const auto below = lower_interval(table, b);
        std::uniform_int_distribution<std::size_t> sub(0, below.size() - 1);
        const Face a = below[sub(rng)];
        if (a.left.empty())
          compare(a, b);
        else
          compare(report.ideal[pick(rng)], b);
      } else {
        compare(report.ideal[pick(rng)], b);
      }
    }
  }
  return report;
}

} // namespace twosided
