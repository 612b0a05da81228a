#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "twosided/complex.hpp"
#include "twosided/errors.hpp"

using namespace twosided;

namespace {

ElementId word(const GroupTable &t, std::initializer_list<int> letters) {
  return element_from_word(t, letters);
}

std::set<Face> as_set(const std::vector<Face> &faces) { return {faces.begin(), faces.end()}; }

const GenSet S2{0, 1};

} // namespace

TEST_CASE("face counts") {
  const GroupTable a2 = build_group("A2");
  const XiComplex xi = all_faces(a2);
  CHECK(xi.size() == 33);
  CHECK(xi.count_by_rank() == std::vector<std::uint64_t>{1, 4, 10, 12, 6});
  CHECK(xi.facet_count() == 6);

  const GroupTable a1 = build_group("A1");
  CHECK(all_faces(a1).count_by_rank() == std::vector<std::uint64_t>{1, 2, 2});

  for (const char *spec : {"A3", "B3", "H3", "I2(5)", "A1xA2"}) {
    const std::string spec_name = spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(spec);
    const XiComplex c(t);
    std::uint64_t expected = 0;
    for (std::uint32_t w = 0; w < t.order(); ++w)
      expected += std::uint64_t{1} << (t.asc_left(ElementId(w)).size() +
                                       t.asc_right(ElementId(w)).size());
    CHECK(c.size() == expected);
    CHECK(c.count_by_rank().back() == t.order());
    std::set<Face> seen;
    for (std::uint64_t i = 0; i < c.size(); ++i) {
      const Face f = c.face_at(i);
      CHECK(is_minimal(t, f.left, f.w, f.right));
      CHECK(c.index_of(f) == i);
      seen.insert(f);
    }
    CHECK(seen.size() == c.size());
  }
}

TEST_CASE("face budget") {
  const GroupTable t = build_group("A3");
  CHECK_THROWS_AS(XiComplex(t, 100), CapacityExceeded);
}

TEST_CASE("order relation examples") {
  const GroupTable a2 = build_group("A2");
  const XiComplex xi(a2);
  const Face bottom{S2, kIdentity, S2};
  xi.for_each_face([&](const Face &f) { CHECK(leq(a2, bottom, f)); });
  CHECK(leq(a2, Face{GenSet{1}, word(a2, {0}), GenSet{1}}, Face{{}, a2.longest(), {}}));
  CHECK_FALSE(leq(a2, Face{{}, word(a2, {0}), {}}, Face{{}, word(a2, {1}), {}}));
}

TEST_CASE("face order agrees with reverse inclusion of double cosets") {
  struct Case {
    const char *spec;
    oracle::Kind kind;
    int rank;
  };
  for (const Case c : {Case{"A2", oracle::Kind::A, 2}, Case{"A3", oracle::Kind::A, 3},
                       Case{"B2", oracle::Kind::B, 2}, Case{"B3", oracle::Kind::B, 3}}) {
    const std::string spec_name = c.spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(c.spec);
    const XiComplex xi(t);
    const auto cosets = oracle::coset_faces(c.kind, c.rank);
    REQUIRE(cosets.size() == xi.size());

    // Match each face to the oracle face holding its representative.
    std::vector<std::size_t> match(xi.size());
    for (std::uint64_t i = 0; i < xi.size(); ++i) {
      const Face f = xi.face_at(i);
      const auto p = oracle::from_word(c.kind, c.rank, reduced_word(t, f.w));
      const auto it = std::find_if(cosets.begin(), cosets.end(), [&](const auto &g) {
        return g.left == f.left.bits() && g.right == f.right.bits() && g.coset.count(p);
      });
      REQUIRE(it != cosets.end());
      match[i] = static_cast<std::size_t>(it - cosets.begin());
    }
    for (std::uint64_t i = 0; i < xi.size(); ++i)
      for (std::uint64_t j = 0; j < xi.size(); ++j)
        CHECK(leq(t, xi.face_at(i), xi.face_at(j)) ==
              oracle::coset_leq(cosets[match[i]], cosets[match[j]]));
  }
}

TEST_CASE("lower intervals") {
  const GroupTable a2 = build_group("A2");
  CHECK(lower_interval(a2, Face{{}, a2.longest(), {}}).size() == 16);
  CHECK(lower_interval(a2, Face{S2, kIdentity, S2}) == std::vector<Face>{{S2, kIdentity, S2}});
  const std::set<Face> expected = {{GenSet{0}, kIdentity, GenSet{1}},
                                   {S2, kIdentity, GenSet{1}},
                                   {GenSet{0}, kIdentity, S2},
                                   {S2, kIdentity, S2}};
  CHECK(as_set(lower_interval(a2, Face{GenSet{0}, kIdentity, GenSet{1}})) == expected);
}

TEST_CASE("colors and restrictions") {
  const int n = 3;
  const GenSet S = GenSet::full(n);
  CHECK(face_color(n, Face{S, kIdentity, S.without(1)}) == FaceColor{{}, GenSet{1}});
  CHECK(face_color(n, Face{S.without(2), kIdentity, S}) == FaceColor{GenSet{2}, {}});
  CHECK(face_color(n, Face{{}, kIdentity, {}}) == FaceColor{S, S});

  const GroupTable a2 = build_group("A2");
  CHECK(restriction(a2, kIdentity) == Face{S2, kIdentity, S2});
  const ElementId s1s2 = word(a2, {0, 1});
  CHECK(restriction(a2, s1s2) == Face{GenSet{1}, s1s2, GenSet{0}});
  CHECK(restriction(a2, a2.longest()) == Face{{}, a2.longest(), {}});
}

TEST_CASE("codimension-one faces of a facet") {
  const GroupTable a2 = build_group("A2");
  const ElementId s1 = word(a2, {0});
  CHECK(as_set(codim1_faces_of_facet(a2, kIdentity)) ==
        std::set<Face>{{{}, kIdentity, GenSet{0}},
                       {{}, kIdentity, GenSet{1}},
                       {GenSet{0}, kIdentity, {}},
                       {GenSet{1}, kIdentity, {}}});
  CHECK(as_set(codim1_faces_of_facet(a2, s1)) == std::set<Face>{{GenSet{0}, kIdentity, {}},
                                                                {{}, kIdentity, GenSet{0}},
                                                                {GenSet{1}, s1, {}},
                                                                {{}, s1, GenSet{1}}});
  const GroupTable a1 = build_group("A1");
  CHECK(as_set(codim1_faces_of_facet(a1, word(a1, {0}))) ==
        std::set<Face>{{GenSet{0}, kIdentity, {}}, {{}, kIdentity, GenSet{0}}});
}

namespace {

/// Shelling verdict straight from the definition, on the face poset.
std::optional<std::size_t> first_shelling_failure(const XiComplex &xi,
                                                  const std::vector<ElementId> &order) {
  const GroupTable &t = xi.table();
  const int n = t.rank();
  std::vector<Face> faces;
  xi.for_each_face([&](const Face &f) { faces.push_back(f); });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Face facet{{}, order[k], {}};
    std::vector<Face> shared;
    for (const Face &f : faces) {
      if (!leq(t, f, facet))
        continue;
      for (std::size_t j = 0; j < k; ++j)
        if (leq(t, f, Face{{}, order[j], {}})) {
          shared.push_back(f);
          break;
        }
    }
    bool ok = !shared.empty();
    for (const Face &f : shared) {
      const bool maximal = std::none_of(shared.begin(), shared.end(), [&](const Face &g) {
        return g != f && leq(t, f, g);
      });
      if (maximal && f.rank(n) != 2 * n - 1)
        ok = false;
    }
    if (!ok)
      return k + 1;
  }
  return std::nullopt;
}

} // namespace

TEST_CASE("shelling") {
  const GroupTable a2 = build_group("A2");
  const XiComplex xi(a2);
  const auto order = length_order(a2);
  const ShellingReport good = verify_shelling(xi, order);
  CHECK(good.is_shelling);
  CHECK(good.descent_formula);
  CHECK(good.positions_checked == 6);

  std::vector<ElementId> w0_first = order;
  std::rotate(w0_first.begin(), w0_first.end() - 1, w0_first.end());
  const ShellingReport bad = verify_shelling(xi, w0_first);
  CHECK_FALSE(bad.is_shelling);
  CHECK(bad.first_failure == std::optional<std::size_t>{2});
  CHECK_FALSE(bad.descent_formula);
  CHECK(bad.first_formula_mismatch == std::optional<std::size_t>{1});

  const GroupTable a1 = build_group("A1");
  CHECK(verify_shelling(XiComplex(a1), length_order(a1)).is_shelling);

  for (const char *spec : {"A3", "B3", "H3", "I2(8)"}) {
    const std::string spec_name = spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(spec);
    const ShellingReport r = verify_shelling(XiComplex(t), length_order(t));
    CHECK(r.is_shelling);
    CHECK(r.descent_formula);
  }
}

TEST_CASE("shelling verdicts agree with the definition on random orders") {
  std::mt19937 rng(7);
  for (const char *spec : {"A2", "B2", "A1xA1"}) {
    const std::string spec_name = spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(spec);
    const XiComplex xi(t);
    auto order = length_order(t);
    for (int trial = 0; trial < 40; ++trial) {
      if (trial > 0)
        std::shuffle(order.begin(), order.end(), rng);
      const auto expected = first_shelling_failure(xi, order);
      const ShellingReport r = verify_shelling(xi, order);
      CHECK(r.is_shelling == !expected.has_value());
      CHECK(r.first_failure == expected);
    }
  }
}

TEST_CASE("topology") {
  for (const char *spec : {"A1", "A2", "A3", "B2", "B3", "H3", "I2(7)", "A1xA1", "D4"}) {
    const std::string spec_name = spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(spec);
    const XiComplex xi(t);
    CHECK(verify_thin(xi).ok);
    CHECK(verify_pseudomanifold(xi).ok);
    CHECK(euler_characteristic(xi) == 0);
  }
}

TEST_CASE("ridges of A2 lie in two facets") {
  const GroupTable a2 = build_group("A2");
  const Face ridge{GenSet{0}, kIdentity, {}};
  std::vector<ElementId> above;
  for (std::uint32_t w = 0; w < a2.order(); ++w)
    if (leq(a2, ridge, Face{{}, ElementId(w), {}}))
      above.push_back(ElementId(w));
  CHECK(above == std::vector<ElementId>{kIdentity, word(a2, {0})});
}

TEST_CASE("structural checks") {
  for (const char *spec : {"A1", "A2", "A3", "B3", "H3", "I2(8)"}) {
    const std::string spec_name = spec;
    CAPTURE(spec_name);
    const GroupTable t = build_group(spec);
    const XiComplex xi(t);
    CHECK(verify_boolean_intervals(xi).ok);
    CHECK(verify_balanced(xi).ok);
    CHECK(verify_partition(xi).ok);
    CHECK(verify_weak_order_monotone(xi).ok);
  }
  const GroupTable b4 = build_group("B4");
  const XiComplex xi(b4);
  const FaceSample sample{500, 3};
  const CheckResult r = verify_boolean_intervals(xi, sample);
  CHECK(r.ok);
  CHECK(r.checked == 500);
  CHECK(verify_partition(xi, sample).ok);
}

TEST_CASE("Coxeter complex inside the two-sided complex") {
  const GroupTable a2 = build_group("A2");
  const SigmaReport s2 = coxeter_subcomplex(XiComplex(a2));
  CHECK(s2.ideal.size() == 13);
  CHECK(s2.coset_faces == 13);
  CHECK(s2.isomorphism.ok);

  const GroupTable a1 = build_group("A1");
  CHECK(coxeter_subcomplex(XiComplex(a1)).ideal.size() == 3);

  const GroupTable a3 = build_group("A3");
  const SigmaReport s3 = coxeter_subcomplex(XiComplex(a3));
  CHECK(s3.isomorphism.ok);
  const auto facets = std::count_if(s3.ideal.begin(), s3.ideal.end(),
                                    [](const Face &f) { return f.rank(3) == 6; });
  CHECK(facets == 24);
}
