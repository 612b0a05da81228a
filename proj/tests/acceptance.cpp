// Acceptance run: one PASS/FAIL line per criterion.  All comparisons are
// exact integer equality; the only tolerances are the runtime budgets below.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "contingency_examples.hpp"
#include "known_values.hpp"
#include "twosided/complex.hpp"
#include "twosided/contingency.hpp"
#include "twosided/double_coset.hpp"
#include "twosided/enumeration.hpp"
#include "twosided/errors.hpp"

using namespace twosided;

namespace {

constexpr double kClassicalSeconds = 10;
constexpr double kF4Seconds = 1;
constexpr double kE6Seconds = 60;
constexpr double kTopologySeconds = 120;
constexpr double kContingencySeconds = 60;
constexpr std::uint64_t kRank4Sample = 10'000;
constexpr const char *kE7Env = "TWOSIDED_ACCEPT_E7";

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Groups are built once and shared between criteria.
const GroupTable &group(const std::string &spec) {
  static std::map<std::string, GroupTable> cache;
  auto it = cache.find(spec);
  if (it == cache.end())
    it = cache.emplace(spec, build_group(spec)).first;
  return it->second;
}

const std::vector<std::string> kRankAtMost3 = {"A1", "A2", "A3",    "B2",    "B3",   "H3",
                                               "G2", "I2(5)", "I2(7)", "I2(8)", "A1xA1"};
const std::vector<std::string> kRank4 = {"A4", "B4", "D4", "F4", "H4"};
const std::vector<std::string> kLarger = {"D5", "D6", "E6"};

/// Collects failures for one criterion.
class Criterion {
public:
  void require(bool ok, const std::string &what) {
    if (!ok && failures_.size() < 5)
      failures_.push_back(what);
    failed_ |= !ok;
  }
  void note(const std::string &what) { notes_.push_back(what); }
  bool ok() const { return !failed_; }
  std::string summary() const {
    std::ostringstream os;
    const auto &items = failed_ ? failures_ : notes_;
    for (std::size_t i = 0; i < items.size(); ++i)
      os << (i ? "; " : "") << items[i];
    return os.str();
  }

private:
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << " s";
  return os.str();
}

void criterion1(Criterion &c) {
  const auto t0 = Clock::now();
  for (const auto &entry : known::classical())
    c.require(eulerian_matrix(group(entry.type)).rows() == entry.eulerian,
              entry.type + " matrix differs");
  const double t = since(t0);
  c.require(t < kClassicalSeconds, "took " + seconds(t));
  c.note("A1-A4, B2-B4, D4-D6 exact in " + seconds(t));
}

void criterion2(Criterion &c) {
  for (const auto &entry : known::exceptional()) {
    const auto t0 = Clock::now();
    const bool ok = eulerian_matrix(group(entry.type)).rows() == entry.eulerian;
    const double t = since(t0);
    const double budget = entry.type == "F4" ? kF4Seconds : kE6Seconds;
    c.require(ok, entry.type + " matrix differs");
    c.require(t < budget, entry.type + " took " + seconds(t));
    c.note(entry.type + " exact in " + seconds(t));
  }
  if (std::getenv(kE7Env)) {
    const auto t0 = Clock::now();
    const GroupTable e7 = build_group("E7");
    c.require(eulerian_matrix(e7).rows() == known::e7().eulerian, "E7 matrix differs");
    c.note("E7 exact in " + seconds(since(t0)));
  } else {
    c.note(std::string("E7 skipped (set ") + kE7Env + "=1)");
  }
}

void criterion3(Criterion &c) {
  std::vector<known::Entry> entries = known::classical();
  for (const auto &e : known::exceptional())
    entries.push_back(e);
  if (std::getenv(kE7Env))
    entries.push_back(known::e7());
  for (const auto &entry : entries) {
    const EulerianMatrix m = eulerian_matrix(group(entry.type));
    const GammaTable g = gamma_expansion(m);
    c.require(known::trimmed(g.display_rows()) == known::trimmed(entry.gamma),
              entry.type + " gamma differs");
    c.require(g.negative_entries().empty(), entry.type + " has a negative gamma entry");
    c.require(g.reconstruct() == m, entry.type + " gamma does not reconstruct");
  }
  c.note(std::to_string(entries.size()) + " gamma tables exact and nonnegative");
}

void criterion4(Criterion &c) {
  const GroupTable &a2 = group("A2");
  const SubsetPairTable f = flag_f(a2);
  const GenSet e{}, one{0}, two{1}, both{0, 1};
  const std::vector<std::tuple<GenSet, GenSet, std::int64_t>> fine = {
      {e, e, 1},        {one, e, 1},      {two, e, 1},      {e, one, 1},
      {e, two, 1},      {both, e, 1},     {e, both, 1},     {one, one, 2},
      {one, two, 2},    {two, one, 2},    {two, two, 2},    {both, one, 3},
      {both, two, 3},   {one, both, 3},   {two, both, 3},   {both, both, 6}};
  for (const auto &[I, J, v] : fine)
    c.require(f(I, J) == v, "f coefficient x" + I.subscripts() + "y" + J.subscripts());

  // coarse f(x,y) = 1 + 2(x+y) + x^2 + 8xy + y^2 + 6(x^2y + xy^2) + 6x^2y^2
  std::vector<std::vector<std::int64_t>> coarse(3, std::vector<std::int64_t>(3, 0));
  for_each_subset(both, [&](GenSet I) {
    for_each_subset(both, [&](GenSet J) { coarse[I.size()][J.size()] += f(I, J); });
  });
  c.require(coarse == std::vector<std::vector<std::int64_t>>{{1, 2, 1}, {2, 8, 6}, {1, 6, 6}},
            "coarse f differs");

  const std::vector<std::tuple<std::vector<int>, GenSet, GenSet>> descents = {
      {{}, e, e},         {{0}, one, one},       {{1}, two, two},
      {{0, 1}, one, two}, {{1, 0}, two, one},    {{0, 1, 0}, both, both}};
  for (const auto &[word, dl, dr] : descents) {
    const ElementId w = element_from_word(a2, word);
    c.require(a2.des_left(w) == dl && a2.des_right(w) == dr,
              "descent sets of " + word_string(a2, w));
  }
  c.require(eulerian_from_flag(f).rows() ==
                known::Rows{{1, 0, 0}, {0, 4, 0}, {0, 0, 1}},
            "h(A2) is not 1 + 4xy + x^2y^2");
  c.note("16 f coefficients, 6 descent rows, h = 1 + 4xy + x^2y^2");
}

void structural(Criterion &c, const std::string &spec, FaceSample sample) {
  const GroupTable &t = group(spec);
  const XiComplex xi(t);
  auto check = [&](const char *name, const CheckResult &r) {
    c.require(r.ok, spec + " " + name + ": " + r.failure);
  };
  check("boolean intervals", verify_boolean_intervals(xi, sample));
  check("balanced", verify_balanced(xi, sample));
  check("partition", verify_partition(xi, sample));
  check("weak order", verify_weak_order_monotone(xi, sample));
  c.require(xi.facet_count() == t.system().order(), spec + " facet count");
  check("sigma", coxeter_subcomplex(xi, sample.count).isomorphism);
}

void criterion5(Criterion &c) {
  for (const auto &spec : kRankAtMost3)
    structural(c, spec, {});
  for (const auto &spec : kRank4)
    structural(c, spec, {kRank4Sample, 1});
  c.note(std::to_string(kRankAtMost3.size()) + " groups exhaustive, " +
         std::to_string(kRank4.size()) + " rank-4 groups on " + std::to_string(kRank4Sample) +
         " sampled faces");
}

void criterion6(Criterion &c) {
  const auto t0 = Clock::now();
  std::vector<std::string> all = kRankAtMost3;
  all.insert(all.end(), kRank4.begin(), kRank4.end());
  all.insert(all.end(), kLarger.begin(), kLarger.end());
  for (const auto &spec : all) {
    const GroupTable &t = group(spec);
    const XiComplex xi(t);
    const CheckResult thin = verify_thin(xi);
    c.require(thin.ok, spec + " thin: " + thin.failure);
    const CheckResult pm = verify_pseudomanifold(xi);
    c.require(pm.ok, spec + " pseudomanifold: " + pm.failure);
    c.require(euler_characteristic(xi) == 0, spec + " Euler characteristic");
    if (t.rank() <= 3) {
      const ShellingReport r = verify_shelling(xi, length_order(t));
      c.require(r.is_shelling, spec + " shelling");
      c.require(r.descent_formula, spec + " shelling descent formula");
    }
  }
  const double t = since(t0);
  c.require(t < kTopologySeconds, "took " + seconds(t));
  c.note(std::to_string(all.size()) + " groups, shelling on rank <= 3, " + seconds(t));
}

void criterion7(Criterion &c) {
  std::vector<std::string> groups = kRankAtMost3;
  groups.insert(groups.end(), kRank4.begin(), kRank4.end());
  std::uint64_t pairs = 0;
  for (const auto &spec : groups) {
    const GroupTable &t = group(spec);
    const GenSet S = t.generators();
    for_each_subset(S, [&](GenSet I) {
      for_each_subset(S, [&](GenSet J) {
        ++pairs;
        c.require(count_minimal_by_descents(t, I, J) == count_minimal_by_reduction(t, I, J),
                  spec + " counts differ at (" + I.subscripts() + "," + J.subscripts() + ")");
      });
    });
    if (t.rank() > 3)
      continue;
    for_each_subset(S, [&](GenSet I) {
      for_each_subset(S, [&](GenSet J) {
        std::vector<int> owners(t.order(), 0);
        for (std::uint32_t u = 0; u < t.order(); ++u) {
          if (!is_minimal(t, I, ElementId(u), J))
            continue;
          for (ElementId v : coset_elements(t, I, ElementId(u), J)) {
            ++owners[v.value];
            c.require(leq_two_sided(t, ElementId(u), v), spec + " minimal element not below");
          }
        }
        for (int k : owners)
          c.require(k == 1, spec + " coset without a unique minimal element");
      });
    });
  }
  c.note(std::to_string(pairs) + " (I,J) pairs over " + std::to_string(groups.size()) +
         " groups; uniqueness exhaustive on rank <= 3");
}

void criterion8(Criterion &c) {
  std::vector<std::string> groups = kRankAtMost3;
  groups.insert(groups.end(), kRank4.begin(), kRank4.end());
  groups.push_back("E6");
  for (const auto &spec : groups) {
    const GroupTable &t = group(spec);
    const SubsetPairTable f = flag_f(t);
    const SubsetPairTable h = flag_h_descents(t);
    c.require(reciprocity_check(f, h), spec + " f/h reciprocity");
    c.require(flag_h_by_inclusion_exclusion(f) == h, spec + " inclusion-exclusion");
    c.require(eulerian_from_flag(f) == eulerian_matrix(t), spec + " eulerian_from_flag");
  }
  c.note(std::to_string(groups.size()) + " groups");
}

void criterion9(Criterion &c) {
  const auto t0 = Clock::now();
  const GroupTable &a6 = group("A6");
  const GenSet I{0, 1, 2, 4}, J{1, 2, 5};
  const ElementId u = minimize(a6, I, from_one_line(a6, known::kS7Word), J);
  c.require(to_one_line(a6, u) == known::kS7Minimal, "S7 minimal representative");
  c.require(face_to_table(a6, Face{I, u, J}).display() == known::kS7Table, "S7 table");
  const Face back = table_to_face(a6, ContingencyTable::from_display(known::kS7Table));
  c.require(back == Face{I, u, J}, "S7 inverse map");

  const auto center = ContingencyTable::from_display(known::kS7Table);
  std::set<ContingencyTable> up, down;
  for (const auto &d : known::kS7UpperCovers)
    up.insert(ContingencyTable::from_display(d));
  for (const auto &d : known::kS7LowerCovers)
    down.insert(ContingencyTable::from_display(d));
  const auto ups = upper_covers(center);
  const auto downs = lower_covers(center);
  c.require(ups.size() == 12 && std::set<ContingencyTable>(ups.begin(), ups.end()) == up,
            "S7 upper covers");
  c.require(downs.size() == 5 && std::set<ContingencyTable>(downs.begin(), downs.end()) == down,
            "S7 lower covers");

  for (const char *spec : {"A1", "A2", "A3"}) {
    const CheckResult r = verify_isomorphism(group(spec));
    c.require(r.ok, std::string(spec) + " isomorphism: " + r.failure);
  }
  c.require(table_to_ordered_partition(ContingencyTable::from_display(known::kPartitionTable)) ==
                OrderedSetPartition{{4, 5}, {3, 6}, {1}, {2}},
            "ordered set partition");
  for (auto [k, n, expected] : std::vector<std::tuple<int, int, std::uint64_t>>{
           {2, 3, 6}, {2, 4, 24}, {3, 2, 4}, {3, 3, 36}})
    c.require(kway_maximal_count(k, n) == expected,
              "k-way count (" + std::to_string(k) + "," + std::to_string(n) + ")");
  const double t = since(t0);
  c.require(t < kContingencySeconds, "took " + seconds(t));
  c.note("S7 table and minimal representative, covers (12 up, 5 down), isomorphism n = 2..4, partition, 4 k-way counts in " +
         seconds(t));
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<void(Criterion &)>>> criteria = {
      {"classical Eulerian matrices", criterion1},
      {"exceptional Eulerian matrices", criterion2},
      {"gamma tables", criterion3},
      {"A2 flag counts", criterion4},
      {"structural properties", criterion5},
      {"topology", criterion6},
      {"double-coset counts", criterion7},
      {"f/h reciprocity", criterion8},
      {"contingency model", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception &e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    failed += !c.ok();
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << i + 1 << " ("
              << criteria[i].first << "): " << c.summary() << std::endl;
  }
  return failed ? 1 : 0;
}
