#include "twosided/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "twosided/errors.hpp"
#include "twosided/gen_set.hpp"

namespace twosided {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out))
    return std::numeric_limits<std::uint64_t>::max();
  return out;
}

std::uint64_t factorial(int k) {
  std::uint64_t out = 1;
  for (int i = 2; i <= k; ++i)
    out = saturating_mul(out, static_cast<std::uint64_t>(i));
  return out;
}

std::string describe(const CoxeterMatrix &matrix, const std::vector<int> &gens) {
  std::ostringstream os;
  os << "component on generators {";
  for (std::size_t i = 0; i < gens.size(); ++i)
    os << (i ? "," : "") << gens[i] + 1;
  os << "}";
  (void)matrix;
  return os.str();
}

CoxeterType classify_path(const CoxeterMatrix &matrix, const std::vector<int> &path,
                          const std::vector<int> &gens) {
  const int k = static_cast<int>(path.size());
  std::vector<int> labels;
  for (int i = 0; i + 1 < k; ++i)
    labels.push_back(matrix(path[i], path[i + 1]));

  std::vector<int> odd; // positions whose label differs from 3
  for (int i = 0; i < k - 1; ++i)
    if (labels[i] != 3)
      odd.push_back(i);

  if (odd.empty())
    return {Family::A, k, 0};
  if (odd.size() == 1) {
    const int pos = odd.front();
    const int m = labels[pos];
    const bool at_end = pos == 0 || pos == k - 2;
    if (m == 4 && at_end)
      return {Family::B, k, 0};
    if (m == 4 && k == 4 && pos == 1)
      return {Family::F, 4, 0};
    if (m == 5 && at_end && (k == 3 || k == 4))
      return {Family::H, k, 0};
  }
  throw NotFinite("Coxeter graph " + describe(matrix, gens) +
                  " is a path with labels that match no finite type");
}

CoxeterType classify_component(const CoxeterMatrix &matrix, const std::vector<int> &gens) {
  const int k = static_cast<int>(gens.size());
  for (int a : gens)
    for (int b : gens)
      if (matrix(a, b) == 0)
        throw NotFinite("Coxeter graph " + describe(matrix, gens) +
                        " has an infinite bond");
  if (k == 1)
    return {Family::A, 1, 0};
  if (k == 2) {
    const int m = matrix(gens[0], gens[1]);
    if (m == 3)
      return {Family::A, 2, 0};
    if (m == 4)
      return {Family::B, 2, 0};
    return {Family::I, 2, m};
  }

  std::vector<std::vector<int>> adj(matrix.rank());
  int edges = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (matrix(gens[i], gens[j]) >= 3) {
        adj[gens[i]].push_back(gens[j]);
        adj[gens[j]].push_back(gens[i]);
        ++edges;
      }
  if (edges != k - 1)
    throw NotFinite("Coxeter graph " + describe(matrix, gens) + " contains a cycle");

  std::vector<int> branch;
  for (int g : gens) {
    if (adj[g].size() > 3)
      throw NotFinite("Coxeter graph " + describe(matrix, gens) +
                      " has a vertex of degree > 3");
    if (adj[g].size() == 3)
      branch.push_back(g);
  }

  if (branch.empty()) {
    int start = gens.front();
    for (int g : gens)
      if (adj[g].size() == 1) {
        start = g;
        break;
      }
    std::vector<int> path{start};
    int prev = -1;
    while (static_cast<int>(path.size()) < k) {
      const int cur = path.back();
      const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      path.push_back(next);
    }
    return classify_path(matrix, path, gens);
  }

  if (branch.size() > 1)
    throw NotFinite("Coxeter graph " + describe(matrix, gens) +
                    " has more than one branch vertex");
  for (int a : gens)
    for (int b : gens)
      if (a != b && matrix(a, b) > 3)
        throw NotFinite("Coxeter graph " + describe(matrix, gens) +
                        " branches and has a bond > 3");

  const int center = branch.front();
  std::vector<int> arms;
  for (int first : adj[center]) {
    int len = 1, prev = center, cur = first;
    while (adj[cur].size() == 2) {
      const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1)
    return {Family::D, k, 0};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
    return {Family::E, k, 0};
  throw NotFinite("Coxeter graph " + describe(matrix, gens) +
                  " is a branched tree of no finite type");
}

} // namespace

CoxeterMatrix::CoxeterMatrix(int rank, std::vector<int> entries)
    : rank_(rank), entries_(std::move(entries)) {
  if (rank < 1 || rank > kMaxRank)
    throw InvalidArgument("Coxeter rank must lie in [1, " + std::to_string(kMaxRank) +
                          "], got " + std::to_string(rank));
  if (entries_.size() != static_cast<std::size_t>(rank) * rank)
    throw InvalidArgument("Coxeter matrix must have rank*rank entries");
  for (int s = 0; s < rank; ++s) {
    if ((*this)(s, s) != 1)
      throw InvalidArgument("Coxeter matrix diagonal must be 1");
    for (int t = 0; t < rank; ++t) {
      if ((*this)(s, t) != (*this)(t, s))
        throw InvalidArgument("Coxeter matrix must be symmetric");
      if (s != t && (*this)(s, t) != 0 && (*this)(s, t) < 2)
        throw InvalidArgument("off-diagonal Coxeter entries must be >= 2 or 0 (infinity)");
    }
  }
}

CoxeterMatrix CoxeterMatrix::from_rows(const std::vector<std::vector<int>> &rows) {
  std::vector<int> flat;
  for (const auto &row : rows) {
    if (row.size() != rows.size())
      throw InvalidArgument("Coxeter matrix must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CoxeterMatrix(static_cast<int>(rows.size()), std::move(flat));
}

std::string CoxeterType::label() const {
  switch (family) {
  case Family::A:
    return "A" + std::to_string(rank);
  case Family::B:
    return "B" + std::to_string(rank);
  case Family::D:
    return "D" + std::to_string(rank);
  case Family::E:
    return "E" + std::to_string(rank);
  case Family::F:
    return "F" + std::to_string(rank);
  case Family::H:
    return "H" + std::to_string(rank);
  case Family::I:
    return "I2(" + std::to_string(m) + ")";
  }
  return "?";
}

std::uint64_t CoxeterType::order() const {
  switch (family) {
  case Family::A:
    return factorial(rank + 1);
  case Family::B:
    return saturating_mul(std::uint64_t{1} << rank, factorial(rank));
  case Family::D:
    return saturating_mul(std::uint64_t{1} << (rank - 1), factorial(rank));
  case Family::E:
    return rank == 6 ? 51840u : rank == 7 ? 2903040u : 696729600u;
  case Family::F:
    return 1152;
  case Family::H:
    return rank == 3 ? 120 : 14400;
  case Family::I:
    return 2 * static_cast<std::uint64_t>(m);
  }
  return 0;
}

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix, std::vector<Component> components)
    : matrix_(std::move(matrix)), components_(std::move(components)) {}

std::string CoxeterSystem::label() const {
  std::string out;
  for (const auto &c : components_) {
    if (!out.empty())
      out += 'x';
    out += c.type.label();
  }
  return out;
}

std::uint64_t CoxeterSystem::order() const {
  std::uint64_t out = 1;
  for (const auto &c : components_)
    out = saturating_mul(out, c.type.order());
  return out;
}

bool CoxeterSystem::is_standard_type_a() const {
  if (components_.size() != 1 || components_[0].type.family != Family::A)
    return false;
  for (int s = 0; s + 1 < rank(); ++s)
    if (matrix_(s, s + 1) != 3)
      return false;
  return true;
}

CoxeterSystem classify_finite(const CoxeterMatrix &matrix) {
  const int n = matrix.rank();
  std::vector<int> comp(n, -1);
  std::vector<Component> components;
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0)
      continue;
    const int id = static_cast<int>(components.size());
    std::vector<int> stack{root}, gens;
    comp[root] = id;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      gens.push_back(s);
      for (int t = 0; t < n; ++t)
        if (t != s && comp[t] < 0 && matrix(s, t) != 2) {
          comp[t] = id;
          stack.push_back(t);
        }
    }
    std::sort(gens.begin(), gens.end());
    components.push_back({classify_component(matrix, gens), gens});
  }
  return CoxeterSystem(matrix, std::move(components));
}

CoxeterMatrix standard_matrix(const CoxeterType &type) {
  const int n = type.rank;
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i)
    m[i][i] = 1;
  auto bond = [&](int a, int b, int v) { m[a][b] = m[b][a] = v; };

  switch (type.family) {
  case Family::A:
    for (int i = 0; i + 1 < n; ++i)
      bond(i, i + 1, 3);
    break;
  case Family::B:
    if (n < 2)
      throw InvalidArgument("type B needs rank >= 2");
    for (int i = 0; i + 1 < n; ++i)
      bond(i, i + 1, i + 2 == n ? 4 : 3);
    break;
  case Family::D:
    if (n < 4)
      throw InvalidArgument("type D needs rank >= 4");
    for (int i = 0; i + 2 < n; ++i)
      bond(i, i + 1, 3);
    bond(n - 3, n - 1, 3);
    break;
  case Family::E:
    if (n < 6 || n > 8)
      throw InvalidArgument("type E needs rank 6, 7 or 8");
    bond(0, 2, 3);
    bond(1, 3, 3);
    for (int i = 2; i + 1 < n; ++i)
      bond(i, i + 1, 3);
    break;
  case Family::F:
    if (n != 4)
      throw InvalidArgument("type F needs rank 4");
    bond(0, 1, 3);
    bond(1, 2, 4);
    bond(2, 3, 3);
    break;
  case Family::H:
    if (n != 3 && n != 4)
      throw InvalidArgument("type H needs rank 3 or 4");
    bond(0, 1, 5);
    for (int i = 1; i + 1 < n; ++i)
      bond(i, i + 1, 3);
    break;
  case Family::I:
    if (n != 2 || type.m < 2)
      throw InvalidArgument("type I2(m) needs m >= 2");
    bond(0, 1, type.m);
    break;
  }
  return CoxeterMatrix::from_rows(m);
}

namespace {

CoxeterMatrix affine_matrix(char family, int n) {
  // n is the rank of the underlying finite type; the diagram has n+1 nodes.
  const int k = n + 1;
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 2));
  for (int i = 0; i < k; ++i)
    m[i][i] = 1;
  auto bond = [&](int a, int b, int v) { m[a][b] = m[b][a] = v; };
  switch (family) {
  case 'A':
    if (n == 1) {
      bond(0, 1, 0);
    } else {
      for (int i = 0; i < k; ++i)
        bond(i, (i + 1) % k, 3);
    }
    break;
  case 'C':
    if (n < 2)
      throw InvalidArgument("affine C needs rank >= 2");
    for (int i = 0; i + 1 < k; ++i)
      bond(i, i + 1, (i == 0 || i + 2 == k) ? 4 : 3);
    break;
  case 'G':
    if (n != 2)
      throw InvalidArgument("affine G needs rank 2");
    bond(0, 1, 6);
    bond(1, 2, 3);
    break;
  default:
    throw InvalidArgument(std::string("affine diagrams are supported for A, C and G, not ") +
                          family);
  }
  return CoxeterMatrix::from_rows(m);
}

struct ParsedPart {
  char family;
  int rank;
  int m;
  bool affine;
};

ParsedPart parse_part(std::string_view part) {
  if (part.empty())
    throw InvalidArgument("empty component in type spec");
  ParsedPart out{static_cast<char>(std::toupper(static_cast<unsigned char>(part[0]))), 0, 0,
                 false};
  if (part.back() == '~') {
    out.affine = true;
    part.remove_suffix(1);
  }
  std::size_t pos = 1;
  while (pos < part.size() && part[pos] == '_')
    ++pos;
  std::size_t digits = pos;
  while (digits < part.size() && std::isdigit(static_cast<unsigned char>(part[digits])))
    ++digits;
  if (digits == pos)
    throw InvalidArgument("missing rank in type spec component '" + std::string(part) + "'");
  out.rank = std::stoi(std::string(part.substr(pos, digits - pos)));
  if (out.family == 'I') {
    if (out.rank != 2 || digits >= part.size() || part[digits] != '(' || part.back() != ')')
      throw InvalidArgument("dihedral types are written I2(m)");
    out.m = std::stoi(std::string(part.substr(digits + 1, part.size() - digits - 2)));
  } else if (digits != part.size()) {
    throw InvalidArgument("trailing characters in type spec component '" +
                          std::string(part) + "'");
  }
  return out;
}

CoxeterMatrix part_matrix(const ParsedPart &p) {
  if (p.affine)
    return affine_matrix(p.family, p.rank);
  switch (p.family) {
  case 'A':
    return standard_matrix({Family::A, p.rank, 0});
  case 'B':
  case 'C':
    return standard_matrix({Family::B, p.rank, 0});
  case 'D':
    return standard_matrix({Family::D, p.rank, 0});
  case 'E':
    return standard_matrix({Family::E, p.rank, 0});
  case 'F':
    return standard_matrix({Family::F, p.rank, 0});
  case 'G':
    if (p.rank != 2)
      throw InvalidArgument("type G needs rank 2");
    return standard_matrix({Family::I, 2, 6});
  case 'H':
    return standard_matrix({Family::H, p.rank, 0});
  case 'I':
    return standard_matrix({Family::I, 2, p.m});
  default:
    throw InvalidArgument(std::string("unknown Coxeter family '") + p.family + "'");
  }
}

} // namespace

CoxeterMatrix parse_type_spec(std::string_view spec) {
  std::vector<CoxeterMatrix> blocks;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find('x', start);
    if (end == std::string_view::npos)
      end = spec.size();
    blocks.push_back(part_matrix(parse_part(spec.substr(start, end - start))));
    start = end + 1;
  }
  int n = 0;
  for (const auto &b : blocks)
    n += b.rank();
  if (n > kMaxRank)
    throw InvalidArgument("total rank exceeds " + std::to_string(kMaxRank));
  std::vector<int> flat(static_cast<std::size_t>(n) * n, 2);
  for (int i = 0; i < n; ++i)
    flat[i * n + i] = 1;
  int offset = 0;
  for (const auto &b : blocks) {
    for (int s = 0; s < b.rank(); ++s)
      for (int t = 0; t < b.rank(); ++t)
        flat[(offset + s) * n + offset + t] = b(s, t);
    offset += b.rank();
  }
  return CoxeterMatrix(n, std::move(flat));
}

} // namespace twosided
