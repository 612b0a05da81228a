#include "twosided/enumeration.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "twosided/double_coset.hpp"
#include "twosided/errors.hpp"

namespace twosided {

namespace {

using Rational = boost::multiprecision::cpp_rational;

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i)
    out = out * (n - k + i) / i;
  return out;
}

} // namespace

std::int64_t SubsetPairTable::total() const {
  return std::accumulate(values_.begin(), values_.end(), std::int64_t{0});
}

SubsetPairTable flag_f(const GroupTable &table, bool cross_check) {
  const int n = table.rank();
  const GenSet S = table.generators();
  SubsetPairTable f(n);
  for (std::uint32_t i = 0; i < (1u << n); ++i)
    for (std::uint32_t j = 0; j < (1u << n); ++j) {
      const GenSet I(i), J(j);
      const GenSet I_c = S - I, J_c = S - J;
      f(I, J) = static_cast<std::int64_t>(cross_check ? count_double_quotient(table, I_c, J_c)
                                                      : count_minimal_by_descents(table, I_c, J_c));
    }
  return f;
}

SubsetPairTable flag_h_descents(const GroupTable &table) {
  SubsetPairTable h(table.rank());
  const auto dl = table.left_descents();
  const auto dr = table.right_descents();
  for (std::size_t w = 0; w < dl.size(); ++w)
    ++h(dl[w], dr[w]);
  return h;
}

SubsetPairTable flag_h_by_inclusion_exclusion(const SubsetPairTable &f) {
  const int n = f.rank();
  SubsetPairTable h(n);
  for (std::uint32_t i = 0; i < (1u << n); ++i)
    for (std::uint32_t j = 0; j < (1u << n); ++j) {
      const GenSet I(i), J(j);
      std::int64_t sum = 0;
      for_each_subset(I, [&](GenSet K) {
        for_each_subset(J, [&](GenSet L) {
          const int sign = ((I - K).size() + (J - L).size()) % 2 == 0 ? 1 : -1;
          sum += sign * f(K, L);
        });
      });
      if (sum < 0)
        throw NegativeEntry("h(" + I.subscripts() + "," + J.subscripts() + ") = " +
                            std::to_string(sum) + "; the f table is inconsistent");
      h(I, J) = sum;
    }
  return h;
}

bool reciprocity_check(const SubsetPairTable &f, const SubsetPairTable &h) {
  if (f.rank() != h.rank())
    return false;
  const int n = f.rank();
  const std::size_t bits = 2 * static_cast<std::size_t>(n);
  // The pair (I, J) occupies one 2n-bit word, so subset sums in both
  // coordinates are a single zeta transform over 2n bits.
  auto zeta = [bits](std::vector<std::int64_t> v, int sign) {
    for (std::size_t b = 0; b < bits; ++b)
      for (std::size_t x = 0; x < v.size(); ++x)
        if (x & (std::size_t{1} << b))
          v[x] += sign * v[x ^ (std::size_t{1} << b)];
    return v;
  };
  return zeta(h.values(), +1) == f.values() && zeta(f.values(), -1) == h.values();
}

EulerianMatrix EulerianMatrix::from_rows(const std::vector<std::vector<std::int64_t>> &rows) {
  EulerianMatrix m(static_cast<int>(rows.size()) - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw InvalidArgument("Eulerian matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<std::int64_t>> EulerianMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(rank_ + 1, std::vector<std::int64_t>(rank_ + 1));
  for (int i = 0; i <= rank_; ++i)
    for (int j = 0; j <= rank_; ++j)
      out[i][j] = (*this)(i, j);
  return out;
}

std::vector<std::int64_t> EulerianMatrix::row_sums() const {
  std::vector<std::int64_t> out(rank_ + 1, 0);
  for (int i = 0; i <= rank_; ++i)
    for (int j = 0; j <= rank_; ++j)
      out[i] += (*this)(i, j);
  return out;
}

std::vector<std::int64_t> EulerianMatrix::column_sums() const {
  std::vector<std::int64_t> out(rank_ + 1, 0);
  for (int i = 0; i <= rank_; ++i)
    for (int j = 0; j <= rank_; ++j)
      out[j] += (*this)(i, j);
  return out;
}

std::int64_t EulerianMatrix::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0});
}

EulerianMatrix eulerian_matrix(const GroupTable &table) {
  EulerianMatrix m(table.rank());
  const auto dl = table.left_descents();
  const auto dr = table.right_descents();
  for (std::size_t w = 0; w < dl.size(); ++w)
    ++m(dl[w].size(), dr[w].size());
  return m;
}

EulerianMatrix eulerian_from_flag(const SubsetPairTable &f) {
  const int n = f.rank();
  // Aggregate f by (|I|, |J|) first; the weight only depends on the sizes.
  std::vector<std::int64_t> by_size(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (std::uint32_t i = 0; i < (1u << n); ++i)
    for (std::uint32_t j = 0; j < (1u << n); ++j)
      by_size[GenSet(i).size() * (n + 1) + GenSet(j).size()] += f(GenSet(i), GenSet(j));

  // x^i (1-x)^{n-i} = sum_k (-1)^k C(n-i, k) x^{i+k}
  auto poly = [n](int i) {
    std::vector<std::int64_t> p(n + 1, 0);
    for (int k = 0; k <= n - i; ++k)
      p[i + k] = (k % 2 == 0 ? 1 : -1) * binomial(n - i, k);
    return p;
  };
  EulerianMatrix m(n);
  for (int i = 0; i <= n; ++i) {
    const auto px = poly(i);
    for (int j = 0; j <= n; ++j) {
      const std::int64_t c = by_size[i * (n + 1) + j];
      if (c == 0)
        continue;
      const auto py = poly(j);
      for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
          m(a, b) += c * px[a] * py[b];
    }
  }
  return m;
}

EulerianMatrix verified_eulerian(const GroupTable &table, const SubsetPairTable &f) {
  EulerianMatrix direct = eulerian_matrix(table);
  if (eulerian_from_flag(f) != direct)
    throw MethodMismatch("two-sided Eulerian matrix from flag f-numbers differs from the census");
  return direct;
}

bool check_symmetries(const EulerianMatrix &m) {
  const int n = m.rank();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (m(i, j) != m(j, i) || m(i, j) != m(n - i, n - j))
        return false;
  return true;
}

std::vector<std::int64_t> descent_sum_polynomial(const GroupTable &table) {
  std::vector<std::int64_t> out(2 * table.rank() + 1, 0);
  for (std::uint32_t w = 0; w < table.order(); ++w)
    ++out[table.des_left(ElementId(w)).size() + table.des_right(ElementId(w)).size()];
  return out;
}

std::vector<std::int64_t> specialize_h(const SubsetPairTable &h) {
  const int n = h.rank();
  std::vector<std::int64_t> out(2 * n + 1, 0);
  for (std::uint32_t i = 0; i < (1u << n); ++i)
    for (std::uint32_t j = 0; j < (1u << n); ++j)
      out[GenSet(i).size() + GenSet(j).size()] += h(GenSet(i), GenSet(j));
  return out;
}

GammaTable::GammaTable(int rank) : rank_(rank) {
  for (int a = 0; 2 * a <= rank; ++a)
    for (int b = 0; 2 * a + b <= rank; ++b)
      indices_.emplace_back(a, b);
  values_.assign(indices_.size(), 0);
}

std::size_t GammaTable::slot(int a, int b) const {
  const auto it = std::find(indices_.begin(), indices_.end(), std::make_pair(a, b));
  if (it == indices_.end())
    throw InvalidArgument("gamma index (" + std::to_string(a) + "," + std::to_string(b) +
                          ") outside 0 <= 2a+b <= n");
  return static_cast<std::size_t>(it - indices_.begin());
}

std::vector<std::vector<std::int64_t>> GammaTable::display_rows() const {
  const int cols = rank_ / 2 + 1;
  int last = 0;
  for (std::size_t k = 0; k < indices_.size(); ++k)
    if (values_[k] != 0)
      last = std::max(last, indices_[k].first + indices_[k].second);
  std::vector<std::vector<std::int64_t>> rows(last + 1, std::vector<std::int64_t>(cols, 0));
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    const auto [a, b] = indices_[k];
    if (a + b <= last)
      rows[a + b][a] = values_[k];
  }
  return rows;
}

GammaTable GammaTable::from_display_rows(int rank,
                                         const std::vector<std::vector<std::int64_t>> &rows) {
  GammaTable g(rank);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t a = 0; a < rows[r].size(); ++a) {
      if (rows[r][a] == 0)
        continue;
      const int b = static_cast<int>(r) - static_cast<int>(a);
      g(static_cast<int>(a), b) = rows[r][a];
    }
  return g;
}

EulerianMatrix gamma_basis_element(int rank, int a, int b) {
  const int c = rank - 2 * a - b;
  if (a < 0 || b < 0 || c < 0)
    throw InvalidArgument("gamma basis index outside 0 <= 2a+b <= n");
  EulerianMatrix m(rank);
  // (xy)^a * sum_k C(b,k) x^k y^{b-k} * sum_l C(c,l) (xy)^l
  for (int k = 0; k <= b; ++k)
    for (int l = 0; l <= c; ++l)
      m(a + k + l, a + b - k + l) += binomial(b, k) * binomial(c, l);
  return m;
}

EulerianMatrix GammaTable::reconstruct() const {
  EulerianMatrix out(rank_);
  for (std::size_t k = 0; k < indices_.size(); ++k) {
    if (values_[k] == 0)
      continue;
    const auto basis = gamma_basis_element(rank_, indices_[k].first, indices_[k].second);
    for (int i = 0; i <= rank_; ++i)
      for (int j = 0; j <= rank_; ++j)
        out(i, j) += values_[k] * basis(i, j);
  }
  return out;
}

std::vector<std::pair<int, int>> GammaTable::negative_entries() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t k = 0; k < indices_.size(); ++k)
    if (values_[k] < 0)
      out.push_back(indices_[k]);
  return out;
}

GammaTable gamma_expansion(const EulerianMatrix &m) {
  const int n = m.rank();
  GammaTable gamma(n);
  const auto &indices = gamma.indices();
  const std::size_t cols = indices.size();
  const std::size_t rows = static_cast<std::size_t>(n + 1) * (n + 1);

  // Augmented system: one equation per coefficient <i,j>.
  std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(cols + 1));
  for (std::size_t c = 0; c < cols; ++c) {
    const auto basis = gamma_basis_element(n, indices[c].first, indices[c].second);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        aug[i * (n + 1) + j][c] = basis(i, j);
  }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      aug[i * (n + 1) + j][cols] = m(i, j);

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && aug[r][c] == 0)
      ++r;
    if (r == rows)
      throw NoSolution("basis element (" + std::to_string(indices[c].first) + "," +
                       std::to_string(indices[c].second) +
                       ") has no pivot: the gamma basis is dependent in rank " +
                       std::to_string(n));
    std::swap(aug[r], aug[pivot_row]);
    const Rational inv = 1 / aug[pivot_row][c];
    for (auto &x : aug[pivot_row])
      x *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == pivot_row || aug[q][c] == 0)
        continue;
      const Rational factor = aug[q][c];
      for (std::size_t k = c; k <= cols; ++k)
        aug[q][k] -= factor * aug[pivot_row][k];
    }
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows; ++r)
    if (aug[r][cols] != 0) {
      std::ostringstream os;
      os << "W(x,y) is not in the span of the gamma basis; residual " << aug[r][cols]
         << " in equation " << r;
      throw NoSolution(os.str());
    }

  for (std::size_t c = 0; c < cols; ++c) {
    const Rational &v = aug[c][cols];
    if (denominator(v) != 1) {
      std::ostringstream os;
      os << "gamma(" << indices[c].first << "," << indices[c].second << ") = " << v
         << " is not an integer";
      throw NoSolution(os.str());
    }
    gamma(indices[c].first, indices[c].second) =
        static_cast<std::int64_t>(numerator(v));
  }
  if (gamma.reconstruct() != m)
    throw NoSolution("gamma expansion does not reconstruct the matrix exactly");
  return gamma;
}

} // namespace twosided
