#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twosided/gen_set.hpp"
#include "twosided/group_table.hpp"

namespace twosided {

/// Integers indexed by pairs (I, J) of generator subsets, stored densely in
/// 4^n slots.
class SubsetPairTable {
public:
  SubsetPairTable() = default;
  explicit SubsetPairTable(int rank)
      : rank_(rank), values_(std::size_t{1} << (2 * rank), 0) {}

  int rank() const { return rank_; }
  std::int64_t &operator()(GenSet I, GenSet J) { return values_[slot(I, J)]; }
  std::int64_t operator()(GenSet I, GenSet J) const { return values_[slot(I, J)]; }
  const std::vector<std::int64_t> &values() const { return values_; }
  std::vector<std::int64_t> &values() { return values_; }
  std::int64_t total() const;

  bool operator==(const SubsetPairTable &) const = default;

private:
  std::size_t slot(GenSet I, GenSet J) const {
    return (static_cast<std::size_t>(I.bits()) << rank_) | J.bits();
  }
  int rank_ = 0;
  std::vector<std::int64_t> values_;
};

/// Flag f- and h-numbers of the two-sided complex.  f(I,J) counts faces
/// colored (I, J); h(I,J) counts elements with Des_L = I and Des_R = J.
struct FlagCounts {
  int rank = 0;
  SubsetPairTable f;
  SubsetPairTable h;
};

/// f(I, J) = |^{S-I} W^{S-J}| for all 4^n pairs, via count_double_quotient.
/// With `cross_check` false only the descent-filter count is used.
SubsetPairTable flag_f(const GroupTable &table, bool cross_check = true);

/// h(I, J) = #{w : Des_L(w) = I, Des_R(w) = J}.
SubsetPairTable flag_h_descents(const GroupTable &table);

/// Mobius inversion h(I,J) = sum over K in I, L in J of
/// (-1)^{|I-K|+|J-L|} f(K,L), summed term by term.  Throws NegativeEntry if
/// some h comes out negative.
SubsetPairTable flag_h_by_inclusion_exclusion(const SubsetPairTable &f);

/// Both directions of the f/h reciprocity, f(I,J) = sum_{K in I, L in J} h(K,L)
/// and its inverse, evaluated by fast subset transforms.
bool reciprocity_check(const SubsetPairTable &f, const SubsetPairTable &h);

inline FlagCounts flag_counts(const GroupTable &table, bool cross_check = true) {
  return {table.rank(), flag_f(table, cross_check), flag_h_descents(table)};
}

/// (n+1) x (n+1) matrix of two-sided Eulerian numbers: entry (i, j) counts
/// elements with i left descents and j right descents.
class EulerianMatrix {
public:
  EulerianMatrix() = default;
  explicit EulerianMatrix(int rank)
      : rank_(rank), entries_(static_cast<std::size_t>(rank + 1) * (rank + 1), 0) {}
  static EulerianMatrix from_rows(const std::vector<std::vector<std::int64_t>> &rows);

  int rank() const { return rank_; }
  std::int64_t &operator()(int i, int j) { return entries_[i * (rank_ + 1) + j]; }
  std::int64_t operator()(int i, int j) const { return entries_[i * (rank_ + 1) + j]; }
  std::vector<std::vector<std::int64_t>> rows() const;
  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> column_sums() const;
  std::int64_t total() const;

  bool operator==(const EulerianMatrix &) const = default;

private:
  int rank_ = 0;
  std::vector<std::int64_t> entries_;
};

/// Census of (des_L, des_R) over the group.
EulerianMatrix eulerian_matrix(const GroupTable &table);

/// W(x,y) = sum_{I,J} f(I,J) x^|I| y^|J| (1-x)^{n-|I|} (1-y)^{n-|J|}.
EulerianMatrix eulerian_from_flag(const SubsetPairTable &f);

/// Computes both routes and throws MethodMismatch if they differ.
EulerianMatrix verified_eulerian(const GroupTable &table, const SubsetPairTable &f);

/// <i,j> = <j,i> and <i,j> = <n-i,n-j>.
bool check_symmetries(const EulerianMatrix &m);

/// Coefficients of sum_w t^{des_L(w) + des_R(w)}.
std::vector<std::int64_t> descent_sum_polynomial(const GroupTable &table);

/// h specialized at x_i = y_i = t: coefficient of t^d is the sum of h(I,J)
/// over |I| + |J| = d.
std::vector<std::int64_t> specialize_h(const SubsetPairTable &h);

/// Coefficients gamma(a, b), 0 <= 2a + b <= n, of
/// W(x,y) = sum gamma(a,b) (xy)^a (x+y)^b (1+xy)^{n-2a-b}.
class GammaTable {
public:
  GammaTable() = default;
  explicit GammaTable(int rank);

  int rank() const { return rank_; }
  std::int64_t &operator()(int a, int b) { return values_[slot(a, b)]; }
  std::int64_t operator()(int a, int b) const { return values_[slot(a, b)]; }
  /// Basis indices (a, b) in lexicographic order.
  const std::vector<std::pair<int, int>> &indices() const { return indices_; }

  /// Printed layout: row a + b, column a, columns 0..floor(n/2), rows up to
  /// the last one holding a nonzero entry.  With this convention the A2
  /// expansion (gamma(0,0) = 1, gamma(1,0) = 2) prints as [[1,0],[0,2]] and
  /// A3 as [[1,0],[0,7],[0,1]].
  std::vector<std::vector<std::int64_t>> display_rows() const;
  static GammaTable from_display_rows(int rank, const std::vector<std::vector<std::int64_t>> &rows);

  /// Expands sum gamma(a,b) (xy)^a (x+y)^b (1+xy)^{n-2a-b}.
  EulerianMatrix reconstruct() const;
  /// Basis indices with a negative coefficient.
  std::vector<std::pair<int, int>> negative_entries() const;

  bool operator==(const GammaTable &) const = default;

private:
  std::size_t slot(int a, int b) const;
  int rank_ = 0;
  std::vector<std::pair<int, int>> indices_;
  std::vector<std::int64_t> values_;
};

/// The (n+1)^2 coefficient matrix of (xy)^a (x+y)^b (1+xy)^{n-2a-b}.
EulerianMatrix gamma_basis_element(int rank, int a, int b);

/// Solves for the gamma coefficients by exact rational elimination with the
/// basis in lexicographic order.  Throws NoSolution if a basis column has no
/// pivot, the system is inconsistent (the residual is reported), or the
/// solution is not integral.  Negative coefficients are returned as data.
GammaTable gamma_expansion(const EulerianMatrix &m);

} // namespace twosided
