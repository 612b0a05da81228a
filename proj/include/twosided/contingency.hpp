#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twosided/complex.hpp"
#include "twosided/group_table.hpp"

namespace twosided {

/// A two-way contingency table: nonnegative integers with positive row and
/// column sums.  Rows are stored bottom to top (row 0 is the bottom row, as
/// in the balls-in-boxes picture); display() and from_display() use the
/// printed top-row-first order.
class ContingencyTable {
public:
  /// `cells` is row-major with row 0 at the bottom.  Throws
  /// InvariantViolation on empty shape, negative cells or a zero margin.
  ContingencyTable(int rows, int cols, std::vector<int> cells);
  static ContingencyTable from_display(const std::vector<std::vector<int>> &top_first);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int total() const;
  /// Cell in row r (counted from the bottom) and column c.
  int operator()(int r, int c) const { return cells_[r * cols_ + c]; }
  std::vector<int> row_sums() const;
  std::vector<int> col_sums() const;
  /// Rank in refinement order: (rows - 1) + (cols - 1).
  int rank() const { return rows_ + cols_ - 2; }
  std::vector<std::vector<int>> display() const;

  auto operator<=>(const ContingencyTable &) const = default;

private:
  int rows_;
  int cols_;
  std::vector<int> cells_;
};

/// One-line notation w(1) ... w(n) of an element of S_n built as type A_{n-1}.
std::vector<int> to_one_line(const GroupTable &table, ElementId w);
/// Element with the given one-line notation (a permutation of 1..n).
ElementId from_one_line(const GroupTable &table, std::span<const int> one_line);

/// Counts balls in boxes: rows are the blocks of values cut at the gaps in
/// S-I, columns the blocks of positions cut at the gaps in S-J.  Throws
/// WrongType unless the group is S_n with the standard generators.
ContingencyTable face_to_table(const GroupTable &table, const Face &face);

/// Inverse of face_to_table; the representative places the balls of each
/// box in increasing order.  Throws InvariantViolation if the total differs
/// from n and WrongType for a non-symmetric group.
Face table_to_face(const GroupTable &table, const ContingencyTable &t);

/// Tables obtained by merging two adjacent rows or two adjacent columns.
std::vector<ContingencyTable> lower_covers(const ContingencyTable &t);
/// Tables obtained by splitting one row (or column) into two nonzero parts,
/// in either order; sorted and without duplicates.
std::vector<ContingencyTable> upper_covers(const ContingencyTable &t);

/// True iff `a` is a coarsening of `b`: a's rows and columns are sums of
/// consecutive blocks of b's, with matching aggregated cells.
bool refinement_leq(const ContingencyTable &a, const ContingencyTable &b);

/// Every table of total n, sorted.
std::vector<ContingencyTable> enumerate_tables(int n);

/// face_to_table is a bijection onto all tables of total n that carries
/// covers to covers in both directions, and refinement_leq agrees with the
/// face order on all pairs.  `table` must be S_n.
CheckResult verify_isomorphism(const GroupTable &table);

using OrderedSetPartition = std::vector<std::vector<int>>;

/// For a table with n rows of sum 1: per column, left to right, the rows
/// (1-based from the bottom) holding a ball.  Throws WrongShape otherwise.
OrderedSetPartition table_to_ordered_partition(const ContingencyTable &t);

/// A k-way table stored flat with explicit strides.
class KWayTable {
public:
  KWayTable(std::vector<int> shape, std::vector<int> cells);

  int arity() const { return static_cast<int>(shape_.size()); }
  const std::vector<int> &shape() const { return shape_; }
  int total() const;
  int at(std::span<const int> index) const;
  /// Sum over all cells whose coordinate on `axis` equals `slice`.
  int marginal(int axis, int slice) const;
  bool margins_positive() const;

private:
  std::vector<int> shape_;
  std::vector<int> strides_;
  std::vector<int> cells_;
};

/// Number of k-way tables of total n whose marginal sums are all 1, found by
/// brute force over 0/1 arrays.  Supports k in {2,3}, n <= 4; otherwise
/// throws CapacityExceeded.
std::uint64_t kway_maximal_count(int k, int n);

} // namespace twosided
