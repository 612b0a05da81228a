#include "twosided/contingency.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "twosided/errors.hpp"

namespace twosided {

namespace {

void require_symmetric_group(const GroupTable &table) {
  if (!table.system().is_standard_type_a())
    throw WrongType("contingency tables model only the symmetric group with s_i = (i i+1); got " +
                    table.system().label());
}

std::vector<int> prefix_ends(const std::vector<int> &sums) {
  std::vector<int> out;
  int acc = 0;
  for (int s : sums)
    out.push_back(acc += s);
  return out;
}

/// Block index of each item 1..n (index 0 unused) for blocks of the given sizes.
std::vector<int> block_of(const std::vector<int> &sizes, int n) {
  std::vector<int> out(n + 1, 0);
  int item = 1;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    for (int k = 0; k < sizes[b]; ++k)
      out[item++] = static_cast<int>(b);
  return out;
}

/// Sizes of the blocks of 1..n separated at the gaps g (between g and g+1)
/// whose generator s_g lies in `cuts`.
std::vector<int> block_sizes(GenSet cuts, int n) {
  std::vector<int> sizes;
  int start = 1;
  for (int g = 1; g < n; ++g)
    if (cuts.contains(g - 1)) {
      sizes.push_back(g - start + 1);
      start = g + 1;
    }
  sizes.push_back(n - start + 1);
  return sizes;
}

GenSet cuts_from_sums(const std::vector<int> &sums, int n) {
  GenSet cuts;
  for (int end : prefix_ends(sums))
    if (end < n)
      cuts = cuts.with(end - 1);
  return cuts;
}

ContingencyTable transpose(const ContingencyTable &t) {
  std::vector<int> cells(static_cast<std::size_t>(t.rows()) * t.cols());
  for (int r = 0; r < t.rows(); ++r)
    for (int c = 0; c < t.cols(); ++c)
      cells[c * t.rows() + r] = t(r, c);
  return ContingencyTable(t.cols(), t.rows(), std::move(cells));
}

/// Row splits only; column splits come from the transpose.
void row_splits(const ContingencyTable &t, std::set<ContingencyTable> &out, bool transposed) {
  const int R = t.rows(), C = t.cols();
  for (int r = 0; r < R; ++r) {
    std::vector<int> v(C);
    for (int c = 0; c < C; ++c)
      v[c] = t(r, c);
    std::vector<int> lower(C, 0);
    // Odometer over 0 <= lower <= v.
    while (true) {
      const int lo = std::accumulate(lower.begin(), lower.end(), 0);
      const int hi = std::accumulate(v.begin(), v.end(), 0) - lo;
      if (lo > 0 && hi > 0) {
        std::vector<int> cells;
        cells.reserve(static_cast<std::size_t>(R + 1) * C);
        for (int q = 0; q < R; ++q) {
          if (q == r) {
            cells.insert(cells.end(), lower.begin(), lower.end());
            for (int c = 0; c < C; ++c)
              cells.push_back(v[c] - lower[c]);
          } else {
            for (int c = 0; c < C; ++c)
              cells.push_back(t(q, c));
          }
        }
        ContingencyTable split(R + 1, C, std::move(cells));
        out.insert(transposed ? transpose(split) : split);
      }
      int c = 0;
      while (c < C && lower[c] == v[c])
        lower[c++] = 0;
      if (c == C)
        break;
      ++lower[c];
    }
  }
}

} // namespace

ContingencyTable::ContingencyTable(int rows, int cols, std::vector<int> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (rows < 1 || cols < 1 || cells_.size() != static_cast<std::size_t>(rows) * cols)
    throw InvariantViolation("contingency table needs a nonempty rows x cols array");
  if (std::any_of(cells_.begin(), cells_.end(), [](int x) { return x < 0; }))
    throw InvariantViolation("contingency table has a negative cell");
  for (int s : row_sums())
    if (s == 0)
      throw InvariantViolation("contingency table has an empty row");
  for (int s : col_sums())
    if (s == 0)
      throw InvariantViolation("contingency table has an empty column");
}

ContingencyTable ContingencyTable::from_display(const std::vector<std::vector<int>> &top_first) {
  if (top_first.empty())
    throw InvariantViolation("contingency table needs at least one row");
  const int R = static_cast<int>(top_first.size());
  const int C = static_cast<int>(top_first.front().size());
  std::vector<int> cells;
  for (int r = R - 1; r >= 0; --r) {
    if (static_cast<int>(top_first[r].size()) != C)
      throw InvariantViolation("contingency table rows differ in length");
    cells.insert(cells.end(), top_first[r].begin(), top_first[r].end());
  }
  return ContingencyTable(R, C, std::move(cells));
}

int ContingencyTable::total() const { return std::accumulate(cells_.begin(), cells_.end(), 0); }

std::vector<int> ContingencyTable::row_sums() const {
  std::vector<int> out(rows_, 0);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      out[r] += (*this)(r, c);
  return out;
}

std::vector<int> ContingencyTable::col_sums() const {
  std::vector<int> out(cols_, 0);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      out[c] += (*this)(r, c);
  return out;
}

std::vector<std::vector<int>> ContingencyTable::display() const {
  std::vector<std::vector<int>> out;
  for (int r = rows_ - 1; r >= 0; --r)
    out.emplace_back(cells_.begin() + r * cols_, cells_.begin() + (r + 1) * cols_);
  return out;
}

std::vector<int> to_one_line(const GroupTable &table, ElementId w) {
  require_symmetric_group(table);
  const int n = table.rank() + 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  // w = s_{a1} ... s_{ak}: apply the letters to the values, innermost first.
  const auto word = reduced_word(table, w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int lo = *it + 1;
    for (int &v : perm)
      v = v == lo ? lo + 1 : v == lo + 1 ? lo : v;
  }
  return perm;
}

ElementId from_one_line(const GroupTable &table, std::span<const int> one_line) {
  require_symmetric_group(table);
  const int n = table.rank() + 1;
  std::vector<int> perm(one_line.begin(), one_line.end());
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(n);
  std::iota(expected.begin(), expected.end(), 1);
  if (sorted != expected)
    throw InvalidArgument("one-line notation is not a permutation of 1.." + std::to_string(n));
  // Bubble sort: w = w' s_i whenever w(i) > w(i+1).
  std::vector<int> word;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < n; ++i)
      if (perm[i] > perm[i + 1]) {
        std::swap(perm[i], perm[i + 1]);
        word.push_back(i);
        changed = true;
      }
  }
  std::reverse(word.begin(), word.end());
  return element_from_word(table, word);
}

ContingencyTable face_to_table(const GroupTable &table, const Face &face) {
  require_symmetric_group(table);
  const int n = table.rank() + 1;
  const GenSet S = table.generators();
  const auto row_sizes = block_sizes(S - face.left, n);
  const auto col_sizes = block_sizes(S - face.right, n);
  const auto row_of = block_of(row_sizes, n);
  const auto col_of = block_of(col_sizes, n);
  const auto perm = to_one_line(table, face.w);
  const int R = static_cast<int>(row_sizes.size());
  const int C = static_cast<int>(col_sizes.size());
  std::vector<int> cells(static_cast<std::size_t>(R) * C, 0);
  for (int pos = 1; pos <= n; ++pos)
    ++cells[row_of[perm[pos - 1]] * C + col_of[pos]];
  return ContingencyTable(R, C, std::move(cells));
}

Face table_to_face(const GroupTable &table, const ContingencyTable &t) {
  require_symmetric_group(table);
  const int n = table.rank() + 1;
  if (t.total() != n)
    throw InvariantViolation("table total " + std::to_string(t.total()) + " differs from n = " +
                             std::to_string(n));
  const GenSet S = table.generators();
  const auto rows = t.row_sums();
  const auto cols = t.col_sums();
  // Next unused value in each row block, bottom to top.
  std::vector<int> next(rows.size());
  int start = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    next[r] = start;
    start += rows[r];
  }
  std::vector<int> perm;
  perm.reserve(n);
  for (int c = 0; c < t.cols(); ++c)
    for (int r = 0; r < t.rows(); ++r)
      for (int k = 0; k < t(r, c); ++k)
        perm.push_back(next[r]++);
  return {S - cuts_from_sums(rows, n), from_one_line(table, perm), S - cuts_from_sums(cols, n)};
}

std::vector<ContingencyTable> lower_covers(const ContingencyTable &t) {
  std::set<ContingencyTable> out;
  const int R = t.rows(), C = t.cols();
  for (int r = 0; r + 1 < R; ++r) {
    std::vector<int> cells;
    for (int q = 0; q < R; ++q) {
      if (q == r + 1)
        continue;
      for (int c = 0; c < C; ++c)
        cells.push_back(t(q, c) + (q == r ? t(r + 1, c) : 0));
    }
    out.insert(ContingencyTable(R - 1, C, std::move(cells)));
  }
  for (int c = 0; c + 1 < C; ++c) {
    std::vector<int> cells;
    for (int q = 0; q < R; ++q)
      for (int k = 0; k < C; ++k) {
        if (k == c + 1)
          continue;
        cells.push_back(t(q, k) + (k == c ? t(q, c + 1) : 0));
      }
    out.insert(ContingencyTable(R, C - 1, std::move(cells)));
  }
  return {out.begin(), out.end()};
}

std::vector<ContingencyTable> upper_covers(const ContingencyTable &t) {
  std::set<ContingencyTable> out;
  row_splits(t, out, false);
  row_splits(transpose(t), out, true);
  return {out.begin(), out.end()};
}

bool refinement_leq(const ContingencyTable &a, const ContingencyTable &b) {
  if (a.total() != b.total())
    return false;
  auto coarsen = [](const std::vector<int> &fine_sums, const std::vector<int> &coarse_sums,
                    std::vector<int> &map) {
    const auto fine = prefix_ends(fine_sums);
    const auto coarse = prefix_ends(coarse_sums);
    for (int end : coarse)
      if (!std::binary_search(fine.begin(), fine.end(), end))
        return false;
    map.resize(fine.size());
    std::size_t j = 0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      while (coarse[j] < fine[i])
        ++j;
      map[i] = static_cast<int>(j);
    }
    return true;
  };
  std::vector<int> row_map, col_map;
  if (!coarsen(b.row_sums(), a.row_sums(), row_map) ||
      !coarsen(b.col_sums(), a.col_sums(), col_map))
    return false;
  std::vector<int> agg(static_cast<std::size_t>(a.rows()) * a.cols(), 0);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      agg[row_map[r] * a.cols() + col_map[c]] += b(r, c);
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (agg[r * a.cols() + c] != a(r, c))
        return false;
  return true;
}

std::vector<ContingencyTable> enumerate_tables(int n) {
  std::vector<ContingencyTable> out;
  for (int R = 1; R <= n; ++R)
    for (int C = 1; C <= n; ++C) {
      const int cells = R * C;
      std::vector<int> v(cells, 0);
      std::function<void(int, int)> fill = [&](int k, int left) {
        if (k == cells - 1) {
          v[k] = left;
          std::vector<int> rs(R, 0), cs(C, 0);
          for (int r = 0; r < R; ++r)
            for (int c = 0; c < C; ++c) {
              rs[r] += v[r * C + c];
              cs[c] += v[r * C + c];
            }
          if (std::count(rs.begin(), rs.end(), 0) == 0 && std::count(cs.begin(), cs.end(), 0) == 0)
            out.emplace_back(R, C, v);
          return;
        }
        for (int x = 0; x <= left; ++x) {
          v[k] = x;
          fill(k + 1, left - x);
        }
      };
      fill(0, n);
    }
  std::sort(out.begin(), out.end());
  return out;
}

CheckResult verify_isomorphism(const GroupTable &table) {
  require_symmetric_group(table);
  const int n = table.rank() + 1;
  const int rank = table.rank();
  const XiComplex complex(table);
  CheckResult result;

  std::vector<Face> faces;
  std::map<ContingencyTable, std::uint64_t> image;
  for (std::uint64_t i = 0; i < complex.size(); ++i) {
    const Face f = complex.face_at(i);
    faces.push_back(f);
    const ContingencyTable t = face_to_table(table, f);
    ++result.checked;
    if (t.rank() != f.rank(rank)) {
      result.fail("rank of the table of " + face_label(table, f) + " differs from the face rank");
      return result;
    }
    if (table_to_face(table, t) != f) {
      result.fail("round trip fails for " + face_label(table, f));
      return result;
    }
    if (!image.emplace(t, i).second) {
      result.fail("two faces share a table, one of them " + face_label(table, f));
      return result;
    }
  }
  const auto all = enumerate_tables(n);
  if (all.size() != image.size()) {
    result.fail("the complex has " + std::to_string(image.size()) + " faces but there are " +
                std::to_string(all.size()) + " tables of total " + std::to_string(n));
    return result;
  }
  for (const auto &t : all)
    if (!image.count(t)) {
      result.fail("some table of total " + std::to_string(n) + " is not hit");
      return result;
    }

  // Covers, both directions.
  std::vector<std::uint64_t> up_count(faces.size(), 0);
  for (std::uint64_t i = 0; i < faces.size(); ++i) {
    const Face &g = faces[i];
    std::set<ContingencyTable> below;
    for (const Face &f : lower_interval(table, g))
      if (f.rank(rank) + 1 == g.rank(rank)) {
        below.insert(face_to_table(table, f));
        ++up_count[complex.index_of(f)];
      }
    const auto covers = lower_covers(face_to_table(table, g));
    if (std::set<ContingencyTable>(covers.begin(), covers.end()) != below) {
      result.fail("lower covers of " + face_label(table, g) + " do not match the merged tables");
      return result;
    }
  }
  for (const auto &[t, i] : image) {
    const auto ups = upper_covers(t);
    if (ups.size() != up_count[i]) {
      result.fail("face " + face_label(table, faces[i]) + " has " + std::to_string(up_count[i]) +
                  " upper covers but its table has " + std::to_string(ups.size()));
      return result;
    }
    for (const auto &u : ups) {
      const Face g = table_to_face(table, u);
      if (!leq(table, faces[i], g) || g.rank(rank) != faces[i].rank(rank) + 1) {
        result.fail("split table of " + face_label(table, faces[i]) + " is not an upper cover");
        return result;
      }
    }
  }

  // Whole order.
  std::vector<ContingencyTable> tables;
  for (const Face &f : faces)
    tables.push_back(face_to_table(table, f));
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (std::size_t j = 0; j < faces.size(); ++j) {
      ++result.checked;
      if (leq(table, faces[i], faces[j]) != refinement_leq(tables[i], tables[j])) {
        result.fail("refinement order disagrees with the face order at " +
                    face_label(table, faces[i]) + ", " + face_label(table, faces[j]));
        return result;
      }
    }
  return result;
}

OrderedSetPartition table_to_ordered_partition(const ContingencyTable &t) {
  for (int s : t.row_sums())
    if (s != 1)
      throw WrongShape("ordered set partitions need every row sum to be 1");
  OrderedSetPartition out(t.cols());
  for (int c = 0; c < t.cols(); ++c)
    for (int r = 0; r < t.rows(); ++r)
      if (t(r, c) != 0)
        out[c].push_back(r + 1);
  return out;
}

KWayTable::KWayTable(std::vector<int> shape, std::vector<int> cells)
    : shape_(std::move(shape)), cells_(std::move(cells)) {
  if (shape_.size() < 2)
    throw InvalidArgument("k-way tables need k >= 2");
  strides_.assign(shape_.size(), 1);
  std::size_t size = 1;
  for (std::size_t a = shape_.size(); a-- > 0;) {
    if (shape_[a] < 1)
      throw InvalidArgument("k-way table extents must be positive");
    strides_[a] = static_cast<int>(size);
    size *= static_cast<std::size_t>(shape_[a]);
  }
  if (cells_.size() != size)
    throw InvalidArgument("k-way table cell count does not match its shape");
  if (std::any_of(cells_.begin(), cells_.end(), [](int x) { return x < 0; }))
    throw InvariantViolation("k-way table has a negative cell");
}

int KWayTable::total() const { return std::accumulate(cells_.begin(), cells_.end(), 0); }

int KWayTable::at(std::span<const int> index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a)
    flat += static_cast<std::size_t>(index[a]) * strides_[a];
  return cells_[flat];
}

int KWayTable::marginal(int axis, int slice) const {
  int sum = 0;
  for (std::size_t flat = 0; flat < cells_.size(); ++flat)
    if ((static_cast<int>(flat) / strides_[axis]) % shape_[axis] == slice)
      sum += cells_[flat];
  return sum;
}

bool KWayTable::margins_positive() const {
  for (int a = 0; a < arity(); ++a)
    for (int s = 0; s < shape_[a]; ++s)
      if (marginal(a, s) <= 0)
        return false;
  return true;
}

std::uint64_t kway_maximal_count(int k, int n) {
  if (k < 2 || k > 3 || n < 1 || n > 4)
    throw CapacityExceeded("k-way enumeration supports k in {2,3} and n <= 4");
  // A table with every marginal sum 1 has n slices along each axis.
  const std::vector<int> shape(k, n);
  int cells = 1;
  for (int i = 0; i < k; ++i)
    cells *= n;

  std::uint64_t count = 0;
  std::vector<int> chosen(n);
  std::iota(chosen.begin(), chosen.end(), 0);
  while (true) {
    std::vector<int> flat(cells, 0);
    for (int c : chosen)
      flat[c] = 1;
    const KWayTable table(shape, std::move(flat));
    bool unit = true;
    for (int a = 0; a < k && unit; ++a)
      for (int s = 0; s < n && unit; ++s)
        unit = table.marginal(a, s) == 1;
    count += unit;

    // next n-combination of {0..cells-1}
    int i = n - 1;
    while (i >= 0 && chosen[i] == cells - n + i)
      --i;
    if (i < 0)
      break;
    ++chosen[i];
    for (int j = i + 1; j < n; ++j)
      chosen[j] = chosen[j - 1] + 1;
  }
  return count;
}

} // namespace twosided
