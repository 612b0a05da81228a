#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twosided/double_coset.hpp"
#include "twosided/gen_set.hpp"
#include "twosided/group_table.hpp"

namespace twosided {

/// A face (I, w, J) of the two-sided Coxeter complex; w is minimal in
/// W_I w W_J.  Its rank is |S-I| + |S-J| and its dimension rank - 1.
struct Face {
  GenSet left;
  ElementId w;
  GenSet right;

  int rank(int n) const { return 2 * n - left.size() - right.size(); }
  int dim(int n) const { return rank(n) - 1; }
  auto operator<=>(const Face &) const = default;
};

/// Balanced coloring (S-I, S-J).
struct FaceColor {
  GenSet left;
  GenSet right;
  auto operator<=>(const FaceColor &) const = default;
};

/// "(I|w|J)" with subscript sets and w as a reduced word, e.g. "(1|s2s1|2)".
std::string face_label(const GroupTable &table, const Face &face);

/// Outcome of a verification pass.
struct CheckResult {
  bool ok = true;
  std::uint64_t checked = 0; ///< number of faces/pairs examined
  std::string failure;       ///< first violation, empty when ok

  explicit operator bool() const { return ok; }
  void fail(std::string what) {
    if (ok) {
      ok = false;
      failure = std::move(what);
    }
  }
};

/// Which faces a structural check visits: all of them (count == 0) or a
/// uniform sample drawn with a fixed seed.
struct FaceSample {
  std::uint64_t count = 0;
  std::uint64_t seed = 1;
};

inline constexpr std::uint64_t kDefaultFaceBudget = 200'000'000;

/// The face poset of the two-sided Coxeter complex, stored implicitly: the
/// faces represented by w are (I, w, J) with I in Asc_L(w), J in Asc_R(w),
/// and each block is addressed by compressing (I, J) into the ascent bits.
/// Holds a reference to the table, which must outlive it.
class XiComplex {
public:
  XiComplex(const GroupTable &table, std::uint64_t budget = kDefaultFaceBudget);

  const GroupTable &table() const { return *table_; }
  int rank() const { return table_->rank(); }
  std::uint64_t size() const { return offset_.back(); }
  std::uint64_t facet_count() const { return table_->order(); }

  /// Position of a face in [0, size()); throws InvalidArgument if the triple
  /// is not a face.
  std::uint64_t index_of(const Face &face) const;
  Face face_at(std::uint64_t index) const;
  /// Faces represented by w, in index order.
  std::uint64_t block_begin(ElementId w) const { return offset_[w.value]; }
  std::uint64_t block_end(ElementId w) const { return offset_[w.value + 1]; }

  template <typename Fn> void for_each_face(Fn &&fn) const {
    for (std::uint64_t i = 0; i < size(); ++i)
      fn(face_at(i));
  }

  /// Entry r is the number of faces of rank r (dimension r - 1), r = 0..2n.
  std::vector<std::uint64_t> count_by_rank() const;

private:
  const GroupTable *table_;
  std::vector<std::uint64_t> offset_;
};

/// Builds the implicit face store; throws CapacityExceeded over budget.
XiComplex all_faces(const GroupTable &table, std::uint64_t budget = kDefaultFaceBudget);

/// F <= G: I_F contains I_G, J_F contains J_G and W_{I_F} w_F W_{J_F} contains w_G.
bool leq(const GroupTable &table, const Face &f, const Face &g);

/// All faces below F (F included), one per pair (I', J') with I' >= I, J' >= J,
/// ordered by the compressed bits of (I'-I, J'-J).
std::vector<Face> lower_interval(const GroupTable &table, const Face &face);

FaceColor face_color(int rank, const Face &face);

/// R_w = (Asc_L(w), w, Asc_R(w)).
Face restriction(const GroupTable &table, ElementId w);

/// The 2n faces of rank 2n-1 under the facet (0, w, 0).
std::vector<Face> codim1_faces_of_facet(const GroupTable &table, ElementId w);

struct ShellingReport {
  /// Every facet after the first meets the earlier ones in a nonempty
  /// pure codimension-one subcomplex of its boundary.
  bool is_shelling = true;
  std::optional<std::size_t> first_failure; ///< 1-based position
  /// The intersection equals the union of the intervals below the faces
  /// ({s}, sw, 0), s in Des_L(w), and (0, ws, {t}), t in Des_R(w).
  bool descent_formula = true;
  std::optional<std::size_t> first_formula_mismatch; ///< 1-based position
  std::size_t positions_checked = 0;
};

/// Checks a facet ordering face by face.  When `positions` is nonempty only
/// those (0-based) positions are examined.  Throws NotAFacetPermutation if
/// `order` is not a permutation of the elements.
ShellingReport verify_shelling(const XiComplex &complex, std::span<const ElementId> order,
                               std::span<const std::size_t> positions = {});

/// Every interval of length two in the complex with a virtual top adjoined has
/// four elements.  The intervals that end at the virtual top are handled by
/// verify_pseudomanifold, which this calls.
CheckResult verify_thin(const XiComplex &complex);

/// Every face of rank 2n-1 lies in exactly two facets.
CheckResult verify_pseudomanifold(const XiComplex &complex);

/// Sum over nonempty faces of (-1)^dim.
std::int64_t euler_characteristic(const XiComplex &complex);

/// Booleanness of lower intervals: size 2^(|S-I|+|S-J|), distinct members,
/// and (I', J') -> face is an order isomorphism.
CheckResult verify_boolean_intervals(const XiComplex &complex, FaceSample sample = {});

/// The vertices below each face carry distinct colors whose union is the
/// face's color.
CheckResult verify_balanced(const XiComplex &complex, FaceSample sample = {});

/// Each face lies in exactly one interval [R_w, F_w], namely for its own w.
CheckResult verify_partition(const XiComplex &complex, FaceSample sample = {});

/// (I,u,J) <= (I',v,J') implies u <=_LR v, checked on every cover below
/// each sampled face (all faces: the full relation by transitivity).
CheckResult verify_weak_order_monotone(const XiComplex &complex, FaceSample sample = {});

struct SigmaReport {
  std::vector<Face> ideal;         ///< faces above (0, e, S), index order
  std::uint64_t coset_faces = 0;   ///< faces of the independently built complex
  CheckResult isomorphism;
};

/// The upper order ideal above (0, e, S), compared with the Coxeter complex of
/// left cosets w W_J built by closure under right multiplication.  Pairs are
/// compared exhaustively unless `pair_sample` is nonzero.
SigmaReport coxeter_subcomplex(const XiComplex &complex, std::uint64_t pair_sample = 0,
                               std::uint64_t seed = 1);

} // namespace twosided
