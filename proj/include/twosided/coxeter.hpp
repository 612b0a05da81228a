#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace twosided {

/// Symmetric matrix of Coxeter exponents m(s,t).  m(s,s) = 1, m(s,t) >= 2
/// otherwise, and the value 0 stands for infinity.
class CoxeterMatrix {
public:
  CoxeterMatrix() = default;
  /// Validates symmetry and the diagonal; throws InvalidArgument.
  CoxeterMatrix(int rank, std::vector<int> entries);
  static CoxeterMatrix from_rows(const std::vector<std::vector<int>> &rows);

  int rank() const { return rank_; }
  int operator()(int s, int t) const { return entries_[s * rank_ + t]; }
  const std::vector<int> &entries() const { return entries_; }

  bool operator==(const CoxeterMatrix &) const = default;

private:
  int rank_ = 0;
  std::vector<int> entries_;
};

enum class Family { A, B, D, E, F, H, I };

/// Label of an irreducible finite Coxeter group, e.g. B4 or I2(7).
struct CoxeterType {
  Family family = Family::A;
  int rank = 1;
  int m = 0; ///< dihedral parameter, only meaningful for Family::I

  std::string label() const;
  /// |W| of this irreducible type; saturates at UINT64_MAX.
  std::uint64_t order() const;
  bool operator==(const CoxeterType &) const = default;
};

/// An irreducible component together with the global generator indices it uses.
struct Component {
  CoxeterType type;
  std::vector<int> generators; ///< increasing
};

/// A Coxeter matrix known to describe a finite group.
class CoxeterSystem {
public:
  CoxeterSystem(CoxeterMatrix matrix, std::vector<Component> components);

  const CoxeterMatrix &matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  const std::vector<Component> &components() const { return components_; }

  /// Components joined by 'x' in order of their smallest generator, e.g. "B4xA1".
  std::string label() const;
  /// Product of the component orders (saturating).
  std::uint64_t order() const;
  /// True iff the system is a single component of type A with generator i
  /// adjacent to i+1, i.e. the symmetric group S_{n+1} with s_i = (i i+1).
  bool is_standard_type_a() const;

private:
  CoxeterMatrix matrix_;
  std::vector<Component> components_;
};

/// Splits the Coxeter graph into connected components and identifies each
/// one in the finite classification.  Throws NotFinite naming the offending
/// component when any component is affine or indefinite.
CoxeterSystem classify_finite(const CoxeterMatrix &matrix);

/// Coxeter matrix of an irreducible finite type in Bourbaki numbering.
CoxeterMatrix standard_matrix(const CoxeterType &type);

/// Parses labels such as "A3", "B4xA1", "I2(7)", "G2", "A2~" into a Coxeter
/// matrix.  A trailing '~' requests the affine diagram of the given finite
/// type (supported for A, C and G); such matrices are later rejected by
/// classify_finite.  Throws InvalidArgument on syntax errors.
CoxeterMatrix parse_type_spec(std::string_view spec);

} // namespace twosided
