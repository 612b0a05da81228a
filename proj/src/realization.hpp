#pragma once

// Exact realizations used only while enumerating a group.  Each one is a
// faithful left action of W on small integer vectors ("states").

#include <cstdint>
#include <span>
#include <vector>

#include "twosided/coxeter.hpp"

namespace twosided::detail {

/// a + b*phi with phi the golden ratio (phi^2 = phi + 1).
struct GoldenInt {
  std::int32_t a = 0;
  std::int32_t b = 0;

  friend GoldenInt operator*(GoldenInt x, GoldenInt y) {
    return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
  friend GoldenInt operator-(GoldenInt x, GoldenInt y) { return {x.a - y.a, x.b - y.b}; }
  bool operator==(const GoldenInt &) const = default;
};

/// Left action of a product of irreducible finite Coxeter groups.
///
/// Crystallographic and H components act on weight coordinates of the orbit
/// of rho (all coordinates 1) through s_i(c)_j = c_j - c_i * M(i,j), where M
/// is a Cartan-type matrix whose off-diagonal products are 4cos^2(pi/m).
/// Dihedral components I2(m) store (length, first letter) of the alternating
/// reduced word.
class Realization {
public:
  explicit Realization(const CoxeterSystem &system);

  int width() const { return width_; }
  std::vector<std::int32_t> initial_state() const;
  /// out = s . in
  void apply(std::span<const std::int32_t> in, int s, std::span<std::int32_t> out) const;

private:
  enum class Kind { Integer, Golden, Dihedral };
  struct Part {
    Kind kind;
    int offset;              ///< first state slot
    int rank;                ///< local rank
    int m = 0;               ///< dihedral parameter
    std::vector<GoldenInt> cartan; ///< rank*rank, integers have b = 0
  };
  struct GenRef {
    int part;
    int local;
  };

  std::vector<Part> parts_;
  std::vector<GenRef> gens_;
  int width_ = 0;
};

} // namespace twosided::detail
