#include "realization.hpp"

#include <algorithm>

#include "twosided/errors.hpp"

namespace twosided::detail {

Realization::Realization(const CoxeterSystem &system) : gens_(system.rank()) {
  const auto &matrix = system.matrix();
  for (const auto &comp : system.components()) {
    Part part;
    part.rank = static_cast<int>(comp.generators.size());
    part.offset = width_;
    const bool dihedral = comp.type.family == Family::I;
    const bool golden = comp.type.family == Family::H;
    if (dihedral) {
      part.kind = Kind::Dihedral;
      part.m = comp.type.m;
      width_ += 2;
    } else {
      part.kind = golden ? Kind::Golden : Kind::Integer;
      const int k = part.rank;
      part.cartan.assign(static_cast<std::size_t>(k) * k, GoldenInt{});
      for (int i = 0; i < k; ++i) {
        part.cartan[i * k + i] = {2, 0};
        for (int j = i + 1; j < k; ++j) {
          const int m = matrix(comp.generators[i], comp.generators[j]);
          GoldenInt ij{0, 0}, ji{0, 0};
          switch (m) {
          case 2:
            break;
          case 3:
            ij = ji = {-1, 0};
            break;
          case 4:
            ij = {-1, 0};
            ji = {-2, 0};
            break;
          case 5:
            ij = ji = {0, -1};
            break;
          case 6:
            ij = {-1, 0};
            ji = {-3, 0};
            break;
          default:
            throw NotFinite("no exact realization for bond m = " + std::to_string(m));
          }
          part.cartan[i * k + j] = ij;
          part.cartan[j * k + i] = ji;
        }
      }
      width_ += golden ? 2 * k : k;
    }
    const int index = static_cast<int>(parts_.size());
    for (int i = 0; i < part.rank; ++i)
      gens_[comp.generators[i]] = {index, i};
    parts_.push_back(std::move(part));
  }
}

std::vector<std::int32_t> Realization::initial_state() const {
  std::vector<std::int32_t> state(width_, 0);
  for (const auto &part : parts_) {
    if (part.kind == Kind::Integer)
      std::fill_n(state.begin() + part.offset, part.rank, 1);
    else if (part.kind == Kind::Golden)
      for (int i = 0; i < part.rank; ++i)
        state[part.offset + 2 * i] = 1;
  }
  return state;
}

void Realization::apply(std::span<const std::int32_t> in, int s,
                        std::span<std::int32_t> out) const {
  std::copy(in.begin(), in.end(), out.begin());
  const GenRef ref = gens_[s];
  const Part &part = parts_[ref.part];
  const int k = part.rank;
  const int i = ref.local;

  switch (part.kind) {
  case Kind::Integer: {
    const std::int32_t ci = in[part.offset + i];
    for (int j = 0; j < k; ++j) {
      const std::int32_t mij = part.cartan[i * k + j].a;
      if (mij != 0)
        out[part.offset + j] = in[part.offset + j] - ci * mij;
    }
    break;
  }
  case Kind::Golden: {
    const GoldenInt ci{in[part.offset + 2 * i], in[part.offset + 2 * i + 1]};
    for (int j = 0; j < k; ++j) {
      const GoldenInt mij = part.cartan[i * k + j];
      if (mij.a == 0 && mij.b == 0)
        continue;
      const GoldenInt cj{in[part.offset + 2 * j], in[part.offset + 2 * j + 1]};
      const GoldenInt r = cj - ci * mij;
      out[part.offset + 2 * j] = r.a;
      out[part.offset + 2 * j + 1] = r.b;
    }
    break;
  }
  case Kind::Dihedral: {
    const int len = in[part.offset];
    const int first = in[part.offset + 1];
    int new_len, new_first;
    if (len == part.m || (len > 0 && first == i)) {
      // s is a left descent: strip the leading letter
      new_len = len - 1;
      new_first = new_len == 0 ? 0 : 1 - i;
    } else {
      new_len = len + 1;
      new_first = new_len == part.m ? 0 : i;
    }
    out[part.offset] = new_len;
    out[part.offset + 1] = new_first;
    break;
  }
  }
}

} // namespace twosided::detail
