#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace sflat {

// Components of a k-form are indexed by strictly increasing multi-indices,
// stored as bitmasks over axes and ordered lexicographically. Signs are
// permutation parities computed once per (dim, k).

inline int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

struct IndexTable {
  int dim = 0, degree = 0;
  std::vector<std::uint8_t> masks;       // component -> axis bitmask
  std::array<int, 16> index_of;          // axis bitmask -> component (or -1)

  IndexTable() { index_of.fill(-1); }

  static const IndexTable& get(int dim, int degree);

  int count() const { return static_cast<int>(masks.size()); }
};

// Parity sign of merging two disjoint increasing index sets a and b into one
// increasing set: (-1)^{#inversions between a and b}.
inline int merge_sign(std::uint8_t a, std::uint8_t b) {
  int inv = 0;
  for (int i = 0; i < 8; ++i)
    if (b & (1u << i)) inv += std::popcount(static_cast<unsigned>(a >> (i + 1)));
  return (inv & 1) ? -1 : 1;
}

// Sign of the permutation (I, I^c) relative to (0, 1, ..., dim-1).
inline int complement_sign(std::uint8_t mask, int dim) {
  std::uint8_t comp = static_cast<std::uint8_t>(((1u << dim) - 1u) & ~mask);
  return merge_sign(mask, comp);
}

// Interior product with coordinate axis: i ranks inside the sorted index set.
// iota_{e_axis} dx_I = (-1)^{position of axis in I} dx_{I minus axis}.
inline int interior_sign(std::uint8_t mask, int axis) {
  int pos = std::popcount(static_cast<unsigned>(mask & ((1u << axis) - 1u)));
  return (pos & 1) ? -1 : 1;
}

}  // namespace sflat
