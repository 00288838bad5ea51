#pragma once

// Permutation cosets, code equivalence and coset intersection by exact
// backtracking. Permutations act on [0, degree) and compose left to right:
// (a b)[x] = b[a[x]]. A matrix M^s moves column j to column s[j].

#include <optional>
#include <vector>

#include "extiso/cayley.hpp"
#include "extiso/modlinalg.hpp"

namespace extiso {

Perm perm_identity(std::size_t m);
Perm perm_compose(const Perm& a, const Perm& b);  // a then b
Perm perm_inverse(const Perm& a);

constexpr std::size_t kDefaultCosetCap = 100000;

struct PermCoset {
  std::size_t degree = 0;
  std::vector<Perm> generators;  // of P
  Perm representative;           // sigma; the coset is P sigma
  bool empty = true;

  static PermCoset none(std::size_t m);
  static PermCoset group(std::size_t m, std::vector<Perm> gens);
  // all elements, sorted; CapExceeded past cap
  std::vector<Perm> elements(std::size_t cap = kDefaultCosetCap) const;
  bool contains(const Perm& s, std::size_t cap = kDefaultCosetCap) const;
  std::size_t size(std::size_t cap = kDefaultCosetCap) const { return empty ? 0 : elements(cap).size(); }
};

// All subgroup elements generated by gens (closure), sorted.
std::vector<Perm> perm_group_elements(std::size_t m, const std::vector<Perm>& gens, std::size_t cap);

struct BlockStructure {
  std::vector<std::vector<std::size_t>> blocks;  // columns of each block, in order
  std::vector<std::size_t> cls;                  // isomorphism class per block
  std::size_t degree() const;
  bool valid() const;
};

// prod_i S_{l_i} acting by moving same-class blocks rigidly.
PermCoset block_group(const BlockStructure& bs);

// {s rigid block permutation : rowspan(M1^s) = rowspan(M2)} over GF(p).
PermCoset code_equivalence_coset(const Mat& m1, const Mat& m2, std::uint32_t p, const BlockStructure& allowed,
                                 std::size_t cap = kDefaultCosetCap);

PermCoset coset_intersection(const PermCoset& c1, const PermCoset& c2, std::size_t cap = kDefaultCosetCap);

Mat permute_columns(const Mat& m, const Perm& s);

}  // namespace extiso
