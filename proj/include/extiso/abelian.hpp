#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "extiso/cayley.hpp"
#include "extiso/modlinalg.hpp"

namespace extiso {

// A = Z_{p1^m1} x ... x Z_{pk^mk}, primes ascending, exponents ascending per prime.
struct AbelianStructure {
  GroupPtr group;
  std::vector<Elem> basis;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> exps;
  std::vector<std::uint64_t> orders;  // p_i^{m_i}

  std::size_t k() const { return basis.size(); }
  std::span<const std::uint32_t> to_coords(Elem x) const { return {coords_.data() + x * k(), k()}; }
  Elem from_coords(std::span<const std::uint32_t> c) const;  // entries already reduced
  Elem from_coords_signed(std::span<const std::int64_t> c) const;
  // position of x in lexicographic coordinate order
  std::size_t coord_rank(Elem x) const { return rank_[x]; }
  Elem elem_at_rank(std::size_t r) const { return by_rank_[r]; }
  bool elementary() const;  // all exponents 1 and a single prime (or trivial)

  // filled by primary_decomposition
  std::vector<std::uint32_t> coords_;
  std::vector<std::size_t> rank_;
  std::vector<Elem> by_rank_;
};
using AbelianPtr = std::shared_ptr<const AbelianStructure>;

AbelianPtr primary_decomposition(const GroupPtr& a);
// (orders) as a comparable invariant
std::vector<std::uint64_t> abelian_invariants(const AbelianStructure& s);

struct AbelianAut {
  AbelianPtr structure;
  Mat matrix;  // k x k; y_i = sum_j a_ij x_j mod orders[i]
};

bool is_valid_abelian_aut(const AbelianStructure& s, const Mat& m);
Elem apply_aut(const AbelianAut& aut, Elem x);
void apply_aut_coords(const AbelianStructure& s, const Mat& m, std::span<const std::uint32_t> in,
                      std::span<std::uint32_t> out);
std::vector<Elem> aut_permutation(const AbelianAut& aut);
AbelianAut aut_from_permutation(const AbelianPtr& s, const std::vector<Elem>& perm);
AbelianAut identity_aut(const AbelianPtr& s);
AbelianAut inverse_aut(const AbelianAut& a);
AbelianAut compose_aut(const AbelianAut& second, const AbelianAut& first);

// |Aut(A)| by the closed formula for finite abelian p-groups; saturates at max.
std::uint64_t abelian_aut_count(const AbelianStructure& s);
constexpr std::size_t kDefaultAbelianAutCap = 100000;
std::vector<AbelianAut> enumerate_abelian_automorphisms(const AbelianPtr& s,
                                                        std::size_t cap = kDefaultAbelianAutCap);

namespace detail {
// All matrices satisfying the divisibility pattern and invertible mod p.
// transposed = true uses the mirrored pattern (kept for the orientation test).
std::vector<Mat> enumerate_aut_matrices(const AbelianStructure& s, bool transposed, std::size_t cap);
}  // namespace detail

struct AbelianEquation {
  std::vector<std::vector<std::int64_t>> coeffs;  // k rows, one per coordinate
  Elem target = 0;
};
std::optional<std::vector<std::int64_t>> solve_abelian_system(const AbelianStructure& s,
                                                             const std::vector<AbelianEquation>& eqs,
                                                             std::size_t nvars);

}  // namespace extiso
