#pragma once

// Dense kernels with a plain serial reference and an OpenMP version of each.
// The two variants must agree exactly; tests/kernels_test.cpp checks that.

#include <cstdint>
#include <span>
#include <vector>

#include "extiso/cayley.hpp"

namespace extiso::kernels {

bool associative_full_serial(const CayleyGroup& g);
bool associative_full_parallel(const CayleyGroup& g);

// Light's test: (xy)z = x(yz) for all x, y and z in gens.
bool light_test_serial(std::size_t n, const Cell* table, std::span<const Elem> gens);
bool light_test_parallel(std::size_t n, const Cell* table, std::span<const Elem> gens);

struct BitMatrix {
  std::size_t rows = 0, cols = 0, words = 0;
  std::vector<std::uint64_t> data;

  BitMatrix() = default;
  BitMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), words((c + 63) / 64), data(r * ((c + 63) / 64), 0) {}
  std::uint64_t* row(std::size_t i) { return data.data() + i * words; }
  const std::uint64_t* row(std::size_t i) const { return data.data() + i * words; }
  bool get(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1u; }
  void flip(std::size_t i, std::size_t j) { row(i)[j >> 6] ^= std::uint64_t{1} << (j & 63); }
  void set(std::size_t i, std::size_t j, bool v) {
    if (get(i, j) != v) flip(i, j);
  }
};

// Matrix over GF(p), p prime < 2^16.
struct ModMatrix {
  std::size_t rows = 0, cols = 0;
  std::uint32_t p = 2;
  std::vector<std::uint32_t> data;

  ModMatrix() = default;
  ModMatrix(std::size_t r, std::size_t c, std::uint32_t prime)
      : rows(r), cols(c), p(prime), data(r * c, 0) {}
  std::uint32_t* row(std::size_t i) { return data.data() + i * cols; }
  const std::uint32_t* row(std::size_t i) const { return data.data() + i * cols; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// In-place reduced row echelon form; returns the pivot columns (rank = size).
std::vector<std::size_t> gf2_rref_serial(BitMatrix& m);
std::vector<std::size_t> gf2_rref_parallel(BitMatrix& m);
std::vector<std::size_t> modp_rref_serial(ModMatrix& m);
std::vector<std::size_t> modp_rref_parallel(ModMatrix& m);

// Cocycle identity f(p,q) + f(pq,r) - f(q,r) - f(p,qr) = 0 over GF(2), trivial
// action, one row per (p, q, r) with r in rs, plus rows forcing normalization.
// Columns are all |Q|^2 pairs (p, q) at index p*|Q| + q.
BitMatrix cocycle_identity_system_serial(const CayleyGroup& q, std::span<const Elem> rs);
BitMatrix cocycle_identity_system_parallel(const CayleyGroup& q, std::span<const Elem> rs);

// Rows f_{u_q}(a, b) = [a = q] + [b = q] - [ab = q] for q != 1, over GF(p).
ModMatrix coboundary_generators_serial(const CayleyGroup& q, std::uint32_t p);
ModMatrix coboundary_generators_parallel(const CayleyGroup& q, std::uint32_t p);

}  // namespace extiso::kernels
