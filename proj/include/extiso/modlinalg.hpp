#pragma once

// Linear algebra over Z/p^e (local rings) and GF(p).

#include <cstdint>
#include <optional>
#include <vector>

namespace extiso {

using Vec = std::vector<std::uint32_t>;

struct ModRing {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::uint64_t m = 2;  // p^e

  ModRing() = default;
  ModRing(std::uint32_t prime, std::uint32_t exp);

  std::uint32_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(m);
    return static_cast<std::uint32_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + b) % m); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>((std::uint64_t{a} + m - b) % m); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return static_cast<std::uint32_t>(std::uint64_t{a} * b % m); }
  std::uint32_t neg(std::uint32_t a) const { return a ? static_cast<std::uint32_t>(m - a) : 0; }
  // p-adic valuation, e for zero
  std::uint32_t val(std::uint32_t a) const;
  std::uint64_t ppow(std::uint32_t t) const;
  std::uint32_t unit_inverse(std::uint32_t u) const;
};

// Submodule of (Z/p^e)^cols kept in Howell form, so reduce() yields a
// canonical representative of v + span.
class HowellSpan {
 public:
  HowellSpan(ModRing ring, std::size_t cols) : R_(ring), cols_(cols), pivot_row_(cols, npos) {}

  bool insert(Vec v);  // true if the span grew
  void reduce(Vec& v) const;
  bool contains(Vec v) const;
  bool same_span(const HowellSpan& o) const;
  std::size_t cols() const { return cols_; }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<Vec>& rows() const { return rows_; }
  const ModRing& ring() const { return R_; }
  // Pivot columns in increasing order.
  std::vector<std::size_t> pivots() const;
  // log_p of the span's order
  std::uint64_t log_size() const;

 private:
  static constexpr std::size_t npos = ~std::size_t{0};
  ModRing R_;
  std::size_t cols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<std::size_t> pivot_row_;  // by column
};

// Solve A x = b over Z/p^e; A given as rows.
std::optional<Vec> solve_local(const ModRing& R, const std::vector<Vec>& rows, const Vec& rhs, std::size_t ncols);

struct Congruence {
  std::vector<std::int64_t> coeffs;
  std::int64_t rhs = 0;
  std::uint64_t modulus = 1;
};

// Integer solution of a mixed-modulus system (CRT per prime + local elimination).
std::optional<std::vector<std::int64_t>> solve_congruences(const std::vector<Congruence>& eqs, std::size_t nvars);

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

// GF(p) helpers on row-major matrices stored as vectors of rows.
using Mat = std::vector<Vec>;
std::size_t rank_gfp(Mat rows, std::size_t ncols, std::uint32_t p);
Mat nullspace_gfp(const Mat& rows, std::size_t ncols, std::uint32_t p);  // {x : A x = 0}
std::optional<Mat> inverse_gfp(const Mat& a, std::uint32_t p);
Mat matmul_mod(const Mat& a, const Mat& b, std::uint64_t m);
Mat identity_mat(std::size_t k);

}  // namespace extiso
