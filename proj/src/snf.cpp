#include "extiso/snf.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "extiso/core.hpp"

namespace extiso {

using boost::multiprecision::cpp_int;

std::optional<std::vector<std::int64_t>> solve_diophantine_snf(const std::vector<std::vector<std::int64_t>>& A,
                                                               const std::vector<std::int64_t>& B) {
  const std::size_t r = A.size();
  const std::size_t n = r ? A[0].size() : 0;
  std::vector<std::vector<cpp_int>> a(r, std::vector<cpp_int>(n));
  std::vector<cpp_int> b(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = A[i][j];
    b[i] = B[i];
  }
  std::vector<std::vector<cpp_int>> V(n, std::vector<cpp_int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) V[i][i] = 1;

  std::size_t k = 0;
  for (; k < std::min(r, n); ++k) {
    for (;;) {
      std::size_t bi = r, bj = n;
      cpp_int best = 0;
      for (std::size_t i = k; i < r; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
            best = abs(a[i][j]);
            bi = i;
            bj = j;
          }
      if (bi == r) break;
      std::swap(a[k], a[bi]);
      std::swap(b[k], b[bi]);
      if (bj != k) {
        for (auto& row : a) std::swap(row[k], row[bj]);
        for (auto& row : V) std::swap(row[k], row[bj]);
      }
      bool clear = true;
      for (std::size_t i = k + 1; i < r; ++i) {
        if (a[i][k] == 0) continue;
        cpp_int q = a[i][k] / a[k][k];
        for (std::size_t j = k; j < n; ++j) a[i][j] -= q * a[k][j];
        b[i] -= q * b[k];
        if (a[i][k] != 0) clear = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a[k][j] == 0) continue;
        cpp_int q = a[k][j] / a[k][k];
        for (std::size_t i = k; i < r; ++i) a[i][j] -= q * a[i][k];
        for (auto& row : V) row[j] -= q * row[k];
        if (a[k][j] != 0) clear = false;
      }
      if (clear) break;
    }
    if (a[k][k] == 0) break;
  }
  std::size_t rank = 0;
  while (rank < std::min(r, n) && a[rank][rank] != 0) ++rank;
  for (std::size_t i = rank; i < r; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<cpp_int> z(n, 0);
  for (std::size_t i = 0; i < rank; ++i) {
    if (b[i] % a[i][i] != 0) return std::nullopt;
    z[i] = b[i] / a[i][i];
  }
  std::vector<std::int64_t> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    cpp_int s = 0;
    for (std::size_t j = 0; j < n; ++j) s += V[i][j] * z[j];
    if (abs(s) > cpp_int(std::numeric_limits<std::int64_t>::max())) throw PreconditionFailed("solution overflow");
    x[i] = static_cast<std::int64_t>(s);
  }
  return x;
}

std::optional<std::vector<std::int64_t>> solve_congruences_snf(const std::vector<Congruence>& eqs, std::size_t nvars) {
  const std::size_t m = eqs.size();
  std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(nvars + m, 0));
  std::vector<std::int64_t> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < nvars; ++j) a[i][j] = eqs[i].coeffs[j];
    a[i][nvars + i] = static_cast<std::int64_t>(eqs[i].modulus);
    b[i] = eqs[i].rhs;
  }
  auto sol = solve_diophantine_snf(a, b);
  if (!sol) return std::nullopt;
  sol->resize(nvars);
  return sol;
}

}  // namespace extiso
