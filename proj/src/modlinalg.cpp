#include "extiso/modlinalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "extiso/core.hpp"
#include "extiso/kernels.hpp"

namespace extiso {

ModRing::ModRing(std::uint32_t prime, std::uint32_t exp) : p(prime), e(exp), m(1) {
  for (std::uint32_t i = 0; i < exp; ++i) m *= prime;
  if (m >= (std::uint64_t{1} << 31)) throw PreconditionFailed("modulus too large");
}

std::uint32_t ModRing::val(std::uint32_t a) const {
  if (a == 0) return e;
  std::uint32_t t = 0;
  while (a % p == 0) {
    a /= p;
    ++t;
  }
  return t;
}

std::uint64_t ModRing::ppow(std::uint32_t t) const {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < t; ++i) r *= p;
  return r;
}

std::uint32_t ModRing::unit_inverse(std::uint32_t u) const {
  // extended Euclid on (u, m)
  std::int64_t a = u, b = static_cast<std::int64_t>(m), x0 = 1, x1 = 0;
  while (b) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  if (a != 1) throw PreconditionFailed("not a unit");
  return reduce(x0);
}

namespace {

void axpy(const ModRing& R, Vec& w, std::uint32_t q, const Vec& row, std::size_t from) {
  // w -= q * row
  if (q == 0) return;
  const std::uint64_t m = R.m;
  const std::uint64_t nq = m - q;
  for (std::size_t j = from; j < w.size(); ++j)
    if (row[j]) w[j] = static_cast<std::uint32_t>((w[j] + nq * row[j]) % m);
}

void scale(const ModRing& R, Vec& w, std::uint64_t s) {
  s %= R.m;
  for (auto& x : w) x = static_cast<std::uint32_t>(x * s % R.m);
}

}  // namespace

bool HowellSpan::insert(Vec v) {
  bool grew = false;
  std::vector<Vec> work;
  work.push_back(std::move(v));
  while (!work.empty()) {
    Vec w = std::move(work.back());
    work.pop_back();
    for (std::size_t c = 0; c < cols_; ++c) {
      if (w[c] == 0) continue;
      std::uint32_t s = R_.val(w[c]);
      std::size_t r = pivot_row_[c];
      if (r == npos) {
        scale(R_, w, R_.unit_inverse(static_cast<std::uint32_t>(w[c] / R_.ppow(s))));
        pivot_row_[c] = rows_.size();
        pivot_col_.push_back(c);
        rows_.push_back(w);
        grew = true;
        if (s > 0) {
          scale(R_, w, R_.ppow(R_.e - s));
          work.push_back(std::move(w));
        }
        break;
      }
      std::uint32_t t = R_.val(rows_[r][c]);
      if (s >= t) {
        axpy(R_, w, static_cast<std::uint32_t>(w[c] / R_.ppow(t)), rows_[r], c);
        continue;
      }
      scale(R_, w, R_.unit_inverse(static_cast<std::uint32_t>(w[c] / R_.ppow(s))));
      Vec old = std::move(rows_[r]);
      rows_[r] = w;
      grew = true;
      axpy(R_, old, static_cast<std::uint32_t>(old[c] / R_.ppow(s)), w, c);
      work.push_back(std::move(old));
      if (s > 0) {
        scale(R_, w, R_.ppow(R_.e - s));
        work.push_back(std::move(w));
      }
      break;
    }
  }
  return grew;
}

void HowellSpan::reduce(Vec& v) const {
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    std::size_t r = pivot_row_[c];
    if (r == npos) continue;
    std::uint64_t piv = rows_[r][c];  // exactly p^t
    axpy(R_, v, static_cast<std::uint32_t>(v[c] / piv), rows_[r], c);
  }
}

bool HowellSpan::contains(Vec v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

bool HowellSpan::same_span(const HowellSpan& o) const {
  if (cols_ != o.cols_) return false;
  for (const auto& r : o.rows_)
    if (!contains(r)) return false;
  for (const auto& r : rows_)
    if (!o.contains(r)) return false;
  return true;
}

std::vector<std::size_t> HowellSpan::pivots() const {
  std::vector<std::size_t> p = pivot_col_;
  std::sort(p.begin(), p.end());
  return p;
}

std::uint64_t HowellSpan::log_size() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) s += R_.e - R_.val(rows_[i][pivot_col_[i]]);
  return s;
}

std::optional<Vec> solve_local(const ModRing& R, const std::vector<Vec>& rows, const Vec& rhs, std::size_t n) {
  const std::size_t r = rows.size();
  std::vector<Vec> a = rows;
  Vec b = rhs;
  // column transform V (n x n), x = V y
  std::vector<Vec> V(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) V[i][i] = 1;
  std::vector<std::uint32_t> dval;
  std::size_t k = 0;
  for (; k < std::min(r, n); ++k) {
    std::size_t bi = r, bj = n;
    std::uint32_t best = R.e;
    for (std::size_t i = k; i < r && best > 0; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (a[i][j]) {
          std::uint32_t v = R.val(a[i][j]);
          if (v < best) {
            best = v;
            bi = i;
            bj = j;
            if (v == 0) break;
          }
        }
    if (bi == r) break;
    std::swap(a[k], a[bi]);
    std::swap(b[k], b[bi]);
    if (bj != k) {
      for (auto& row : a) std::swap(row[k], row[bj]);
      for (auto& row : V) std::swap(row[k], row[bj]);
    }
    std::uint32_t u = R.unit_inverse(static_cast<std::uint32_t>(a[k][k] / R.ppow(best)));
    scale(R, a[k], u);
    b[k] = R.mul(b[k], u);
    const std::uint64_t piv = a[k][k];
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k || a[i][k] == 0) continue;
      std::uint32_t q = static_cast<std::uint32_t>(a[i][k] / piv);
      axpy(R, a[i], q, a[k], k);
      b[i] = R.sub(b[i], R.mul(q, b[k]));
    }
    // column ops clear the rest of row k; only row k is affected
    for (std::size_t j = k + 1; j < n; ++j) {
      if (a[k][j] == 0) continue;
      std::uint32_t q = static_cast<std::uint32_t>(a[k][j] / piv);
      a[k][j] = 0;
      for (auto& row : V) row[j] = R.sub(row[j], R.mul(q, row[k]));
    }
    dval.push_back(best);
  }
  for (std::size_t i = k; i < r; ++i)
    if (b[i] != 0) return std::nullopt;
  Vec y(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (R.val(b[i]) < dval[i]) return std::nullopt;
    y[i] = static_cast<std::uint32_t>(b[i] / R.ppow(dval[i]));
  }
  Vec x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s = (s + std::uint64_t{V[i][j]} * y[j]) % R.m;
    x[i] = static_cast<std::uint32_t>(s);
  }
  return x;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      std::uint32_t e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      f.emplace_back(d, e);
    }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::optional<std::vector<std::int64_t>> solve_congruences(const std::vector<Congruence>& eqs, std::size_t nvars) {
  // prime -> max exponent
  std::map<std::uint64_t, std::uint32_t> top;
  for (const auto& q : eqs) {
    if (q.coeffs.size() != nvars) throw PreconditionFailed("congruence has wrong width");
    for (auto [p, e] : factorize(q.modulus)) top[p] = std::max(top[p], e);
  }
  std::vector<std::int64_t> x(nvars, 0);
  std::int64_t L = 1;
  for (auto [p, M] : top) {
    ModRing R(static_cast<std::uint32_t>(p), M);
    std::vector<Vec> rows;
    Vec rhs;
    for (const auto& q : eqs) {
      std::uint32_t e = 0;
      for (std::uint64_t m = q.modulus; m % p == 0; m /= p) ++e;
      if (e == 0) continue;
      std::int64_t lift = static_cast<std::int64_t>(R.ppow(M - e));
      Vec row(nvars);
      for (std::size_t j = 0; j < nvars; ++j) row[j] = R.reduce((q.coeffs[j] % static_cast<std::int64_t>(R.m)) * lift);
      rows.push_back(std::move(row));
      rhs.push_back(R.reduce((q.rhs % static_cast<std::int64_t>(R.m)) * lift));
    }
    auto sol = solve_local(R, rows, rhs, nvars);
    if (!sol) return std::nullopt;
    // CRT: x = x mod L, x = sol mod m
    const std::int64_t m = static_cast<std::int64_t>(R.m);
    ModRing Rm(static_cast<std::uint32_t>(p), M);
    std::uint32_t Linv = Rm.unit_inverse(Rm.reduce(L));
    for (std::size_t j = 0; j < nvars; ++j) {
      std::int64_t diff = Rm.reduce(static_cast<std::int64_t>((*sol)[j]) - x[j]);
      std::int64_t t = static_cast<std::int64_t>(Rm.mul(static_cast<std::uint32_t>(diff), Linv));
      x[j] += L * t;
    }
    if (L > (std::int64_t{1} << 62) / m) throw PreconditionFailed("CRT modulus overflow");
    L *= m;
  }
  return x;
}

std::size_t rank_gfp(Mat rows, std::size_t ncols, std::uint32_t p) {
  kernels::ModMatrix m(rows.size(), ncols, p);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = rows[i][j] % p;
  return kernels::modp_rref_parallel(m).size();
}

Mat nullspace_gfp(const Mat& rows, std::size_t ncols, std::uint32_t p) {
  kernels::ModMatrix m(rows.size(), ncols, p);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) m.at(i, j) = rows[i][j] % p;
  auto piv = kernels::modp_rref_parallel(m);
  std::vector<char> is_piv(ncols, 0);
  for (auto c : piv) is_piv[c] = 1;
  Mat basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    Vec v(ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - m.at(i, f)) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Mat> inverse_gfp(const Mat& a, std::uint32_t p) {
  const std::size_t k = a.size();
  kernels::ModMatrix m(k, 2 * k, p);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) m.at(i, j) = a[i][j] % p;
    m.at(i, k + i) = 1;
  }
  auto piv = kernels::modp_rref_parallel(m);
  if (piv.size() < k || (k && piv[k - 1] >= k)) return std::nullopt;
  Mat inv(k, Vec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inv[i][j] = m.at(i, k + j);
  return inv;
}

Mat matmul_mod(const Mat& a, const Mat& b, std::uint64_t mod) {
  const std::size_t r = a.size(), n = b.size(), c = n ? b[0].size() : 0;
  Mat out(r, Vec(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < c; ++j) out[i][j] = static_cast<std::uint32_t>((out[i][j] + std::uint64_t{a[i][k]} * b[k][j]) % mod);
    }
  return out;
}

Mat identity_mat(std::size_t k) {
  Mat m(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
  return m;
}

}  // namespace extiso
