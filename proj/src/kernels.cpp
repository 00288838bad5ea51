#include "extiso/kernels.hpp"

#include <algorithm>
#include <atomic>

namespace extiso::kernels {

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime: a^(p-2)
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

bool associative_full_serial(const CayleyGroup& g) {
  const std::size_t n = g.order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      Elem xy = g.mul(x, y);
      for (Elem z = 0; z < n; ++z)
        if (g.mul(xy, z) != g.mul(x, g.mul(y, z))) return false;
    }
  return true;
}

bool associative_full_parallel(const CayleyGroup& g) {
  const long n = static_cast<long>(g.order());
  std::atomic<bool> ok{true};
#pragma omp parallel for schedule(dynamic, 4)
  for (long x = 0; x < n; ++x) {
    if (!ok.load(std::memory_order_relaxed)) continue;
    for (long y = 0; y < n; ++y) {
      Elem xy = g.mul(x, y);
      const Cell* rxy = g.row(xy);
      const Cell* ry = g.row(y);
      const Cell* rx = g.row(x);
      for (long z = 0; z < n; ++z)
        if (rxy[z] != rx[ry[z]]) {
          ok = false;
          break;
        }
    }
  }
  return ok;
}

bool light_test_serial(std::size_t n, const Cell* table, std::span<const Elem> gens) {
  for (Elem z : gens)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t xy = table[x * n + y];
        std::size_t yz = table[y * n + z];
        if (table[xy * n + z] != table[x * n + yz]) return false;
      }
  return true;
}

bool light_test_parallel(std::size_t n, const Cell* table, std::span<const Elem> gens) {
  // column z of the table, then compare row-wise
  std::atomic<bool> ok{true};
  for (Elem z : gens) {
    std::vector<Cell> colz(n);
    for (std::size_t y = 0; y < n; ++y) colz[y] = table[y * n + z];
#pragma omp parallel for schedule(static)
    for (long x = 0; x < static_cast<long>(n); ++x) {
      if (!ok.load(std::memory_order_relaxed)) continue;
      const Cell* rx = table + x * n;
      for (std::size_t y = 0; y < n; ++y)
        if (colz[rx[y]] != rx[colz[y]]) {
          ok = false;
          break;
        }
    }
    if (!ok) return false;
  }
  return ok;
}

std::vector<std::size_t> gf2_rref_serial(BitMatrix& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t s = r;
    while (s < m.rows && !m.get(s, c)) ++s;
    if (s == m.rows) continue;
    if (s != r) std::swap_ranges(m.row(s), m.row(s) + m.words, m.row(r));
    for (std::size_t i = 0; i < m.rows; ++i)
      if (i != r && m.get(i, c))
        for (std::size_t w = 0; w < m.words; ++w) m.row(i)[w] ^= m.row(r)[w];
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<std::size_t> gf2_rref_parallel(BitMatrix& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  const std::size_t W = m.words;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t s = r;
    while (s < m.rows && !m.get(s, c)) ++s;
    if (s == m.rows) continue;
    if (s != r) std::swap_ranges(m.row(s), m.row(s) + W, m.row(r));
    const std::uint64_t* pr = m.row(r);
    const std::size_t w0 = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(m.rows); ++i) {
      std::uint64_t* ri = m.row(i);
      if (static_cast<std::size_t>(i) == r || !(ri[w0] & bit)) continue;
      for (std::size_t w = w0; w < W; ++w) ri[w] ^= pr[w];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<std::size_t> modp_rref_serial(ModMatrix& m) {
  const std::uint32_t p = m.p;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t s = r;
    while (s < m.rows && m.at(s, c) == 0) ++s;
    if (s == m.rows) continue;
    if (s != r) std::swap_ranges(m.row(s), m.row(s) + m.cols, m.row(r));
    std::uint32_t iv = inv_mod(m.at(r, c), p);
    for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = static_cast<std::uint32_t>(std::uint64_t{m.at(r, j)} * iv % p);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      std::uint32_t f = p - m.at(i, c);
      for (std::size_t j = 0; j < m.cols; ++j)
        m.at(i, j) = static_cast<std::uint32_t>((m.at(i, j) + std::uint64_t{f} * m.at(r, j)) % p);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::vector<std::size_t> modp_rref_parallel(ModMatrix& m) {
  const std::uint32_t p = m.p;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  const std::size_t C = m.cols;
  for (std::size_t c = 0; c < C && r < m.rows; ++c) {
    std::size_t s = r;
    while (s < m.rows && m.at(s, c) == 0) ++s;
    if (s == m.rows) continue;
    if (s != r) std::swap_ranges(m.row(s), m.row(s) + C, m.row(r));
    std::uint32_t* pr = m.row(r);
    std::uint32_t iv = inv_mod(pr[c], p);
    for (std::size_t j = c; j < C; ++j) pr[j] = static_cast<std::uint32_t>(std::uint64_t{pr[j]} * iv % p);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(m.rows); ++i) {
      std::uint32_t* ri = m.row(i);
      if (static_cast<std::size_t>(i) == r || ri[c] == 0) continue;
      std::uint32_t f = p - ri[c];
      for (std::size_t j = c; j < C; ++j)
        if (pr[j]) ri[j] = static_cast<std::uint32_t>((ri[j] + std::uint64_t{f} * pr[j]) % p);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

BitMatrix cocycle_identity_system_serial(const CayleyGroup& q, std::span<const Elem> rs) {
  const std::size_t n = q.order();
  BitMatrix m(n * n * rs.size() + 2 * n, n * n);
  std::size_t row = 0;
  for (Elem r : rs)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b, ++row) {
        Elem ab = q.mul(a, b), br = q.mul(b, r);
        m.flip(row, a * n + b);
        m.flip(row, ab * n + r);
        m.flip(row, b * n + r);
        m.flip(row, a * n + br);
      }
  for (Elem a = 0; a < n; ++a) {
    m.flip(row++, 0 * n + a);
    m.flip(row++, a * n + 0);
  }
  return m;
}

BitMatrix cocycle_identity_system_parallel(const CayleyGroup& q, std::span<const Elem> rs) {
  const std::size_t n = q.order();
  const std::size_t R = rs.size();
  BitMatrix m(n * n * R + 2 * n, n * n);
#pragma omp parallel for schedule(static)
  for (long t = 0; t < static_cast<long>(R * n); ++t) {
    Elem r = rs[t / n];
    Elem a = static_cast<Elem>(t % n);
    std::size_t row = static_cast<std::size_t>(t) * n;
    for (Elem b = 0; b < n; ++b, ++row) {
      Elem ab = q.mul(a, b), br = q.mul(b, r);
      m.flip(row, a * n + b);
      m.flip(row, ab * n + r);
      m.flip(row, b * n + r);
      m.flip(row, a * n + br);
    }
  }
  std::size_t row = n * n * R;
  for (Elem a = 0; a < n; ++a) {
    m.flip(row++, a);
    m.flip(row++, a * n);
  }
  return m;
}

ModMatrix coboundary_generators_serial(const CayleyGroup& q, std::uint32_t p) {
  const std::size_t n = q.order();
  ModMatrix m(n ? n - 1 : 0, n * n, p);
  for (Elem g = 1; g < n; ++g)
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        long v = (a == g) + (b == g) - (q.mul(a, b) == g);
        m.at(g - 1, a * n + b) = static_cast<std::uint32_t>(((v % static_cast<long>(p)) + p) % p);
      }
  return m;
}

ModMatrix coboundary_generators_parallel(const CayleyGroup& q, std::uint32_t p) {
  const std::size_t n = q.order();
  ModMatrix m(n ? n - 1 : 0, n * n, p);
  // each (a,b) touches at most three rows; write column-wise
#pragma omp parallel for schedule(static)
  for (long a = 0; a < static_cast<long>(n); ++a)
    for (Elem b = 0; b < n; ++b) {
      std::size_t col = a * n + b;
      Elem ab = q.mul(a, b);
      if (a != 0) m.at(a - 1, col) = (m.at(a - 1, col) + 1) % p;
      if (b != 0) m.at(b - 1, col) = (m.at(b - 1, col) + 1) % p;
      if (ab != 0) m.at(ab - 1, col) = (m.at(ab - 1, col) + p - 1) % p;
    }
  return m;
}

}  // namespace extiso::kernels
