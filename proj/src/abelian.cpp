#include "extiso/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace extiso {

Elem AbelianStructure::from_coords(std::span<const std::uint32_t> c) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < k(); ++i) r = r * orders[i] + c[i];
  return by_rank_[r];
}

Elem AbelianStructure::from_coords_signed(std::span<const std::int64_t> c) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < k(); ++i) {
    std::int64_t o = static_cast<std::int64_t>(orders[i]);
    std::int64_t v = c[i] % o;
    if (v < 0) v += o;
    r = r * orders[i] + static_cast<std::size_t>(v);
  }
  return by_rank_[r];
}

bool AbelianStructure::elementary() const {
  for (std::size_t i = 0; i < k(); ++i)
    if (exps[i] != 1 || primes[i] != primes[0]) return false;
  return true;
}

AbelianPtr primary_decomposition(const GroupPtr& a) {
  if (!a->is_abelian()) throw NotAbelian("primary decomposition needs an abelian group");
  const auto& g = *a;
  const std::size_t n = g.order();
  auto s = std::make_shared<AbelianStructure>();
  s->group = a;

  for (auto [p64, e] : factorize(n)) {
    const auto p = static_cast<std::uint32_t>(p64);
    std::vector<Elem> sylow;
    for (Elem x = 0; x < n; ++x) {
      std::uint32_t o = g.elem_order(x);
      while (o % p == 0) o /= p;
      if (o == 1) sylow.push_back(x);
    }
    std::vector<Elem> gens;
    std::vector<std::uint32_t> gexp;
    Subgroup h = trivial_subgroup(a);
    while (h.size() < sylow.size()) {
      // element whose image in sylow/h has the largest order p^m
      Elem best = 0;
      std::uint32_t best_m = 0;
      for (Elem y : sylow) {
        std::uint32_t m = 0;
        for (Elem z = y; !h.contains(z); z = g.pow(z, p)) ++m;
        if (m > best_m) {
          best_m = m;
          best = y;
        }
      }
      long long pm = 1;
      for (std::uint32_t i = 0; i < best_m; ++i) pm *= p;
      Elem target = g.pow(best, pm);
      Elem fix = 0;
      bool found = false;
      for (Elem c : h.members)
        if (g.pow(c, pm) == target) {
          fix = c;
          found = true;
          break;
        }
      if (!found) throw PreconditionFailed("primary decomposition: no correction element");
      Elem x = g.mul(best, g.inv(fix));
      gens.push_back(x);
      gexp.push_back(best_m);
      h = subgroup_generated(a, gens);
    }
    std::vector<std::size_t> idx(gens.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return gexp[i] < gexp[j]; });
    for (auto i : idx) {
      s->basis.push_back(gens[i]);
      s->primes.push_back(p);
      s->exps.push_back(gexp[i]);
      std::uint64_t o = 1;
      for (std::uint32_t t = 0; t < gexp[i]; ++t) o *= p;
      s->orders.push_back(o);
    }
    (void)e;
  }

  const std::size_t k = s->k();
  s->coords_.assign(n * k, 0);
  s->rank_.assign(n, 0);
  s->by_rank_.assign(n, 0);
  std::vector<std::uint32_t> c(k, 0);
  for (std::size_t r = 0; r < n; ++r) {
    Elem x = 0;
    for (std::size_t i = 0; i < k; ++i) x = g.mul(x, g.pow(s->basis[i], c[i]));
    for (std::size_t i = 0; i < k; ++i) s->coords_[x * k + i] = c[i];
    s->rank_[x] = r;
    s->by_rank_[r] = x;
    for (std::size_t i = k; i-- > 0;) {
      if (++c[i] < s->orders[i]) break;
      c[i] = 0;
    }
  }
  std::vector<char> hit(n, 0);
  for (Elem x : s->by_rank_) {
    if (hit[x]) throw PreconditionFailed("primary decomposition: coordinates not bijective");
    hit[x] = 1;
  }
  return s;
}

std::vector<std::uint64_t> abelian_invariants(const AbelianStructure& s) { return s.orders; }

bool is_valid_abelian_aut(const AbelianStructure& s, const Mat& m) {
  const std::size_t k = s.k();
  if (m.size() != k) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (m[i].size() != k) return false;
    for (std::size_t j = 0; j < k; ++j) {
      if (m[i][j] >= s.orders[i]) return false;
      if (s.primes[i] != s.primes[j]) {
        if (m[i][j]) return false;
        continue;
      }
      if (s.exps[i] > s.exps[j]) {
        std::uint64_t d = 1;
        for (std::uint32_t t = s.exps[j]; t < s.exps[i]; ++t) d *= s.primes[i];
        if (m[i][j] % d) return false;
      }
    }
  }
  // invertible mod each prime
  std::size_t start = 0;
  while (start < k) {
    std::size_t end = start;
    while (end < k && s.primes[end] == s.primes[start]) ++end;
    Mat block;
    for (std::size_t i = start; i < end; ++i) block.emplace_back(m[i].begin() + start, m[i].begin() + end);
    if (rank_gfp(block, end - start, s.primes[start]) != end - start) return false;
    start = end;
  }
  return true;
}

void apply_aut_coords(const AbelianStructure& s, const Mat& m, std::span<const std::uint32_t> in,
                      std::span<std::uint32_t> out) {
  const std::size_t k = s.k();
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < k; ++j) acc = (acc + std::uint64_t{m[i][j]} * in[j]) % s.orders[i];
    out[i] = static_cast<std::uint32_t>(acc);
  }
}

Elem apply_aut(const AbelianAut& aut, Elem x) {
  const auto& s = *aut.structure;
  std::vector<std::uint32_t> out(s.k());
  apply_aut_coords(s, aut.matrix, s.to_coords(x), out);
  return s.from_coords(out);
}

std::vector<Elem> aut_permutation(const AbelianAut& aut) {
  std::vector<Elem> p(aut.structure->group->order());
  for (Elem x = 0; x < p.size(); ++x) p[x] = apply_aut(aut, x);
  return p;
}

AbelianAut aut_from_permutation(const AbelianPtr& s, const std::vector<Elem>& perm) {
  const std::size_t k = s->k();
  AbelianAut a{s, Mat(k, Vec(k, 0))};
  for (std::size_t j = 0; j < k; ++j) {
    auto c = s->to_coords(perm[s->basis[j]]);
    for (std::size_t i = 0; i < k; ++i) a.matrix[i][j] = c[i];
  }
  return a;
}

AbelianAut identity_aut(const AbelianPtr& s) { return AbelianAut{s, identity_mat(s->k())}; }

AbelianAut inverse_aut(const AbelianAut& a) {
  auto p = aut_permutation(a);
  std::vector<Elem> q(p.size());
  for (Elem x = 0; x < p.size(); ++x) q[p[x]] = x;
  return aut_from_permutation(a.structure, q);
}

AbelianAut compose_aut(const AbelianAut& second, const AbelianAut& first) {
  auto p = aut_permutation(first);
  auto q = aut_permutation(second);
  for (auto& x : p) x = q[x];
  return aut_from_permutation(first.structure, p);
}

std::uint64_t abelian_aut_count(const AbelianStructure& s) {
  long double total = 1;
  std::size_t start = 0;
  const std::size_t k = s.k();
  while (start < k) {
    std::size_t end = start;
    while (end < k && s.primes[end] == s.primes[start]) ++end;
    const long double p = s.primes[start];
    const std::size_t n = end - start;
    std::vector<std::uint32_t> e(s.exps.begin() + start, s.exps.begin() + end);  // ascending
    for (std::size_t kk = 1; kk <= n; ++kk) {
      std::size_t d = kk, c = kk;
      while (d < n && e[d] == e[kk - 1]) ++d;
      while (c > 1 && e[c - 2] == e[kk - 1]) --c;
      total *= std::pow(p, static_cast<long double>(d)) - std::pow(p, static_cast<long double>(kk - 1));
      total *= std::pow(std::pow(p, static_cast<long double>(e[kk - 1])), static_cast<long double>(n - d));
      total *= std::pow(std::pow(p, static_cast<long double>(e[kk - 1] - 1)), static_cast<long double>(n - c + 1));
    }
    start = end;
  }
  if (total >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total + 0.5L);
}

namespace detail {

namespace {

// rows mod p kept reduced; returns false if v depends on them
bool independent_push(std::vector<Vec>& echelon, std::vector<std::size_t>& pivs, Vec v, std::uint32_t p) {
  for (std::size_t r = 0; r < echelon.size(); ++r) {
    std::uint32_t c = v[pivs[r]];
    if (!c) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = static_cast<std::uint32_t>((v[j] + std::uint64_t{p - c} * echelon[r][j]) % p);
  }
  std::size_t piv = 0;
  while (piv < v.size() && v[piv] == 0) ++piv;
  if (piv == v.size()) return false;
  std::uint64_t inv = 1;
  for (std::uint32_t t = 0; t < p - 2; ++t) inv = inv * v[piv] % p;
  for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p);
  for (auto& row : echelon) {
    std::uint32_t c = row[piv];
    if (!c) continue;
    for (std::size_t j = 0; j < v.size(); ++j) row[j] = static_cast<std::uint32_t>((row[j] + std::uint64_t{p - c} * v[j]) % p);
  }
  echelon.push_back(std::move(v));
  pivs.push_back(piv);
  return true;
}

void block_search(const std::vector<std::uint32_t>& mu, std::uint32_t p, bool transposed, std::size_t row,
                  Mat& cur, std::vector<Vec>& echelon, std::vector<std::size_t>& pivs, std::vector<Mat>& out,
                  std::size_t cap) {
  const std::size_t b = mu.size();
  if (row == b) {
    if (out.size() >= cap) throw CapExceeded("abelian automorphism enumeration exceeds cap");
    out.push_back(cur);
    return;
  }
  std::vector<std::uint64_t> step(b), limit(b);
  std::uint64_t top = 1;
  for (std::uint32_t t = 0; t < mu[row]; ++t) top *= p;
  for (std::size_t j = 0; j < b; ++j) {
    std::uint32_t gap = transposed ? (mu[j] > mu[row] ? mu[j] - mu[row] : 0) : (mu[row] > mu[j] ? mu[row] - mu[j] : 0);
    std::uint64_t d = 1;
    for (std::uint32_t t = 0; t < gap; ++t) d *= p;
    step[j] = d;
    limit[j] = top;
  }
  std::vector<std::uint64_t> val(b, 0);
  for (;;) {
    Vec r(b), modp(b);
    for (std::size_t j = 0; j < b; ++j) {
      r[j] = static_cast<std::uint32_t>(val[j]);
      modp[j] = static_cast<std::uint32_t>(val[j] % p);
    }
    auto e2 = echelon;
    auto p2 = pivs;
    if (independent_push(e2, p2, modp, p)) {
      cur[row] = r;
      block_search(mu, p, transposed, row + 1, cur, e2, p2, out, cap);
    }
    std::size_t j = b;
    while (j-- > 0) {
      val[j] += step[j];
      if (val[j] < limit[j]) break;
      val[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) break;
  }
}

}  // namespace

std::vector<Mat> enumerate_aut_matrices(const AbelianStructure& s, bool transposed, std::size_t cap) {
  const std::size_t k = s.k();
  std::vector<Mat> result{Mat(k, Vec(k, 0))};
  std::size_t start = 0;
  while (start < k) {
    std::size_t end = start;
    while (end < k && s.primes[end] == s.primes[start]) ++end;
    std::vector<std::uint32_t> mu(s.exps.begin() + start, s.exps.begin() + end);
    std::vector<Mat> blocks;
    Mat cur(mu.size(), Vec(mu.size(), 0));
    std::vector<Vec> ech;
    std::vector<std::size_t> pv;
    block_search(mu, s.primes[start], transposed, 0, cur, ech, pv, blocks, cap);
    std::vector<Mat> next;
    for (const auto& base : result)
      for (const auto& blk : blocks) {
        if (next.size() >= cap) throw CapExceeded("abelian automorphism enumeration exceeds cap");
        Mat m = base;
        for (std::size_t i = 0; i < mu.size(); ++i)
          for (std::size_t j = 0; j < mu.size(); ++j) m[start + i][start + j] = blk[i][j];
        next.push_back(std::move(m));
      }
    result = std::move(next);
    start = end;
  }
  return result;
}

}  // namespace detail

std::vector<AbelianAut> enumerate_abelian_automorphisms(const AbelianPtr& s, std::size_t cap) {
  if (abelian_aut_count(*s) > cap)
    throw CapExceeded("|Aut(A)| = " + std::to_string(abelian_aut_count(*s)) + " exceeds cap " + std::to_string(cap));
  std::vector<AbelianAut> out;
  for (auto& m : detail::enumerate_aut_matrices(*s, false, cap)) out.push_back(AbelianAut{s, std::move(m)});
  return out;
}

std::optional<std::vector<std::int64_t>> solve_abelian_system(const AbelianStructure& s,
                                                             const std::vector<AbelianEquation>& eqs,
                                                             std::size_t nvars) {
  std::vector<Congruence> cs;
  for (const auto& eq : eqs) {
    auto t = s.to_coords(eq.target);
    for (std::size_t i = 0; i < s.k(); ++i) {
      Congruence c;
      c.coeffs = eq.coeffs[i];
      c.coeffs.resize(nvars, 0);
      c.rhs = t[i];
      c.modulus = s.orders[i];
      cs.push_back(std::move(c));
    }
  }
  return solve_congruences(cs, nvars);
}

}  // namespace extiso
