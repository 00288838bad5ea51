#include "extiso/permtools.hpp"

#include <algorithm>
#include <set>

namespace extiso {

Perm perm_identity(std::size_t m) {
  Perm p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint32_t>(i);
  return c;
}

std::vector<Perm> perm_group_elements(std::size_t m, const std::vector<Perm>& gens, std::size_t cap) {
  std::set<Perm> seen{perm_identity(m)};
  std::vector<Perm> frontier{perm_identity(m)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = perm_compose(x, g);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw CapExceeded("permutation group exceeds cap");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

PermCoset PermCoset::none(std::size_t m) {
  PermCoset c;
  c.degree = m;
  return c;
}

PermCoset PermCoset::group(std::size_t m, std::vector<Perm> gens) {
  PermCoset c;
  c.degree = m;
  c.generators = std::move(gens);
  c.representative = perm_identity(m);
  c.empty = false;
  return c;
}

std::vector<Perm> PermCoset::elements(std::size_t cap) const {
  if (empty) return {};
  auto g = perm_group_elements(degree, generators, cap);
  for (auto& x : g) x = perm_compose(x, representative);
  std::sort(g.begin(), g.end());
  return g;
}

bool PermCoset::contains(const Perm& s, std::size_t cap) const {
  if (empty) return false;
  Perm t = perm_compose(s, perm_inverse(representative));
  auto g = perm_group_elements(degree, generators, cap);
  return std::binary_search(g.begin(), g.end(), t);
}

std::size_t BlockStructure::degree() const {
  std::size_t m = 0;
  for (const auto& b : blocks) m += b.size();
  return m;
}

bool BlockStructure::valid() const {
  if (cls.size() != blocks.size()) return false;
  std::vector<char> seen(degree(), 0);
  for (const auto& b : blocks)
    for (auto c : b) {
      if (c >= seen.size() || seen[c]) return false;
      seen[c] = 1;
    }
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if (cls[i] == cls[j] && blocks[i].size() != blocks[j].size()) return false;
  return true;
}

namespace {

// block b moved onto block t, columns matched in order
void place(const BlockStructure& bs, std::size_t b, std::size_t t, Perm& s) {
  for (std::size_t x = 0; x < bs.blocks[b].size(); ++x) s[bs.blocks[b][x]] = static_cast<std::uint32_t>(bs.blocks[t][x]);
}

}  // namespace

PermCoset block_group(const BlockStructure& bs) {
  if (!bs.valid()) throw PreconditionFailed("invalid block structure");
  const std::size_t m = bs.degree();
  std::vector<Perm> gens;
  for (std::size_t i = 0; i < bs.blocks.size(); ++i) {
    // swap i with the next block of its class
    for (std::size_t j = i + 1; j < bs.blocks.size(); ++j) {
      if (bs.cls[j] != bs.cls[i]) continue;
      Perm s = perm_identity(m);
      place(bs, i, j, s);
      place(bs, j, i, s);
      gens.push_back(std::move(s));
      break;
    }
  }
  return PermCoset::group(m, std::move(gens));
}

Mat permute_columns(const Mat& m, const Perm& s) {
  Mat out(m.size(), Vec(s.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out[i][s[j]] = m[i][j];
  return out;
}

namespace {

struct CodeSearch {
  const Mat& m1;
  const Mat& m2;
  std::uint32_t p;
  const BlockStructure& bs;
  std::size_t cap;
  std::vector<std::size_t> target;  // block of m1 -> block of m2
  std::vector<char> used;
  std::vector<Perm> found;

  // rowspans agree on the columns of the already assigned blocks
  bool consistent(std::size_t depth) const {
    Mat a(m1.size()), b(m2.size());
    for (std::size_t d = 0; d < depth; ++d) {
      const auto& src = bs.blocks[d];
      const auto& dst = bs.blocks[target[d]];
      for (std::size_t x = 0; x < src.size(); ++x) {
        for (std::size_t i = 0; i < m1.size(); ++i) a[i].push_back(m1[i][src[x]]);
        for (std::size_t i = 0; i < m2.size(); ++i) b[i].push_back(m2[i][dst[x]]);
      }
    }
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    std::size_t ra = rank_gfp(a, cols, p), rb = rank_gfp(b, cols, p);
    if (ra != rb) return false;
    Mat ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    return rank_gfp(ab, cols, p) == ra;
  }

  void run(std::size_t depth) {
    if (depth == bs.blocks.size()) {
      Perm s = perm_identity(bs.degree());
      for (std::size_t d = 0; d < depth; ++d) place(bs, d, target[d], s);
      found.push_back(std::move(s));
      if (found.size() > cap) throw CapExceeded("code equivalence coset exceeds cap");
      return;
    }
    for (std::size_t t = 0; t < bs.blocks.size(); ++t) {
      if (used[t] || bs.cls[t] != bs.cls[depth]) continue;
      used[t] = 1;
      target[depth] = t;
      if (consistent(depth + 1)) run(depth + 1);
      used[t] = 0;
    }
  }
};

}  // namespace

PermCoset code_equivalence_coset(const Mat& m1, const Mat& m2, std::uint32_t p, const BlockStructure& allowed,
                                 std::size_t cap) {
  if (!allowed.valid()) throw PreconditionFailed("invalid block structure");
  const std::size_t m = allowed.degree();
  if (m1.size() != m2.size()) throw PreconditionFailed("codes differ in dimension");
  for (const auto& r : m1)
    if (r.size() != m) throw PreconditionFailed("column count mismatch");
  for (const auto& r : m2)
    if (r.size() != m) throw PreconditionFailed("column count mismatch");
  if (rank_gfp(m1, m, p) != m1.size() || rank_gfp(m2, m, p) != m2.size())
    throw RankDeficient("code generator matrix is not of full row rank");
  CodeSearch cs{m1, m2, p, allowed, cap, std::vector<std::size_t>(allowed.blocks.size()),
                std::vector<char>(allowed.blocks.size(), 0), {}};
  cs.run(0);
  if (cs.found.empty()) return PermCoset::none(m);
  PermCoset c;
  c.degree = m;
  c.empty = false;
  c.representative = cs.found.front();
  Perm rinv = perm_inverse(c.representative);
  for (std::size_t i = 1; i < cs.found.size(); ++i) c.generators.push_back(perm_compose(cs.found[i], rinv));
  return c;
}

PermCoset coset_intersection(const PermCoset& c1, const PermCoset& c2, std::size_t cap) {
  if (c1.degree != c2.degree) throw PreconditionFailed("cosets on different degrees");
  if (c1.empty || c2.empty) return PermCoset::none(c1.degree);
  auto e1 = c1.elements(cap);
  auto e2 = c2.elements(cap);
  std::vector<Perm> both;
  std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(both));
  if (both.empty()) return PermCoset::none(c1.degree);
  PermCoset c;
  c.degree = c1.degree;
  c.empty = false;
  c.representative = both.front();
  Perm rinv = perm_inverse(c.representative);
  for (std::size_t i = 1; i < both.size(); ++i) c.generators.push_back(perm_compose(both[i], rinv));
  return c;
}

}  // namespace extiso
