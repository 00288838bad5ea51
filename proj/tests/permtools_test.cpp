#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "extiso/modlinalg.hpp"
#include "extiso/permtools.hpp"

using namespace extiso;

namespace {

bool same_rowspan(const Mat& a, const Mat& b, std::size_t cols, std::uint32_t p) {
  Mat both = a;
  both.insert(both.end(), b.begin(), b.end());
  auto r = rank_gfp(both, cols, p);
  return rank_gfp(a, cols, p) == r && rank_gfp(b, cols, p) == r;
}

// full row rank
Mat random_mat(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937_64& rng) {
  Mat m(r, Vec(c));
  do
    for (auto& row : m)
      for (auto& x : row) x = static_cast<std::uint32_t>(rng() % p);
  while (rank_gfp(m, c, p) < r);
  return m;
}

// random invertible row operations
Mat mix_rows(const Mat& m, std::uint32_t p, std::mt19937_64& rng) {
  Mat out = m;
  for (int t = 0; t < 6; ++t) {
    std::size_t i = rng() % out.size(), j = rng() % out.size();
    if (i == j) continue;
    std::uint32_t s = static_cast<std::uint32_t>(1 + rng() % (p - 1));
    for (std::size_t c = 0; c < out[i].size(); ++c) out[i][c] = (out[i][c] + s * out[j][c]) % p;
  }
  return out;
}

BlockStructure blocks(std::vector<std::size_t> cls, std::size_t width) {
  BlockStructure bs;
  for (std::size_t b = 0; b < cls.size(); ++b) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < width; ++j) cols.push_back(b * width + j);
    bs.blocks.push_back(cols);
  }
  bs.cls = std::move(cls);
  return bs;
}

}  // namespace

TEST(PermTools, Basics) {
  Perm a{1, 2, 0}, b{1, 0, 2};
  // a then b
  EXPECT_EQ(perm_compose(a, b), (Perm{0, 2, 1}));
  EXPECT_EQ(perm_compose(a, perm_inverse(a)), perm_identity(3));
  EXPECT_EQ(perm_group_elements(3, {a, b}, 100).size(), 6u);
  auto bs = blocks({0, 0, 1}, 2);
  EXPECT_TRUE(bs.valid());
  EXPECT_EQ(block_group(bs).size(), 2u);
  EXPECT_EQ(block_group(blocks({0, 0, 0, 0}, 2)).size(), 24u);
}

TEST(PermTools, CodeEquivalenceMatchesBruteForce) {
  std::mt19937_64 rng(2);
  int nonempty = 0;
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& cls : std::vector<std::vector<std::size_t>>{{0, 0, 0, 0}, {0, 0, 1, 1}, {0, 1, 0, 0}}) {
      auto bs = blocks(cls, 2);
      auto all = block_group(bs).elements();
      for (int trial = 0; trial < 12; ++trial) {
        auto m1 = random_mat(2, 8, p, rng);
        Mat m2;
        if (trial % 3 == 2)
          m2 = random_mat(2, 8, p, rng);
        else
          m2 = mix_rows(permute_columns(m1, all[rng() % all.size()]), p, rng);
        std::vector<Perm> want;
        for (const auto& s : all)
          if (same_rowspan(permute_columns(m1, s), m2, 8, p)) want.push_back(s);
        auto got = code_equivalence_coset(m1, m2, p, bs).elements();
        EXPECT_EQ(got, want);
        nonempty += !want.empty();
      }
    }
  }
  EXPECT_GT(nonempty, 10);
}

TEST(PermTools, CosetIntersectionMatchesBruteForce) {
  std::mt19937_64 rng(6);
  const std::size_t m = 5;
  std::vector<Perm> sym;
  Perm x = perm_identity(m);
  do sym.push_back(x);
  while (std::next_permutation(x.begin(), x.end()));
  auto random_coset = [&] {
    PermCoset c;
    c.degree = m;
    c.empty = false;
    c.generators = {sym[rng() % sym.size()]};
    if (rng() % 2) c.generators.push_back(sym[rng() % sym.size()]);
    c.representative = sym[rng() % sym.size()];
    return c;
  };
  for (int t = 0; t < 60; ++t) {
    auto c1 = random_coset(), c2 = random_coset();
    auto e1 = c1.elements(), e2 = c2.elements();
    std::vector<Perm> want;
    std::set_intersection(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(want));
    auto got = coset_intersection(c1, c2);
    EXPECT_EQ(got.elements(), want);
    for (const auto& s : e1) EXPECT_TRUE(c1.contains(s));
  }
  EXPECT_TRUE(coset_intersection(PermCoset::none(m), PermCoset::group(m, {})).empty);
}
