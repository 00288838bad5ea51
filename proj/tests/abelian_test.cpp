#include <gtest/gtest.h>

#include <random>
#include <set>

#include "extiso/abelian.hpp"
#include "extiso/families.hpp"

using namespace extiso;

namespace {

bool is_hom_perm(const CayleyGroup& g, const std::vector<Elem>& img) {
  std::set<Elem> seen(img.begin(), img.end());
  if (seen.size() != g.order()) return false;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (img[g.mul(a, b)] != g.mul(img[a], img[b])) return false;
  return true;
}

std::vector<std::vector<std::size_t>> shapes() {
  return {{4, 2}, {8, 2}, {8, 4}, {9, 3}, {4, 2, 2}, {2, 2, 2}, {12}, {6, 2}, {27}, {25, 5}};
}

}  // namespace

TEST(Abelian, PrimaryDecomposition) {
  auto s = primary_decomposition(families::cyclic(12));
  EXPECT_EQ(abelian_invariants(*s), (std::vector<std::uint64_t>{4, 3}));
  s = primary_decomposition(families::abelian({6, 4, 2}));
  EXPECT_EQ(abelian_invariants(*s), (std::vector<std::uint64_t>{2, 2, 4, 3}));
  EXPECT_THROW(primary_decomposition(families::symmetric(3)), NotAbelian);
  EXPECT_TRUE(primary_decomposition(families::elementary_abelian(3, 2))->elementary());
  EXPECT_FALSE(primary_decomposition(families::cyclic(4))->elementary());
}

TEST(Abelian, CoordinatesAreAnIsomorphism) {
  for (const auto& sh : shapes()) {
    auto g = families::abelian(sh);
    auto s = primary_decomposition(g);
    std::set<std::size_t> ranks;
    for (Elem x = 0; x < g->order(); ++x) {
      auto c = s->to_coords(x);
      EXPECT_EQ(s->from_coords(c), x);
      ranks.insert(s->coord_rank(x));
      EXPECT_EQ(s->elem_at_rank(s->coord_rank(x)), x);
      for (Elem y = 0; y < g->order(); ++y) {
        auto d = s->to_coords(y);
        auto e = s->to_coords(g->mul(x, y));
        for (std::size_t i = 0; i < s->k(); ++i) EXPECT_EQ(e[i], (c[i] + d[i]) % s->orders[i]);
      }
    }
    EXPECT_EQ(ranks.size(), g->order());
  }
}

// Entries y_i = sum_j a_ij x_j mod p^mu_i. Only the orientation where
// p^(mu_i - mu_j) divides a_ij for mu_i > mu_j reproduces Aut(A) from the table.
TEST(AbelianAut, OrientationMatchesOracle) {
  bool transposed_differs = false;
  for (const auto& sh : shapes()) {
    auto g = families::abelian(sh);
    auto s = primary_decomposition(g);
    auto table_auts = enumerate_automorphisms(g, 100000);
    std::set<std::vector<Elem>> oracle;
    for (const auto& m : table_auts) oracle.insert(m.image);

    auto mats = detail::enumerate_aut_matrices(*s, false, 1000000);
    std::set<std::vector<Elem>> ours;
    for (const auto& m : mats) {
      auto perm = aut_permutation(AbelianAut{s, m});
      EXPECT_TRUE(is_hom_perm(*g, perm));
      ours.insert(perm);
    }
    EXPECT_EQ(ours, oracle);
    EXPECT_EQ(abelian_aut_count(*s), oracle.size());
    EXPECT_EQ(enumerate_abelian_automorphisms(s).size(), oracle.size());

    auto tmats = detail::enumerate_aut_matrices(*s, true, 1000000);
    std::size_t valid = 0;
    for (const auto& m : tmats) valid += is_valid_abelian_aut(*s, m) && is_hom_perm(*g, aut_permutation(AbelianAut{s, m}));
    if (valid != oracle.size() || tmats.size() != oracle.size()) transposed_differs = true;
  }
  EXPECT_TRUE(transposed_differs);
}

TEST(AbelianAut, GroupOperations) {
  auto s = primary_decomposition(families::abelian({8, 4}));
  auto auts = enumerate_abelian_automorphisms(s);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto& a = auts[rng() % auts.size()];
    const auto& b = auts[rng() % auts.size()];
    auto ab = compose_aut(a, b);
    auto inv = inverse_aut(a);
    for (Elem x = 0; x < s->group->order(); ++x) {
      EXPECT_EQ(apply_aut(ab, x), apply_aut(a, apply_aut(b, x)));
      EXPECT_EQ(apply_aut(inv, apply_aut(a, x)), x);
    }
    auto back = aut_from_permutation(s, aut_permutation(a));
    EXPECT_EQ(aut_permutation(back), aut_permutation(a));
  }
  for (Elem x = 0; x < s->group->order(); ++x) EXPECT_EQ(apply_aut(identity_aut(s), x), x);
}

TEST(Abelian, SolveSystemMatchesBruteForce) {
  auto s = primary_decomposition(families::abelian({4, 2}));
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nvars = 2;
    std::vector<AbelianEquation> eqs(1 + rng() % 2);
    for (auto& e : eqs) {
      e.coeffs.assign(s->k(), std::vector<std::int64_t>(nvars));
      for (auto& row : e.coeffs)
        for (auto& c : row) c = static_cast<std::int64_t>(rng() % 5) - 2;
      e.target = static_cast<Elem>(rng() % 8);
    }
    auto check = [&](std::int64_t x0, std::int64_t x1) {
      for (const auto& e : eqs) {
        auto t = s->to_coords(e.target);
        for (std::size_t i = 0; i < s->k(); ++i) {
          std::int64_t v = e.coeffs[i][0] * x0 + e.coeffs[i][1] * x1 - t[i];
          if (((v % static_cast<std::int64_t>(s->orders[i])) + static_cast<std::int64_t>(s->orders[i])) %
                  static_cast<std::int64_t>(s->orders[i]))
            return false;
        }
      }
      return true;
    };
    bool brute = false;
    for (int a = 0; a < 4 && !brute; ++a)
      for (int b = 0; b < 4 && !brute; ++b) brute = check(a, b);
    auto sol = solve_abelian_system(*s, eqs, nvars);
    EXPECT_EQ(sol.has_value(), brute);
    if (sol) EXPECT_TRUE(check((*sol)[0], (*sol)[1]));
  }
}
