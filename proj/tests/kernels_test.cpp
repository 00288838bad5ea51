#include <gtest/gtest.h>

#include <random>

#include "extiso/families.hpp"
#include "extiso/kernels.hpp"
#include "oracles.hpp"

using namespace extiso;
using namespace extiso::kernels;

namespace {

std::vector<GroupPtr> sample() {
  return {families::symmetric(4), families::alternating(5), families::quaternion8(), families::sl25(),
          families::heisenberg(3), families::abelian({4, 2, 2})};
}

BitMatrix random_bits(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng() % 3 == 0);
  return m;
}

}  // namespace

TEST(Kernels, AssociativitySerialMatchesParallel) {
  for (const auto& g : sample()) {
    EXPECT_TRUE(associative_full_serial(*g));
    EXPECT_TRUE(associative_full_parallel(*g));
  }
  // a Latin square with identity that is not associative
  std::vector<Cell> t = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CayleyGroup loop(5, t, {}, "loop");
  EXPECT_FALSE(associative_full_serial(loop));
  EXPECT_FALSE(associative_full_parallel(loop));
  std::vector<Elem> gens{1, 2};
  EXPECT_EQ(light_test_serial(5, t.data(), gens), light_test_parallel(5, t.data(), gens));
  EXPECT_FALSE(light_test_serial(5, t.data(), gens));
}

TEST(Kernels, LightSerialMatchesParallel) {
  for (const auto& g : sample()) {
    const auto& gens = g->generators();
    EXPECT_TRUE(light_test_serial(g->order(), g->table().data(), gens));
    EXPECT_TRUE(light_test_parallel(g->order(), g->table().data(), gens));
  }
}

TEST(Kernels, Gf2RrefSerialMatchesParallel) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_bits(5 + trial * 3, 70 + trial * 5, rng);
    auto b = a;
    oracle::Gf2Rank ref(a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
      std::vector<std::size_t> ones;
      for (std::size_t j = 0; j < a.cols; ++j)
        if (a.get(i, j)) ones.push_back(j);
      ref.add_sparse(ones);
    }
    auto pa = gf2_rref_serial(a);
    auto pb = gf2_rref_parallel(b);
    EXPECT_EQ(pa, pb);
    EXPECT_EQ(a.data, b.data);
    EXPECT_EQ(pa.size(), ref.rank());
  }
}

TEST(Kernels, ModpRrefSerialMatchesParallel) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 8; ++trial) {
      ModMatrix a(4 + trial, 10 + 2 * trial, p);
      for (auto& x : a.data) x = static_cast<std::uint32_t>(rng() % p);
      auto b = a;
      auto pa = modp_rref_serial(a);
      auto pb = modp_rref_parallel(b);
      EXPECT_EQ(pa, pb);
      EXPECT_EQ(a.data, b.data);
      // reduced form: pivot columns are unit vectors
      for (std::size_t r = 0; r < pa.size(); ++r)
        for (std::size_t i = 0; i < a.rows; ++i) EXPECT_EQ(a.at(i, pa[r]), i == r ? 1u : 0u);
    }
  }
}

TEST(Kernels, CocycleSystemSerialMatchesParallel) {
  for (auto q : {families::symmetric(3), families::quaternion8(), families::alternating(4)}) {
    std::vector<Elem> rs(q->order());
    for (Elem r = 0; r < q->order(); ++r) rs[r] = r;
    auto a = cocycle_identity_system_serial(*q, rs);
    auto b = cocycle_identity_system_parallel(*q, rs);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.data, b.data);
    // dim Z^2 from the system agrees with the independent normalized count
    auto piv = gf2_rref_serial(a);
    EXPECT_EQ(a.cols - piv.size(), oracle::z2_dimension_full(*q)) << q->order();
  }
}

TEST(Kernels, CoboundaryGeneratorsSerialMatchesParallel) {
  for (auto q : {families::symmetric(3), families::alternating(5)}) {
    for (std::uint32_t p : {2u, 3u}) {
      auto a = coboundary_generators_serial(*q, p);
      auto b = coboundary_generators_parallel(*q, p);
      EXPECT_EQ(a.data, b.data);
      if (p == 2) {
        auto c = a;
        EXPECT_EQ(modp_rref_serial(c).size(), oracle::b2_dimension_full(*q));
      }
    }
  }
}
