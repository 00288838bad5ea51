#include <gtest/gtest.h>

#include "extiso/builders.hpp"
#include "extiso/families.hpp"
#include "oracles.hpp"

using namespace extiso;

TEST(Builders, SemidirectIsS3) {
  auto a = primary_decomposition(families::cyclic(3));
  auto g = semidirect_product(a, families::cyclic(2), {Mat{Vec{1}}, Mat{Vec{2}}});
  EXPECT_TRUE(brute_force_iso(g, families::symmetric(3)));
  EXPECT_THROW(semidirect_product(a, families::cyclic(2), {Mat{Vec{1}}, Mat{Vec{1}}, Mat{Vec{1}}}), Error);
}

TEST(Builders, BaerGroupIsHeisenberg) {
  BilinearMap b;
  b.p = 3;
  b.k = 1;
  b.l = 2;
  b.values = {{0}, {1}, {2}, {0}};
  ASSERT_TRUE(b.alternating());
  auto g = baer_group(b);
  EXPECT_EQ(g->order(), 27u);
  EXPECT_FALSE(g->is_abelian());
  for (Elem x = 1; x < g->order(); ++x) EXPECT_EQ(g->elem_order(x), 3u);
  EXPECT_TRUE(brute_force_iso(g, families::heisenberg(3)));
  b.p = 2;
  b.values = {{0}, {1}, {1}, {0}};
  EXPECT_THROW(baer_group(b), EvenPrime);
}

TEST(Builders, ReconstructGeneral) {
  auto s4 = families::symmetric(4);
  auto qp = quotient_with_section(s4, commutator_subgroup(s4));
  auto ed = extract_general_extension_data(qp);
  EXPECT_TRUE(verify_extension_data(ed));
  EXPECT_TRUE(brute_force_iso(reconstruct_general(ed), s4));
}

TEST(Builders, CentralProductQ8D8) {
  auto q8 = families::quaternion8();
  auto d8 = families::dihedral(4);
  auto y1 = center(q8);
  auto sub = subgroup_as_group(y1);
  auto z2 = center(d8);
  GroupMap phi{sub.group, d8, {0, z2.members[1]}, MapKind::homomorphism};
  auto g = central_product(q8, d8, y1, phi);
  EXPECT_EQ(g->order(), 32u);
  EXPECT_EQ(center(g).size(), 2u);
  // extraspecial: derived subgroup equals the center
  EXPECT_EQ(commutator_subgroup(g), center(g));
}

TEST(Builders, ActTrivialCore) {
  auto g = families::z2_a5();
  auto core = act_trivial_core(g, commutator_subgroup(g));
  EXPECT_EQ(core.core->order(), 2u);
  EXPECT_TRUE(is_homomorphism(core.embedding));
  auto s5 = families::symmetric(5);
  EXPECT_THROW(act_trivial_core(s5, commutator_subgroup(s5)), OuterActionNontrivial);
}

TEST(Builders, FindComplementMatchesExhaustive) {
  std::vector<GroupPtr> groups = {families::symmetric(4), families::dihedral(4), families::quaternion8(),
                                  families::cyclic(12), families::alternating(4), families::abelian({4, 2}),
                                  families::heisenberg(3), families::z7_z3(), families::sl25(),
                                  families::dihedral(6)};
  int with = 0, without = 0;
  for (const auto& g : groups) {
    for (const auto& members : oracle::abelian_normal_subgroups(*g)) {
      Subgroup a(g, members);
      auto mine = find_complement(g, a);
      auto ref = oracle::exhaustive_complement(*g, members);
      ASSERT_EQ(mine.has_value(), ref.has_value()) << g->label() << " |A|=" << a.size();
      if (!mine) {
        ++without;
        continue;
      }
      ++with;
      EXPECT_EQ(mine->size() * a.size(), g->order());
      EXPECT_EQ(intersect(*mine, a).size(), 1u);
      EXPECT_EQ(oracle::closure(*g, mine->members), mine->members);
    }
  }
  EXPECT_GT(with, 0);
  EXPECT_GT(without, 0);
}
