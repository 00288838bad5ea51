#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "extiso/cayley.hpp"
#include "extiso/cayley_io.hpp"
#include "extiso/families.hpp"
#include "oracles.hpp"

using namespace extiso;

namespace {

std::vector<Elem> raw_of(const CayleyGroup& g) { return {g.table().begin(), g.table().end()}; }

// order-5 loop: Latin square with identity, every square trivial, so not Z5
const std::vector<Elem> kLoop5 = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                                  3, 2, 4, 0, 1, 4, 3, 1, 2, 0};

}  // namespace

TEST(Cayley, ValidateAcceptsCorpus) {
  for (const auto& ng : families::corpus()) {
    auto g = validate_table(ng.group->order(), raw_of(*ng.group));
    EXPECT_EQ(g->table(), ng.group->table()) << ng.name;
    EXPECT_TRUE(associative_full(*g)) << ng.name;
  }
}

TEST(Cayley, IdentityMovedToZero) {
  // Z3 with the identity written as 2
  std::vector<Elem> raw = {1, 2, 0, 2, 0, 1, 0, 1, 2};
  auto g = validate_table(3, raw);
  EXPECT_EQ(g->mul(0, 1), 1u);
  EXPECT_EQ(g->input_labels()[0], 2u);
  for (Elem a = 0; a < 3; ++a)
    for (Elem b = 0; b < 3; ++b) {
      Elem in = raw[g->input_labels()[a] * 3 + g->input_labels()[b]];
      EXPECT_EQ(g->input_labels()[g->mul(a, b)], in);
    }
}

TEST(Cayley, RejectsNonLatinAndNonAssociative) {
  EXPECT_THROW(validate_table(2, {0, 1, 1, 1}), NotAGroup);
  EXPECT_THROW(validate_table(2, {0, 1, 1, 2}), NotAGroup);
  EXPECT_THROW(validate_table(5, kLoop5), NotAGroup);
}

TEST(Cayley, ElementOrdersMatchPowers) {
  for (const auto& ng : families::corpus()) {
    const auto& g = *ng.group;
    if (g.order() > 200) continue;
    for (Elem x = 0; x < g.order(); ++x) {
      std::uint32_t k = 1;
      for (Elem y = x; y != 0; y = g.mul(y, x)) ++k;
      EXPECT_EQ(g.elem_order(x), k) << ng.name << " " << x;
    }
  }
}

TEST(Cayley, KnownSubgroups) {
  EXPECT_EQ(center(families::dihedral(4)).size(), 2u);
  EXPECT_EQ(center(families::symmetric(4)).size(), 1u);
  EXPECT_EQ(commutator_subgroup(families::symmetric(4)).size(), 12u);
  EXPECT_EQ(solvable_radical(families::symmetric(5)).size(), 1u);
  EXPECT_EQ(solvable_radical(families::symmetric(4)).size(), 24u);
  EXPECT_EQ(solvable_radical(families::sl25()).size(), 2u);
  auto mins = minimal_normal_subgroups(families::symmetric(4));
  ASSERT_EQ(mins.size(), 1u);
  EXPECT_EQ(mins[0].size(), 4u);
  EXPECT_EQ(conjugacy_classes(families::alternating(5)).size(), 5u);
  EXPECT_FALSE(is_solvable(whole_group(families::alternating(5))));
  EXPECT_TRUE(is_solvable(whole_group(families::symmetric(4))));
}

TEST(Cayley, SubgroupOpsMatchClosure) {
  auto g = families::symmetric(4);
  for (Elem a = 0; a < g->order(); a += 5)
    for (Elem b = 1; b < g->order(); b += 7) {
      std::vector<Elem> gens{a, b};
      auto h = subgroup_generated(g, gens);
      EXPECT_EQ(h.members, oracle::closure(*g, gens));
      EXPECT_EQ(is_normal(h), oracle::is_normal_set(*g, h.members));
    }
}

TEST(Cayley, BabaiBealsSl25) {
  auto bb = babai_beals_filtration(families::sl25());
  EXPECT_EQ(bb.rad.size(), 2u);
  EXPECT_EQ(bb.soc_star.size(), 120u);
  EXPECT_EQ(bb.pker.size(), 120u);
  ASSERT_EQ(bb.socle_factor_orders.size(), 1u);
  EXPECT_EQ(bb.socle_factor_orders[0], 60u);
}

TEST(Cayley, SimpleFactorsOfA5xA5) {
  auto g = direct_product(families::alternating(5), families::alternating(5));
  auto f = simple_factor_decomposition(g);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].size(), 60u);
  EXPECT_EQ(intersect(f[0], f[1]).size(), 1u);
}

TEST(Cayley, AutomorphismCounts) {
  std::map<std::string, std::pair<GroupPtr, std::size_t>> cases = {
      {"S3", {families::symmetric(3), 6}},   {"Q8", {families::quaternion8(), 24}},
      {"D8", {families::dihedral(4), 8}},    {"A5", {families::alternating(5), 120}},
      {"Z2^3", {families::elementary_abelian(2, 3), 168}}, {"Z12", {families::cyclic(12), 4}}};
  for (const auto& [name, c] : cases) {
    auto auts = enumerate_automorphisms(c.first);
    EXPECT_EQ(auts.size(), c.second) << name;
    for (const auto& a : auts) EXPECT_TRUE(is_isomorphism(a)) << name;
  }
}

TEST(Cayley, RelabelAndBruteForce) {
  auto g = families::z7_z3();
  auto [h, m] = random_relabel(g, 17);
  EXPECT_TRUE(is_isomorphism(m));
  auto iso = brute_force_iso(g, h);
  ASSERT_TRUE(iso);
  EXPECT_TRUE(is_isomorphism(*iso));
  EXPECT_FALSE(brute_force_iso(families::cyclic(21), g));
  auto inv = inverse_map(m);
  auto id = compose(inv, m);
  for (Elem x = 0; x < g->order(); ++x) EXPECT_EQ(id(x), x);
}

TEST(Cayley, QuotientSectionIsSection) {
  auto g = families::sl25();
  auto qp = quotient_with_section(g, center(g));
  EXPECT_EQ(qp.quotient->order(), 60u);
  EXPECT_TRUE(is_homomorphism(qp.projection));
  for (Elem q = 0; q < 60; ++q) EXPECT_EQ(qp.projection(qp.section(q)), q);
  EXPECT_EQ(qp.section(0), 0u);
}

TEST(Cayley, FromGenerators) {
  // S4 from a transposition and a 4-cycle
  auto s4 = group_from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
  EXPECT_EQ(s4->order(), 24u);
  EXPECT_TRUE(brute_force_iso(s4, families::symmetric(4)));
  // GL(2,2) is S3
  auto gl = group_from_matrices(2, 2, {{1, 1, 0, 1}, {0, 1, 1, 0}});
  EXPECT_EQ(gl->order(), 6u);
  EXPECT_THROW(group_from_permutations(6, {{1, 2, 3, 4, 5, 0}, {1, 0, 2, 3, 4, 5}}, 100), CapExceeded);
}

TEST(CayleyIo, RoundTrip) {
  for (auto g : {families::sl25(), families::dihedral(6), families::trivial()}) {
    std::stringstream ss;
    write_cayley(ss, *g);
    auto h = read_cayley(ss);
    EXPECT_EQ(h->table(), g->table());
  }
}

TEST(CayleyIo, ParseErrors) {
  std::istringstream a("2\n0 1\n1\n");
  EXPECT_THROW(read_cayley(a), ParseError);
  std::istringstream b("2\n0 1\n1 x\n");
  EXPECT_THROW(read_cayley(b), ParseError);
  std::istringstream c("# comment\n2\n0 1\n1 0\n");
  EXPECT_EQ(read_cayley(c)->order(), 2u);
  std::istringstream d("2\n0 1\n1 5\n");
  EXPECT_THROW(read_cayley(d), Error);
}
