#include <gtest/gtest.h>

#include <random>

#include "extiso/builders.hpp"
#include "extiso/families.hpp"
#include "extiso/isoengine.hpp"

using namespace extiso;

namespace {

const char* kStrategies[] = {"central-radical", "elem-abelian-radical", "ss-product-1", "ss-product-2"};

// Some(verdict) or nothing when the strategy does not apply
std::optional<IsoVerdict> try_strategy(const std::string& s, const GroupPtr& g, const GroupPtr& h) {
  try {
    return iso_with_strategy(s, g, h);
  } catch (const StrategyInapplicable&) {
    return std::nullopt;
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
}

void expect_witness(const IsoVerdict& v, const GroupPtr& g, const GroupPtr& h) {
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->source->table(), g->table());
  EXPECT_EQ(v.witness->target->table(), h->table());
  EXPECT_TRUE(is_isomorphism(*v.witness));
}

// Z3 by Z3 through the carry cocycle scaled by c
ExtensionData carry(std::uint32_t c) {
  auto a = primary_decomposition(families::cyclic(3));
  auto ed = zero_extension_data(a, families::cyclic(3));
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y) ed.cocycle[x * 3 + y] = x + y >= 3 ? c : 0;
  return ed;
}

}  // namespace

TEST(IsoEngine, SmallExamples) {
  EXPECT_TRUE(iso_auto(families::cyclic(6), families::cyclic(6)).isomorphic());
  EXPECT_FALSE(iso_auto(families::cyclic(4), families::abelian({2, 2})).isomorphic());
  auto v = iso_with_strategy("elem-abelian-radical", families::z3_z2(), families::symmetric(3));
  EXPECT_TRUE(v.isomorphic());
  expect_witness(v, families::z3_z2(), families::symmetric(3));
  EXPECT_FALSE(iso_auto(families::quaternion8(), families::dihedral(4)).isomorphic());
  EXPECT_FALSE(iso_auto(families::cyclic(21), families::z7_z3()).isomorphic());
}

TEST(IsoEngine, Sl25VersusZ2A5) {
  auto sl = families::sl25();
  auto za = families::z2_a5();
  EXPECT_FALSE(iso_central_radical(sl, za).isomorphic());
  for (auto g : {sl, za}) {
    auto h = random_relabel(g, 99).first;
    auto v = iso_central_radical(g, h);
    EXPECT_TRUE(v.isomorphic());
    expect_witness(v, g, h);
  }
  EXPECT_THROW(iso_central_radical(families::symmetric(4), families::symmetric(4)), StrategyInapplicable);
}

// Every applicable strategy agrees with brute force, and positive verdicts carry a verified witness.
TEST(IsoEngine, StrategiesAgreeWithBruteForce) {
  std::vector<families::NamedGroup> gs;
  for (auto& ng : families::corpus())
    if (ng.group->order() <= 64 && !ng.group->is_abelian()) gs.push_back(ng);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i; j < gs.size(); ++j) {
      auto g = gs[i].group;
      auto h = i == j ? random_relabel(g, 7 + i).first : gs[j].group;
      if (g->order() != h->order()) continue;
      bool want = brute_force_iso(g, h).has_value();
      for (const char* s : kStrategies) {
        auto v = try_strategy(s, g, h);
        if (!v) continue;
        ++checked;
        EXPECT_EQ(v->isomorphic(), want) << s << " " << gs[i].name << " " << gs[j].name;
        if (v->isomorphic()) expect_witness(*v, g, h);
      }
      auto a = iso_auto(g, h);
      EXPECT_EQ(a.isomorphic(), want) << gs[i].name << " " << gs[j].name;
    }
  EXPECT_GT(checked, 20u);
}

// Replacing f by f + f_u does not change the verdict.
TEST(IsoEngine, CoboundaryPerturbationInvariance) {
  std::mt19937_64 rng(31);
  for (auto g : {families::sl25(), families::heisenberg(3), families::quaternion8()}) {
    auto ed = extract_extension_data(quotient_with_section(g, center(g)));
    const auto& A = *ed.coefficient;
    for (int t = 0; t < 3; ++t) {
      std::vector<Elem> u(ed.qn(), 0);
      for (std::size_t i = 1; i < u.size(); ++i) u[i] = static_cast<Elem>(rng() % A.group->order());
      auto rows = coboundary_of(ed, u);
      auto e2 = ed;
      std::vector<std::uint32_t> c(A.k());
      for (std::size_t j = 0; j < ed.cocycle.size(); ++j) {
        auto f = A.to_coords(ed.cocycle[j]);
        for (std::size_t i = 0; i < A.k(); ++i) c[i] = (f[i] + rows[i][j]) % A.orders[i];
        e2.cocycle[j] = A.from_coords(c);
      }
      ASSERT_TRUE(verify_extension_data(e2));
      auto h = reconstruct_abelian(e2);
      auto v = iso_auto(g, h);
      EXPECT_TRUE(v.isomorphic()) << g->label();
      expect_witness(v, g, h);
    }
  }
}

// The module route must rescale: [f] and 2[f] over Z3 match only through alpha = 2.
TEST(IsoEngine, CyclicityScalarHandling) {
  auto m = cyclicity_match(carry(1), carry(2));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->alpha, (Mat{Vec{2}}));
  m = cyclicity_match(carry(2), carry(1));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->alpha, (Mat{Vec{2}}));
  m = cyclicity_match(carry(1), carry(1));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->alpha, (Mat{Vec{1}}));
  // a nonzero class never matches the zero class
  EXPECT_FALSE(cyclicity_match(carry(1), carry(0)));
  EXPECT_FALSE(cyclicity_match(carry(0), carry(1)));
  EXPECT_TRUE(cyclicity_match(carry(0), carry(0)));
}

TEST(IsoEngine, ModuleCyclicityFindsGenerator) {
  auto pair = build_module_pair(carry(1), carry(2));
  EXPECT_EQ(pair.p, 3u);
  auto gen = module_cyclicity_test(pair);
  ASSERT_TRUE(gen);
  EXPECT_NE((*gen)[0][0], 0u);
}

TEST(IsoEngine, BasisChange) {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int t = 0; t < 10; ++t) {
      Mat p1(3, Vec(7));
      for (auto& r : p1)
        for (auto& x : r) x = static_cast<std::uint32_t>(rng() % p);
      if (rank_gfp(p1, 7, p) < 3) continue;
      Mat al(3, Vec(3));
      do
        for (auto& r : al)
          for (auto& x : r) x = static_cast<std::uint32_t>(rng() % p);
      while (rank_gfp(al, 3, p) < 3);
      auto p2 = matmul_mod(al, p1, p);
      auto got = basis_change(p1, p2, p);
      ASSERT_TRUE(got);
      EXPECT_EQ(matmul_mod(*got, p1, p), p2);
    }
  }
}

TEST(IsoEngine, WitnessFromPseudoCongruence) {
  auto g = families::heisenberg(3);
  auto [h, m] = random_relabel(g, 5);
  auto qp1 = quotient_with_section(g, center(g));
  auto qp2 = quotient_with_section(h, center(h));
  auto a2 = coefficient_structure(qp2);
  auto e1 = extract_extension_data(qp1);
  auto e2 = with_coefficient(extract_extension_data(qp2, a2), e1.coefficient);
  // beta runs over isomorphisms Q1 -> Q2
  auto b0 = brute_force_iso(e1.quotient, e2.quotient);
  ASSERT_TRUE(b0);
  std::vector<GroupMap> betas;
  for (const auto& a : enumerate_automorphisms(e1.quotient)) betas.push_back(compose(*b0, a));
  auto pc = pseudo_congruent(e1, e2, enumerate_abelian_automorphisms(e1.coefficient), betas);
  ASSERT_TRUE(pc);
  auto t = twist(e2, pc->alpha, pc->beta);
  auto u = coboundary_witness(e1, t);
  ASSERT_TRUE(u);
  auto w = main_lemma_witness(qp1, e1, qp2, *a2, pc->alpha.matrix, pc->beta, *u);
  EXPECT_TRUE(is_isomorphism(w));
}

TEST(IsoEngine, ElementaryCharacteristicChoice) {
  auto c = elementary_characteristic(families::z2_a5());
  ASSERT_TRUE(c);
  EXPECT_EQ(c->subgroup.size(), 2u);
  c = elementary_characteristic(families::symmetric(4));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->subgroup.size(), 1u);
  c = elementary_characteristic(families::alternating(4));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->subgroup.size(), 4u);
}

TEST(IsoEngine, NonPcRegression) {
  auto e = families::example_e2();
  EXPECT_TRUE(non_pc_regression(e.g, e.image1, e.image2));
  EXPECT_FALSE(non_pc_regression(e.g, e.image1, e.image1));
}

TEST(IsoEngine, SemisimpleStrategiesAgreeOnA5xA5) {
  auto a = families::a5xa5_central(true, false);
  auto b = families::a5xa5_central(false, true);
  auto c = families::a5xa5_central(true, true);
  for (const char* s : {"ss-product-1", "ss-product-2"}) {
    auto v = iso_with_strategy(s, a.group, b.group);
    EXPECT_TRUE(v.isomorphic()) << s;
    expect_witness(v, a.group, b.group);
    EXPECT_FALSE(iso_with_strategy(s, a.group, c.group).isomorphic()) << s;
  }
}

TEST(IsoEngine, UnknownStrategy) {
  EXPECT_THROW(iso_with_strategy("nope", families::cyclic(2), families::cyclic(2)), PreconditionFailed);
}
