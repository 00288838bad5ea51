#include <gtest/gtest.h>

#include <random>

#include "extiso/builders.hpp"
#include "extiso/cohomology.hpp"
#include "extiso/families.hpp"
#include "oracles.hpp"

using namespace extiso;

namespace {

// Trivial-action data on an abelian Q whose cocycle is c(x, y) in coordinates of A.
template <class F>
ExtensionData abelian_quotient_data(const AbelianPtr& a, const GroupPtr& q, F c) {
  auto qs = primary_decomposition(q);
  auto ed = zero_extension_data(a, q);
  const std::size_t n = q->order();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) ed.cocycle[x * n + y] = c(qs->to_coords(x), qs->to_coords(y));
  return ed;
}

// f + f_u
ExtensionData perturb(const ExtensionData& ed, const std::vector<Elem>& u) {
  auto rows = coboundary_of(ed, u);
  const auto& A = *ed.coefficient;
  auto out = ed;
  const std::size_t nn = ed.cocycle.size();
  std::vector<std::uint32_t> c(A.k());
  for (std::size_t j = 0; j < nn; ++j) {
    auto f = A.to_coords(ed.cocycle[j]);
    for (std::size_t i = 0; i < A.k(); ++i) c[i] = static_cast<std::uint32_t>((f[i] + rows[i][j]) % A.orders[i]);
    out.cocycle[j] = A.from_coords(c);
  }
  return out;
}

std::vector<Elem> random_u(std::size_t n, std::size_t an, std::mt19937_64& rng) {
  std::vector<Elem> u(n, 0);
  for (std::size_t i = 1; i < n; ++i) u[i] = static_cast<Elem>(rng() % an);
  return u;
}

// f1 - f2 a coboundary, by trying every normalized u (trivial action)
bool cohomologous_brute(const ExtensionData& f1, const ExtensionData& f2) {
  const auto& A = *f1.coefficient->group;
  const auto& Q = *f1.quotient;
  const std::size_t n = Q.order(), an = A.order();
  std::vector<Elem> u(n, 0);
  for (;;) {
    bool ok = true;
    for (Elem p = 0; p < n && ok; ++p)
      for (Elem q = 0; q < n && ok; ++q) {
        Elem fu = A.mul(A.mul(u[p], u[q]), A.inv(u[Q.mul(p, q)]));
        ok = f1.f(p, q) == A.mul(f2.f(p, q), fu);
      }
    if (ok) return true;
    std::size_t i = 1;
    while (i < n && ++u[i] == an) u[i++] = 0;
    if (i >= n) return false;
  }
}

bool same_class_exhaustive(const ExtensionData& f1, const ExtensionData& f2) {
  auto id = identity_map(f1.quotient);
  for (const auto& al : enumerate_abelian_automorphisms(f1.coefficient))
    if (cohomologous_brute(f1, twist(f2, al, id))) return true;
  return false;
}

}  // namespace

TEST(Cohomology, ExtractedDataIsValidAndReconstructs) {
  struct Case {
    GroupPtr g;
    Subgroup n;
  };
  auto s4 = families::symmetric(4);
  auto sl = families::sl25();
  auto q8 = families::quaternion8();
  std::vector<Case> cases = {{s4, minimal_normal_subgroups(s4)[0]}, {sl, center(sl)}, {q8, center(q8)},
                             {families::z7_z3(), solvable_radical(families::z7_z3())}};
  cases.back().n = commutator_subgroup(families::z7_z3());
  for (const auto& c : cases) {
    auto qp = quotient_with_section(c.g, c.n);
    auto ed = extract_extension_data(qp);
    EXPECT_TRUE(verify_extension_data(ed));
    auto h = reconstruct_abelian(ed);
    EXPECT_EQ(h->order(), c.g->order());
    EXPECT_TRUE(brute_force_iso(c.g, h));
  }
}

TEST(Cohomology, TwistPreservesValidity) {
  auto g = families::symmetric(4);
  auto qp = quotient_with_section(g, minimal_normal_subgroups(g)[0]);
  auto ed = extract_extension_data(qp);
  auto aq = enumerate_automorphisms(ed.quotient);
  auto aa = enumerate_abelian_automorphisms(ed.coefficient);
  for (const auto& b : aq)
    for (const auto& a : aa) {
      auto t = twist(ed, a, b);
      EXPECT_TRUE(verify_extension_data(t));
      EXPECT_TRUE(brute_force_iso(reconstruct_abelian(t), g));
    }
}

TEST(Cohomology, BrokenCocycleRejected) {
  auto g = families::quaternion8();
  auto ed = extract_extension_data(quotient_with_section(g, center(g)));
  ed.cocycle[1 * 4 + 2] ^= 1;
  EXPECT_FALSE(verify_extension_data(ed));
}

TEST(Cohomology, CoboundaryDimensionMatchesOracle) {
  auto z2 = primary_decomposition(families::cyclic(2));
  for (auto q : {families::symmetric(3), families::quaternion8(), families::alternating(4), families::dihedral(4),
                 families::alternating(5)}) {
    EXPECT_EQ(coboundary_basis(q, z2).size(), oracle::b2_dimension_full(*q)) << q->order();
  }
}

TEST(Cohomology, CoboundaryWitness) {
  std::mt19937_64 rng(4);
  auto g = families::symmetric(4);
  auto ed = extract_extension_data(quotient_with_section(g, minimal_normal_subgroups(g)[0]));
  for (int t = 0; t < 10; ++t) {
    auto u = random_u(ed.qn(), 4, rng);
    auto f1 = perturb(ed, u);
    EXPECT_TRUE(verify_extension_data(f1));
    auto w = coboundary_witness(f1, ed);
    ASSERT_TRUE(w);
    EXPECT_EQ(perturb(ed, *w).cocycle, f1.cocycle);
  }
  // Z4 = [Z2, Z2 | nontrivial class] is not cohomologous to the split one
  auto z4 = extract_extension_data(quotient_with_section(families::cyclic(4), subgroup_generated(families::cyclic(4), std::vector<Elem>{2})));
  auto split = zero_extension_data(z4.coefficient, z4.quotient);
  EXPECT_FALSE(cohomologous(z4, split));
}

// A = Z4 x Z2 with trivial action; the per-(p, mu) span test against a search
// over Aut(A) and every normalized coboundary.
TEST(Cohomology, GeneralAbelianSpanMatchesExhaustive) {
  auto A = primary_decomposition(families::abelian({4, 2}));
  const std::size_t an = 8;
  std::mt19937_64 rng(12);
  auto add = [&](Elem x, Elem y) { return A->group->mul(x, y); };
  for (auto q : {families::cyclic(2), families::cyclic(4), families::abelian({2, 2})}) {
    auto qs = primary_decomposition(q);
    const std::size_t n = q->order();
    std::vector<ExtensionData> eds;
    for (int t = 0; t < 24; ++t) {
      Elem c[3] = {static_cast<Elem>(rng() % an), static_cast<Elem>(rng() % an), static_cast<Elem>(rng() % an)};
      // the bilinear term is a cocycle only with values of order <= 2
      while (A->group->elem_order(c[2]) > 2) c[2] = static_cast<Elem>(rng() % an);
      // carries on each cyclic coordinate plus a bilinear term
      auto ed = abelian_quotient_data(A, q, [&](auto x, auto y) {
        Elem v = 0;
        for (std::size_t i = 0; i < qs->k(); ++i)
          if (x[i] + y[i] >= qs->orders[i]) v = add(v, c[i]);
        if (qs->k() == 2 && x[0] * y[1] % 2) v = add(v, c[2]);
        return v;
      });
      ASSERT_TRUE(verify_extension_data(ed));
      eds.push_back(perturb(ed, random_u(n, an, rng)));
    }
    int agree_true = 0;
    for (std::size_t i = 0; i < eds.size(); ++i)
      for (std::size_t j = i; j < eds.size(); j += 3) {
        bool want = same_class_exhaustive(eds[i], eds[j]);
        EXPECT_EQ(same_class_up_to_autA(eds[i], eds[j]), want) << n << " " << i << " " << j;
        agree_true += want;
      }
    EXPECT_GT(agree_true, 0);
  }
}

TEST(Cohomology, ProjectionIsInvariantUnderCoboundaries) {
  std::mt19937_64 rng(8);
  auto g = families::sl25();
  auto ed = extract_extension_data(quotient_with_section(g, center(g)));
  auto pi = projection_complement(ed.quotient, ed.coefficient);
  auto base = pi.apply(cocycle_rows(ed));
  EXPECT_EQ(pi.apply(base), base);
  for (int t = 0; t < 5; ++t) {
    auto f = perturb(ed, random_u(ed.qn(), 2, rng));
    EXPECT_EQ(pi.apply(cocycle_rows(f)), base);
  }
  auto zero = zero_extension_data(ed.coefficient, ed.quotient);
  EXPECT_NE(pi.apply(cocycle_rows(zero)), base);
  EXPECT_EQ(pi.apply(cocycle_rows(perturb(zero, random_u(60, 2, rng)))), pi.apply(cocycle_rows(zero)));
}

TEST(Cohomology, CentralDirectFactor) {
  auto z2a5 = families::z2_a5();
  auto s = split_central_direct_factor(z2a5);
  EXPECT_EQ(s.factor.size(), 2u);
  EXPECT_TRUE(is_internal_direct_product(s.factor, s.complement));
  EXPECT_EQ(split_central_direct_factor(families::sl25()).factor.size(), 1u);
  auto g = direct_product(families::cyclic(4), families::symmetric(3));
  auto t = split_central_direct_factor(g);
  EXPECT_EQ(t.factor.size(), 4u);
  EXPECT_EQ(t.complement.size(), 6u);
  EXPECT_TRUE(is_internal_direct_product(t.factor, t.complement));
  // Z4 has Z2 central but not a direct factor
  EXPECT_EQ(split_central_direct_factor(families::quaternion8()).factor.size(), 1u);
}

TEST(Cohomology, ProductCocycleAssembly) {
  auto sl = families::sl25();
  auto z2a5 = families::z2_a5();
  auto e1 = extract_extension_data(quotient_with_section(sl, center(sl)));
  auto e2 = extract_extension_data(quotient_with_section(z2a5, center(z2a5)));
  auto pc = assemble_product_cocycle({e1, e2});
  EXPECT_EQ(pc.quotient->order(), 3600u);
  EXPECT_TRUE(verify_extension_data(pc.data));
}

TEST(Cohomology, ToMatrixShape) {
  auto g = families::quaternion8();
  auto ed = extract_extension_data(quotient_with_section(g, center(g)));
  auto m = to_matrix(ed);
  EXPECT_EQ(m.entries.size(), 1u);
  EXPECT_EQ(m.columns.size(), 16u);
  EXPECT_EQ(m.entries[0].size(), 16u);
}
