#include "extiso/families.hpp"

namespace extiso::families {

GroupPtr trivial() { return std::make_shared<CayleyGroup>(1, std::vector<Cell>{0}, std::vector<Elem>{}, "1"); }

GroupPtr cyclic(std::size_t n) {
  if (n == 0 || n > kMaxOrder) throw PreconditionFailed("bad cyclic order");
  std::vector<Cell> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<Cell>((a + b) % n);
  return std::make_shared<CayleyGroup>(n, std::move(t), std::vector<Elem>{}, "Z" + std::to_string(n));
}

GroupPtr abelian(const std::vector<std::size_t>& orders) {
  if (orders.empty()) return trivial();
  GroupPtr g = cyclic(orders[0]);
  std::string label = "Z" + std::to_string(orders[0]);
  for (std::size_t i = 1; i < orders.size(); ++i) {
    label += "xZ" + std::to_string(orders[i]);
    g = direct_product(g, cyclic(orders[i]), label);
  }
  return g;
}

GroupPtr elementary_abelian(std::uint32_t p, std::size_t k) { return abelian(std::vector<std::size_t>(k, p)); }

GroupPtr dihedral(std::size_t n) {
  // r^a s^b at index b * n + a
  const std::size_t m = 2 * n;
  std::vector<Cell> t(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
      std::size_t e = b ? (a + n - c) % n : (a + c) % n;
      t[x * m + y] = static_cast<Cell>(((b + d) % 2) * n + e);
    }
  return std::make_shared<CayleyGroup>(m, std::move(t), std::vector<Elem>{}, "D" + std::to_string(m));
}

GroupPtr symmetric(std::size_t n) {
  if (n <= 1) return trivial();
  Perm sw(n), cyc(n);
  for (std::size_t i = 0; i < n; ++i) {
    sw[i] = static_cast<std::uint32_t>(i);
    cyc[i] = static_cast<std::uint32_t>((i + 1) % n);
  }
  std::swap(sw[0], sw[1]);
  return group_from_permutations(n, {sw, cyc}, kDefaultClosureCap, "S" + std::to_string(n));
}

GroupPtr alternating(std::size_t n) {
  if (n <= 2) return trivial();
  std::vector<Perm> gens;
  for (std::size_t i = 2; i < n; ++i) {
    Perm p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = static_cast<std::uint32_t>(j);
    p[0] = 1;
    p[1] = static_cast<std::uint32_t>(i);
    p[i] = 0;
    gens.push_back(p);
  }
  return group_from_permutations(n, gens, kDefaultClosureCap, "A" + std::to_string(n));
}

GroupPtr quaternion8() { return group_from_matrices(3, 2, {{0, 2, 1, 0}, {1, 1, 1, 2}}, kDefaultClosureCap, "Q8"); }

GroupPtr heisenberg(std::uint32_t p) {
  return group_from_matrices(p, 3, {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 0, 0, 1}}, kDefaultClosureCap,
                             "Heis" + std::to_string(p));
}

GroupPtr sl25() { return group_from_matrices(5, 2, {{1, 1, 0, 1}, {1, 0, 1, 1}}, kDefaultClosureCap, "SL(2,5)"); }

namespace {

GroupPtr cyclic_semidirect(std::size_t a, std::size_t q, std::uint32_t unit, std::string label) {
  auto A = primary_decomposition(cyclic(a));
  if (A->k() != 1) throw PreconditionFailed("coefficient must be cyclic of prime power order");
  std::vector<Mat> act;
  std::uint64_t u = 1;
  for (std::size_t i = 0; i < q; ++i) {
    act.push_back(Mat{Vec{static_cast<std::uint32_t>(u)}});
    u = u * unit % a;
  }
  return semidirect_product(A, cyclic(q), act, std::move(label));
}

}  // namespace

GroupPtr z7_z3() { return cyclic_semidirect(7, 3, 2, "Z7:Z3"); }
GroupPtr z3_z2() { return cyclic_semidirect(3, 2, 2, "Z3:Z2"); }
GroupPtr z2_a5() { return direct_product(cyclic(2), alternating(5), "Z2xA5"); }

ProductExtension a5xa5_central(bool first, bool second) {
  static const auto base = [] {
    auto g = sl25();
    auto qp = quotient_with_section(g, center(g));
    return extract_extension_data(qp);
  }();
  ExtensionData zero = zero_extension_data(base.coefficient, base.quotient);
  auto pc = assemble_product_cocycle({first ? base : zero, second ? base : zero});
  std::string label = std::string("2.(A5xA5)[") + (first ? "1" : "0") + (second ? "1" : "0") + "]";
  return {reconstruct_abelian(pc.data, label), pc.data};
}

ExampleE1 example_e1() {
  auto z9 = cyclic(9);
  auto A = primary_decomposition(cyclic(3));
  auto Q = cyclic(3);
  auto data = [&](std::uint32_t i) {
    // section of pi_i(x) = i x mod 3
    std::vector<std::uint32_t> s(3, 0);
    for (std::uint32_t x = 0; x < 3; ++x) s[i * x % 3] = x;
    ExtensionData ed = zero_extension_data(A, Q);
    for (std::uint32_t p = 0; p < 3; ++p)
      for (std::uint32_t q = 0; q < 3; ++q) {
        std::uint32_t v = (s[p] + s[q] + 9 - s[(p + q) % 3]) % 9;
        ed.cocycle[p * 3 + q] = v / 3;  // iota(1) = 3
      }
    return ed;
  };
  return {data(1), data(2), z9};
}

ExampleE2 example_e2(std::uint32_t p) {
  const std::size_t p2 = std::size_t{p} * p, p3 = p2 * p;
  auto g = abelian({p3, p2, p, p});
  auto idx = [&](std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4) {
    return static_cast<Elem>(((x1 % p3 * p2 + x2 % p2) * p + x3 % p) * p + x4 % p);
  };
  std::vector<Elem> i1, i2;
  for (std::size_t a = 0; a < p2; ++a)
    for (std::size_t b = 0; b < p; ++b)
      for (std::size_t c = 0; c < p; ++c) {
        i1.push_back(idx(p * a, 0, b, c));
        i2.push_back(idx(p * a, p * b, a % p, c));
      }
  return {g, Subgroup(g, i1), Subgroup(g, i2)};
}

std::vector<NamedGroup> corpus() {
  std::vector<NamedGroup> c;
  auto add = [&](std::string name, GroupPtr g) { c.push_back({std::move(name), std::move(g)}); };
  add("trivial", trivial());
  for (std::size_t n : {2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 27}) add("cyclic" + std::to_string(n), cyclic(n));
  add("z2x2", elementary_abelian(2, 2));
  add("z2x2x2", elementary_abelian(2, 3));
  add("z3x3", elementary_abelian(3, 2));
  add("z4x2", abelian({4, 2}));
  add("z2x6", abelian({2, 6}));
  add("z4x4", abelian({4, 4}));
  add("z8x2", abelian({8, 2}));
  add("z2x2x2x2", elementary_abelian(2, 4));
  add("z3x9", abelian({3, 9}));
  add("z2x2x3x3", abelian({2, 2, 3, 3}));
  add("dihedral6", dihedral(3));
  add("s3_perm", symmetric(3));
  add("z3_z2", z3_z2());
  add("dihedral8", dihedral(4));
  add("quaternion8", quaternion8());
  add("dihedral10", dihedral(5));
  add("dihedral12", dihedral(6));
  add("z2xs3", direct_product(cyclic(2), symmetric(3), "Z2xS3"));
  add("a4", alternating(4));
  add("z3xs3", direct_product(cyclic(3), symmetric(3), "Z3xS3"));
  add("z7_z3", z7_z3());
  add("s4", symmetric(4));
  add("z2xq8", direct_product(cyclic(2), quaternion8(), "Z2xQ8"));
  add("z2xd8", direct_product(cyclic(2), dihedral(4), "Z2xD8"));
  add("heisenberg27", heisenberg(3));
  add("baer27_21", baer_group({3, 1, 2, {{0}, {1}, {2}, {0}}}, "Baer(3;1,2)"));
  add("heisenberg27_relabel", random_relabel(heisenberg(3), 27).first);
  add("baer125", baer_group({5, 1, 2, {{0}, {1}, {4}, {0}}}, "Baer(5;1,2)"));
  add("z5_z4", [] {
    auto A = primary_decomposition(cyclic(5));
    std::vector<Mat> act{{{1}}, {{2}}, {{4}}, {{3}}};
    return semidirect_product(A, cyclic(4), act, "Z5:Z4");
  }());
  add("a5", alternating(5));
  add("sl25", sl25());
  add("z2xa5", z2_a5());
  add("s5", symmetric(5));
  add("sl25_relabel", random_relabel(sl25(), 11).first);
  add("z2xa5_relabel", random_relabel(z2_a5(), 12).first);
  add("q8_relabel", random_relabel(quaternion8(), 13).first);
  add("z4x2_relabel", random_relabel(abelian({4, 2}), 14).first);
  return c;
}

}  // namespace extiso::families
