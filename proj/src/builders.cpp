#include "extiso/builders.hpp"

#include <numeric>

namespace extiso {

namespace {

std::vector<Cell> alloc_table(std::size_t n) {
  if (n > kMaxOrder) throw CapExceeded("group too large for table storage");
  return std::vector<Cell>(n * n);
}

}  // namespace

GroupPtr reconstruct_abelian(const ExtensionData& ed, std::string label) {
  if (!verify_extension_data(ed)) throw InvalidExtensionData("extension data fail the cocycle identities");
  const auto& A = *ed.coefficient;
  const auto& Ag = *A.group;
  const auto& Q = *ed.quotient;
  const std::size_t na = Ag.order(), nq = Q.order(), n = na * nq;
  auto table = alloc_table(n);
  // theta_p as permutations of A
  std::vector<Elem> act(nq * na);
  for (Elem p = 0; p < nq; ++p) {
    AbelianAut t{ed.coefficient, ed.action[p]};
    for (Elem b = 0; b < na; ++b) act[p * na + b] = apply_aut(t, b);
  }
  std::vector<std::size_t> rank(na);
  for (Elem a = 0; a < na; ++a) rank[a] = A.coord_rank(a);
  for (std::size_t x = 0; x < n; ++x) {
    Elem a = A.elem_at_rank(x / nq), p = static_cast<Elem>(x % nq);
    for (std::size_t y = 0; y < n; ++y) {
      Elem b = A.elem_at_rank(y / nq), q = static_cast<Elem>(y % nq);
      Elem c = Ag.mul(Ag.mul(a, act[p * na + b]), ed.f(p, q));
      table[x * n + y] = static_cast<Cell>(rank[c] * nq + Q.mul(p, q));
    }
  }
  return std::make_shared<CayleyGroup>(n, std::move(table), std::vector<Elem>{}, std::move(label));
}

GroupPtr reconstruct_general(const GeneralExtensionData& ed, std::string label) {
  if (!verify_extension_data(ed)) throw InvalidExtensionData("general extension data fail the identities");
  const auto& N = *ed.normal;
  const auto& Q = *ed.quotient;
  const std::size_t nn = N.order(), nq = Q.order(), n = nn * nq;
  auto table = alloc_table(n);
  for (std::size_t x = 0; x < n; ++x) {
    Elem a = static_cast<Elem>(x / nq), p = static_cast<Elem>(x % nq);
    for (std::size_t y = 0; y < n; ++y) {
      Elem b = static_cast<Elem>(y / nq), q = static_cast<Elem>(y % nq);
      Elem c = N.mul(N.mul(a, ed.T[p][b]), ed.f(p, q));
      table[x * n + y] = static_cast<Cell>(c * nq + Q.mul(p, q));
    }
  }
  return std::make_shared<CayleyGroup>(n, std::move(table), std::vector<Elem>{}, std::move(label));
}

GroupPtr semidirect_product(const AbelianPtr& a, const GroupPtr& q, const std::vector<Mat>& action, std::string label) {
  ExtensionData ed = zero_extension_data(a, q);
  ed.action = action;
  return reconstruct_abelian(ed, std::move(label));
}

std::vector<std::uint32_t> BilinearMap::eval(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) const {
  std::vector<std::uint64_t> acc(k, 0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      std::uint64_t c = std::uint64_t{x[i]} * y[j] % p;
      if (!c) continue;
      for (std::size_t t = 0; t < k; ++t) acc[t] += c * values[i * l + j][t];
    }
  std::vector<std::uint32_t> out(k);
  for (std::size_t t = 0; t < k; ++t) out[t] = static_cast<std::uint32_t>(acc[t] % p);
  return out;
}

bool BilinearMap::alternating() const {
  if (values.size() != l * l) return false;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      const auto& a = values[i * l + j];
      const auto& b = values[j * l + i];
      if (a.size() != k || b.size() != k) return false;
      for (std::size_t t = 0; t < k; ++t) {
        if (a[t] >= p) return false;
        if ((a[t] + b[t]) % p != 0) return false;
        if (i == j && a[t] != 0) return false;
      }
    }
  return true;
}

GroupPtr baer_group(const BilinearMap& b, std::string label) {
  if (b.p == 2) throw EvenPrime("Baer correspondence needs an odd prime");
  if (b.p < 2) throw PreconditionFailed("p must be prime");
  if (!b.alternating()) throw PreconditionFailed("bilinear map must be alternating");
  const std::size_t dim = b.k + b.l;
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    n *= b.p;
    if (n > kMaxOrder) throw CapExceeded("Baer group too large");
  }
  const std::uint32_t half = (b.p + 1) / 2;
  // coordinate vectors, coordinate 0 most significant
  std::vector<std::vector<std::uint32_t>> vec(n, std::vector<std::uint32_t>(dim));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = x;
    for (std::size_t i = dim; i-- > 0;) {
      vec[x][i] = static_cast<std::uint32_t>(r % b.p);
      r /= b.p;
    }
  }
  auto table = alloc_table(n);
  std::vector<std::uint32_t> z(dim);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::span<const std::uint32_t> qx(vec[x].data() + b.k, b.l), qy(vec[y].data() + b.k, b.l);
      auto f = b.eval(qx, qy);
      for (std::size_t i = 0; i < dim; ++i) z[i] = (vec[x][i] + vec[y][i]) % b.p;
      for (std::size_t t = 0; t < b.k; ++t) z[t] = static_cast<std::uint32_t>((z[t] + std::uint64_t{half} * f[t]) % b.p);
      std::size_t r = 0;
      for (std::size_t i = 0; i < dim; ++i) r = r * b.p + z[i];
      table[x * n + y] = static_cast<Cell>(r);
    }
  return std::make_shared<CayleyGroup>(n, std::move(table), std::vector<Elem>{}, std::move(label));
}

GroupPtr central_product(const GroupPtr& g1, const GroupPtr& g2, const Subgroup& y1, const GroupMap& phi,
                         std::string label) {
  Subgroup z1 = center(g1), z2 = center(g2);
  if (!y1.subset_of(z1)) throw NotCentral("Y1 is not central in G1");
  if (phi.image.size() != y1.size() || !is_homomorphism(phi)) throw NotCentral("phi is not a homomorphism on Y1");
  std::vector<char> hit(g2->order(), 0);
  for (Elem v : phi.image) {
    if (!z2.contains(v) || hit[v]) throw NotCentral("phi must be injective into Z(G2)");
    hit[v] = 1;
  }
  auto d = direct_product(g1, g2);
  const std::size_t b = g2->order();
  std::vector<Elem> k;
  for (std::size_t i = 0; i < y1.size(); ++i) k.push_back(g1->inv(y1.members[i]) * static_cast<Elem>(b) + phi.image[i]);
  auto qp = quotient_with_section(d, Subgroup(d, std::move(k)));
  const auto& q = *qp.quotient;
  return std::make_shared<CayleyGroup>(q.order(), q.table(), std::vector<Elem>{}, std::move(label));
}

TrivialCore act_trivial_core(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("N is not normal");
  const auto& G = *g;
  auto qp = quotient_with_section(g, n);
  auto ngens = subgroup_generators(n);
  // each coset must act on N as conjugation by some element of N
  for (Elem q = 0; q < qp.quotient->order(); ++q) {
    Elem s = qp.section(q);
    bool found = false;
    for (Elem m : n.members) {
      bool same = true;
      for (Elem x : ngens)
        if (G.conj(x, s) != G.conj(x, m)) {
          same = false;
          break;
        }
      if (same) {
        found = true;
        break;
      }
    }
    if (!found) throw OuterActionNontrivial("a coset of N acts by an outer automorphism");
  }
  Subgroup c = centralizer(g, n);
  Subgroup zn = intersect(c, n);
  if (c.size() != zn.size() * qp.quotient->order()) throw PreconditionFailed("centralizer has the wrong order");
  auto sub = subgroup_as_group(c);
  return {sub.group, sub.embedding};
}

std::optional<Subgroup> find_complement(const GroupPtr& g, const Subgroup& a) {
  if (!is_normal(a)) throw NotNormal("A is not normal");
  auto qp = quotient_with_section(g, a);
  auto sub = subgroup_as_group(a);
  if (!sub.group->is_abelian()) throw NotAbelian("A is not abelian");
  auto ed = extract_extension_data(qp, primary_decomposition(sub.group));
  // sections t(q) = u(q) s(q) that are homomorphisms: u(p) + theta_p u(q) + f(p,q) = u(pq)
  ExtensionData zero = ed;
  std::fill(zero.cocycle.begin(), zero.cocycle.end(), 0);
  auto u = coboundary_witness(zero, ed);
  if (!u) return std::nullopt;
  std::vector<Elem> c;
  for (Elem q = 0; q < qp.quotient->order(); ++q) c.push_back(g->mul(a.members[(*u)[q]], qp.section(q)));
  Subgroup comp(g, std::move(c));
  for (Elem x : comp.members)
    for (Elem y : comp.members)
      if (!comp.contains(g->mul(x, y))) throw PreconditionFailed("complement construction is not closed");
  return comp;
}

}  // namespace extiso
