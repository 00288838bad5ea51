#include "extiso/isoengine.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "extiso/kernels.hpp"
#include "extiso/permtools.hpp"

namespace extiso {

namespace {

constexpr Elem kNone = ~Elem{0};

std::vector<Elem> index_in(const Subgroup& h) {
  std::vector<Elem> idx(h.parent->order(), kNone);
  for (std::size_t i = 0; i < h.members.size(); ++i) idx[h.members[i]] = static_cast<Elem>(i);
  return idx;
}

IsoVerdict verdict(IsoResult r, std::string strategy, std::string note) {
  IsoVerdict v;
  v.result = r;
  v.strategy = std::move(strategy);
  v.certificate.push_back(std::move(note));
  return v;
}

IsoVerdict not_iso(std::string strategy, std::string note) {
  return verdict(IsoResult::not_isomorphic, std::move(strategy), std::move(note));
}

IsoVerdict iso_with(GroupMap w, std::string strategy, std::string note) {
  if (!is_isomorphism(w)) throw Error(strategy + ": witness failed verification");
  w.kind = MapKind::isomorphism;
  auto v = verdict(IsoResult::isomorphic, std::move(strategy), std::move(note));
  v.witness = std::move(w);
  return v;
}

// (M R)[i][c] = sum_j M_ij R[j][c] mod orders[i]
Mat apply_rows(const AbelianStructure& a, const Mat& m, const Mat& rows) {
  const std::size_t k = a.k();
  if (k == 0) return {};
  const std::size_t cols = rows[0].size();
  Mat out(k, Vec(cols, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!m[i][j]) continue;
      const std::uint64_t c = m[i][j];
      for (std::size_t x = 0; x < cols; ++x)
        out[i][x] = static_cast<std::uint32_t>((out[i][x] + c * rows[j][x]) % a.orders[i]);
    }
  return out;
}

Mat rows_of(const ExtensionData& ed) { return cocycle_rows(ed); }

std::vector<GroupMap> isomorphisms(const GroupPtr& q1, const GroupPtr& q2, const IsoConfig& cfg) {
  auto phi = brute_force_iso(q1, q2);
  if (!phi) return {};
  std::vector<GroupMap> out;
  for (const auto& a : enumerate_automorphisms(q1, cfg.aut_order_cap)) out.push_back(compose(*phi, a));
  return out;
}

bool elementary(const Subgroup& s) {
  std::uint32_t p = 0;
  for (Elem x : s.members) {
    auto o = s.parent->elem_order(x);
    if (o == 1) continue;
    if (p == 0) p = o;
    if (o != p) return false;
    for (std::uint32_t d = 2; d * d <= o; ++d)
      if (o % d == 0) return false;
  }
  // abelian too
  for (Elem x : s.members)
    for (Elem y : s.members)
      if (s.parent->mul(x, y) != s.parent->mul(y, x)) return false;
  return true;
}

GroupMap abelian_subgroup_iso(const Subgroup& a1, const Subgroup& a2) {
  auto s1 = primary_decomposition(subgroup_as_group(a1).group);
  auto s2 = primary_decomposition(subgroup_as_group(a2).group);
  if (abelian_invariants(*s1) != abelian_invariants(*s2)) throw PreconditionFailed("abelian groups differ");
  GroupMap m{a1.parent, a2.parent, std::vector<Elem>(a1.parent->order(), kNone), MapKind::section};
  for (std::size_t i = 0; i < a1.size(); ++i) m.image[a1.members[i]] = a2.members[s2->from_coords(s1->to_coords(static_cast<Elem>(i)))];
  return m;
}

bool is_central_radical(const GroupPtr& g) { return solvable_radical(g) == center(g); }

}  // namespace

IsoConfig IsoConfig::from_env() {
  IsoConfig c;
  if (std::getenv("EXTISO_CAP")) {
    std::size_t v = cap_from_env(0);
    c.aut_order_cap = c.abelian_aut_cap = c.cyclicity_cap = c.diagonal_cap = c.brute_order_cap = v;
  }
  return c;
}

ExtensionData with_coefficient(const ExtensionData& ed, const AbelianPtr& a) {
  if (abelian_invariants(*ed.coefficient) != abelian_invariants(*a)) throw ActionMismatch("coefficient groups differ");
  ExtensionData out = ed;
  out.coefficient = a;
  for (auto& x : out.cocycle) x = a->from_coords(ed.coefficient->to_coords(x));
  return out;
}

std::optional<Mat> basis_change(const Mat& p1, const Mat& p2, std::uint32_t p) {
  const std::size_t k = p1.size();
  if (k == 0) return Mat{};
  const std::size_t m = p1[0].size();
  auto transform = [&](const Mat& pm) {
    kernels::ModMatrix a(k, m + k, p);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < m; ++j) a.at(i, j) = pm[i][j] % p;
      a.at(i, m + i) = 1;
    }
    kernels::modp_rref_serial(a);
    Mat y(k, Vec(k)), r(k, Vec(m));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) y[i][j] = a.at(i, m + j);
      for (std::size_t j = 0; j < m; ++j) r[i][j] = a.at(i, j);
    }
    return std::make_pair(y, r);
  };
  auto [y1, r1] = transform(p1);
  auto [y2, r2] = transform(p2);
  if (r1 != r2) return std::nullopt;
  auto y2inv = inverse_gfp(y2, p);
  if (!y2inv) return std::nullopt;
  Mat alpha = matmul_mod(*y2inv, y1, p);
  if (matmul_mod(alpha, p1, p) != p2) return std::nullopt;
  return alpha;
}

GroupMap main_lemma_witness(const QuotientPresentation& qp1, const ExtensionData& ed1, const QuotientPresentation& qp2,
                            const AbelianStructure& a2, const Mat& alpha, const GroupMap& beta,
                            const std::vector<Elem>& u) {
  const auto& G1 = *qp1.group;
  const auto& G2 = *qp2.group;
  const auto& A1 = *ed1.coefficient;
  auto idx = index_in(qp1.normal);
  std::vector<std::uint32_t> out(A1.k());
  GroupMap m{qp1.group, qp2.group, std::vector<Elem>(G1.order()), MapKind::isomorphism};
  for (Elem g = 0; g < G1.order(); ++g) {
    Elem q = qp1.projection(g);
    Elem a = idx[G1.mul(g, G1.inv(qp1.section(q)))];
    Elem b = A1.group->mul(a, u[q]);
    apply_aut_coords(A1, alpha, A1.to_coords(b), out);
    Elem c = qp2.normal.members[a2.from_coords(out)];
    m.image[g] = G2.mul(c, qp2.section(beta(q)));
  }
  return m;
}

// ------------------------------------------------------------ module cyclicity

namespace {

Vec flatten(const Mat& m) {
  Vec v;
  for (const auto& r : m) v.insert(v.end(), r.begin(), r.end());
  return v;
}

Mat unflatten(const Vec& v, std::size_t k) {
  Mat m(k, Vec(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = v[i * k + j];
  return m;
}

// basis of the row span over GF(p)
std::vector<Vec> span_basis(std::vector<Vec> vs, std::size_t n, std::uint32_t p) {
  if (vs.empty()) return {};
  kernels::ModMatrix a(vs.size(), n, p);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = vs[i][j] % p;
  auto piv = kernels::modp_rref_serial(a);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.emplace_back(a.row(i), a.row(i) + n);
  return out;
}

// {alpha : alpha th1(q) = th2(q) alpha, exists a: [alpha f1] = [a f2]} modulo B^2(th2)
std::vector<Mat> intertwiners(const CayleyGroup& q, std::uint32_t p, std::size_t k, const std::vector<Mat>& th1,
                              const std::vector<Mat>& th2, const Mat& r1, const Mat& r2, const HowellSpan& b2) {
  const std::size_t nv = k * k + 1;
  const std::size_t m = r1.empty() ? 0 : r1[0].size();
  Mat eqs;
  for (Elem g : q.generators()) {
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t s = 0; s < k; ++s) {
        Vec e(nv, 0);
        for (std::size_t t = 0; t < k; ++t) {
          e[r * k + t] = (e[r * k + t] + th1[g][t][s]) % p;
          e[t * k + s] = (e[t * k + s] + p - th2[g][r][t] % p) % p;
        }
        eqs.push_back(std::move(e));
      }
  }
  // reduced images of E_ij f1 and of f2
  std::vector<Vec> red(nv);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Vec v(k * m, 0);
      std::copy(r1[j].begin(), r1[j].end(), v.begin() + i * m);
      b2.reduce(v);
      red[i * k + j] = std::move(v);
    }
  {
    Vec v = flatten(r2);
    b2.reduce(v);
    for (auto& x : v) x = x ? p - x : 0;
    red[k * k] = std::move(v);
  }
  for (std::size_t c = 0; c < k * m; ++c) {
    Vec e(nv);
    bool any = false;
    for (std::size_t t = 0; t < nv; ++t) {
      e[t] = red[t][c];
      any = any || e[t];
    }
    if (any) eqs.push_back(std::move(e));
  }
  eqs = span_basis(std::move(eqs), nv, p);
  Mat ns = nullspace_gfp(eqs, nv, p);
  std::vector<Vec> alphas;
  for (auto& v : ns) alphas.emplace_back(v.begin(), v.begin() + k * k);
  std::vector<Mat> out;
  for (const auto& v : span_basis(std::move(alphas), k * k, p)) out.push_back(unflatten(v, k));
  return out;
}

HowellSpan b2_span(const ExtensionData& ed) {
  const auto& A = *ed.coefficient;
  const std::size_t m = ed.qn() * ed.qn();
  HowellSpan span(ModRing(A.primes.empty() ? 2 : A.primes[0], 1), A.k() * m);
  for (const auto& b : coboundary_basis(ed.quotient, ed.coefficient, ed.action)) span.insert(flatten(b));
  return span;
}

AlgebraModulePair module_pair_with(const ExtensionData& ed1, const ExtensionData& ed2, const HowellSpan& b2) {
  const auto& A = *ed2.coefficient;
  AlgebraModulePair pair;
  pair.k = A.k();
  if (pair.k == 0) return pair;
  pair.p = A.primes[0];
  Mat r1 = rows_of(ed1), r2 = rows_of(ed2);
  pair.V = intertwiners(*ed1.quotient, pair.p, pair.k, ed1.action, ed2.action, r1, r2, b2);
  pair.U = intertwiners(*ed1.quotient, pair.p, pair.k, ed2.action, ed2.action, r2, r2, b2);
  return pair;
}

bool invertible(const Mat& m, std::uint32_t p) { return m.empty() || inverse_gfp(m, p).has_value(); }

}  // namespace

AlgebraModulePair build_module_pair(const ExtensionData& ed1, const ExtensionData& ed2) {
  if (!ed2.coefficient->elementary()) throw PreconditionFailed("module pair needs an elementary abelian coefficient");
  return module_pair_with(ed1, ed2, b2_span(ed2));
}

std::optional<Mat> module_cyclicity_test(const AlgebraModulePair& pair, std::size_t cap) {
  const std::size_t k = pair.k, d = pair.V.size();
  if (d == 0) return Mat(k, Vec(k, 0));
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= pair.p;
    if (total > cap) throw CapExceeded("module cyclicity search: p^dim V exceeds cap");
  }
  std::vector<std::uint32_t> c(d, 0);
  for (std::size_t it = 1; it < total; ++it) {
    for (std::size_t i = d; i-- > 0;) {
      if (++c[i] < pair.p) break;
      c[i] = 0;
    }
    Mat v(k, Vec(k, 0));
    for (std::size_t t = 0; t < d; ++t)
      if (c[t])
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) v[i][j] = (v[i][j] + c[t] * pair.V[t][i][j]) % pair.p;
    std::vector<Vec> orbit;
    for (const auto& u : pair.U) orbit.push_back(flatten(matmul_mod(u, v, pair.p)));
    if (rank_gfp(orbit, k * k, pair.p) == d) return v;
  }
  return std::nullopt;
}

namespace {

std::optional<CyclicityMatch> cyclicity_match_with(const ExtensionData& ed1, const ExtensionData& ed2,
                                                   const HowellSpan& b2, std::size_t cap) {
  const auto& A = ed1.coefficient;
  const std::size_t k = A->k();
  const std::uint32_t p = k ? A->primes[0] : 2;
  auto gen = module_cyclicity_test(module_pair_with(ed1, ed2, b2), cap);
  if (!gen || !invertible(*gen, p)) return std::nullopt;
  // scalar correction: alpha = a^-1 alpha' with [alpha' f1] = a [f2]; a = 0 is rejected
  for (std::uint32_t a = 1; a < p || (k == 0 && a == 1); ++a) {
    std::uint32_t ainv = k ? ModRing(p, 1).unit_inverse(a) : 1;
    Mat alpha = *gen;
    for (auto& r : alpha)
      for (auto& x : r) x = static_cast<std::uint32_t>(std::uint64_t{x} * ainv % p);
    auto tw = twist(ed2, AbelianAut{A, alpha}, identity_map(ed1.quotient));
    if (tw.action != ed1.action) continue;
    if (auto u = coboundary_witness(ed1, tw)) return CyclicityMatch{std::move(alpha), std::move(*u)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<CyclicityMatch> cyclicity_match(const ExtensionData& ed1, const ExtensionData& ed2, std::size_t cap) {
  if (!ed1.coefficient->elementary()) throw PreconditionFailed("module route needs an elementary abelian coefficient");
  return cyclicity_match_with(ed1, ed2, b2_span(ed2), cap);
}

std::optional<PseudoCongruence> pseudo_congruent(const ExtensionData& ed1, const ExtensionData& ed2,
                                                 const std::vector<AbelianAut>& aut_a,
                                                 const std::vector<GroupMap>& aut_q) {
  for (const auto& beta : aut_q)
    for (const auto& alpha : aut_a) {
      auto tw = twist(ed2, alpha, beta);
      if (tw.action != ed1.action) continue;
      if (cohomologous(ed1, tw)) return PseudoCongruence{alpha, beta};
    }
  return std::nullopt;
}

// ------------------------------------------------------------ strategies

IsoVerdict iso_brute(const GroupPtr& g, const GroupPtr& h) {
  if (g->order() != h->order()) return not_iso("brute", "orders differ");
  auto m = brute_force_iso(g, h);
  if (!m) return not_iso("brute", "generator-image backtracking found no isomorphism");
  return iso_with(*m, "brute", "generator-image backtracking");
}

IsoVerdict iso_abelian(const GroupPtr& g, const GroupPtr& h) {
  if (!g->is_abelian() || !h->is_abelian()) throw StrategyInapplicable("abelian route needs abelian groups");
  auto s1 = primary_decomposition(g), s2 = primary_decomposition(h);
  if (abelian_invariants(*s1) != abelian_invariants(*s2)) return not_iso("abelian", "primary invariants differ");
  GroupMap m{g, h, std::vector<Elem>(g->order()), MapKind::isomorphism};
  for (Elem x = 0; x < g->order(); ++x) m.image[x] = s2->from_coords(s1->to_coords(x));
  return iso_with(std::move(m), "abelian", "primary invariants agree");
}

IsoVerdict iso_central_radical(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  const std::string S = "central-radical";
  if (!is_central_radical(g) || !is_central_radical(h)) throw StrategyInapplicable("rad(G) != Z(G)");
  if (g->order() != h->order()) return not_iso(S, "orders differ");
  auto qp1 = quotient_with_section(g, center(g));
  auto qp2 = quotient_with_section(h, center(h));
  auto A1 = coefficient_structure(qp1), A2 = coefficient_structure(qp2);
  if (abelian_invariants(*A1) != abelian_invariants(*A2)) return not_iso(S, "centers differ");
  auto betas = isomorphisms(qp1.quotient, qp2.quotient, cfg);
  if (betas.empty()) return not_iso(S, "central quotients not isomorphic");
  auto ed1 = extract_extension_data(qp1, A1);
  auto ed2 = with_coefficient(extract_extension_data(qp2, A2), A1);
  const std::size_t n = ed1.qn(), k = A1->k();
  CentralClassTester tester(qp1.quotient, A1);
  Mat r1 = rows_of(ed1);
  Mat c1 = tester.canonical(r1);
  std::map<std::pair<std::uint32_t, std::uint32_t>, HowellSpan> s1;
  for (std::size_t i = 0; i < k; ++i) {
    std::pair<std::uint32_t, std::uint32_t> key{A1->primes[i], A1->exps[i]};
    if (s1.count(key)) continue;
    HowellSpan s = tester.b2(key.first, key.second);
    for (auto& r : tester.lift_rows(r1, key.first, key.second)) s.insert(std::move(r));
    s1.emplace(key, std::move(s));
  }
  std::optional<std::vector<AbelianAut>> auts;
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const auto& beta = betas[bi];
    Mat r2(k, Vec(n * n));
    for (Elem p = 0; p < n; ++p)
      for (Elem q = 0; q < n; ++q) {
        auto co = A1->to_coords(ed2.f(beta(p), beta(q)));
        for (std::size_t i = 0; i < k; ++i) r2[i][p * n + q] = co[i];
      }
    bool same = true;
    for (const auto& [key, span] : s1) {
      HowellSpan s2 = tester.b2(key.first, key.second);
      for (auto& r : tester.lift_rows(r2, key.first, key.second)) s2.insert(std::move(r));
      if (!s2.same_span(span)) {
        same = false;
        break;
      }
    }
    if (!same) continue;
    // alpha with [alpha f1] = [f2 o beta]
    Mat c2 = tester.canonical(r2);
    std::optional<Mat> alpha;
    if (A1->elementary()) {
      alpha = basis_change(c1, c2, k ? A1->primes[0] : 2);
    } else {
      if (!auts) auts = enumerate_abelian_automorphisms(A1, cfg.abelian_aut_cap);
      for (const auto& a : *auts)
        if (tester.canonical(apply_rows(*A1, a.matrix, r1)) == c2) {
          alpha = a.matrix;
          break;
        }
    }
    if (!alpha) throw Error("central-radical: span test passed but no coefficient automorphism found");
    auto tw = twist(ed2, AbelianAut{A1, *alpha}, beta);
    auto u = coboundary_witness(ed1, tw);
    if (!u) throw Error("central-radical: twisted cocycles are not cohomologous");
    auto w = main_lemma_witness(qp1, ed1, qp2, *A2, *alpha, beta, *u);
    return iso_with(std::move(w), S, "span test passed at beta #" + std::to_string(bi) + " of " +
                                         std::to_string(betas.size()));
  }
  return not_iso(S, "span test failed for all " + std::to_string(betas.size()) + " beta");
}

std::optional<CharacteristicChoice> elementary_characteristic(const GroupPtr& g) {
  // nontrivial choices first, then a trivial one
  std::optional<CharacteristicChoice> fallback;
  for (const char* name : {"rad", "center", "derived"}) {
    Subgroup s = characteristic_by_name(g, name);
    if (!elementary(s)) continue;
    if (s.size() > 1) return CharacteristicChoice{name, s};
    if (!fallback) fallback = CharacteristicChoice{name, s};
  }
  return fallback;
}

Subgroup characteristic_by_name(const GroupPtr& g, const std::string& name) {
  if (name == "rad") return solvable_radical(g);
  if (name == "center") return center(g);
  if (name == "derived") return commutator_subgroup(g);
  throw PreconditionFailed("unknown characteristic subgroup " + name);
}

IsoVerdict iso_elem_abelian_radical(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  const std::string S = "elem-abelian-radical";
  auto choice = elementary_characteristic(g);
  if (!choice) throw StrategyInapplicable("no elementary abelian characteristic subgroup among rad, Z, [G,G]");
  if (g->order() != h->order()) return not_iso(S, "orders differ");
  Subgroup sg = choice->subgroup;
  Subgroup sh = characteristic_by_name(h, choice->name);
  const std::string tag = "S = " + choice->name;
  if (sg.size() != sh.size() || !elementary(sh)) return not_iso(S, tag + ": subgroups differ");
  if (sg.size() > 1 && sh.size() > 1 && g->elem_order(sg.members[1]) != h->elem_order(sh.members[1]))
    return not_iso(S, tag + ": primes differ");
  if (sg.size() == g->order()) {
    auto v = iso_abelian(g, h);
    v.strategy = S;
    v.certificate.insert(v.certificate.begin(), tag + ": trivial quotient");
    return v;
  }
  auto qp1 = quotient_with_section(g, sg);
  auto qp2 = quotient_with_section(h, sh);
  auto A1 = coefficient_structure(qp1), A2 = coefficient_structure(qp2);
  auto betas = isomorphisms(qp1.quotient, qp2.quotient, cfg);
  if (betas.empty()) return not_iso(S, tag + ": quotients not isomorphic");
  auto ed1 = extract_extension_data(qp1, A1);
  auto ed2 = with_coefficient(extract_extension_data(qp2, A2), A1);
  std::optional<HowellSpan> shared_b2;
  // B^2 lives on Q1; with trivial action it is the same for every beta
  if (ed2.trivial_action()) shared_b2 = b2_span(twist(ed2, identity_aut(A1), betas[0]));
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const auto& beta = betas[bi];
    auto ed2b = twist(ed2, identity_aut(A1), beta);
    auto match = shared_b2 ? cyclicity_match_with(ed1, ed2b, *shared_b2, cfg.cyclicity_cap)
                           : cyclicity_match_with(ed1, ed2b, b2_span(ed2b), cfg.cyclicity_cap);
    if (!match) continue;
    const Mat& alpha = match->alpha;
    const auto* u = &match->u;
    auto w = main_lemma_witness(qp1, ed1, qp2, *A2, alpha, beta, *u);
    return iso_with(std::move(w), S, tag + ": invertible module generator at beta #" + std::to_string(bi) + " of " +
                                         std::to_string(betas.size()));
  }
  return not_iso(S, tag + ": no invertible generator for any of " + std::to_string(betas.size()) + " beta");
}

// ------------------------------------------------------------ semisimple quotients

namespace {

struct RefRegistry {
  std::vector<GroupPtr> refs;
  std::vector<std::vector<GroupMap>> auts;

  std::size_t classify(const GroupPtr& t, GroupMap& phi, const IsoConfig& cfg) {
    for (std::size_t r = 0; r < refs.size(); ++r) {
      if (refs[r]->order() != t->order()) continue;
      if (auto m = brute_force_iso(refs[r], t)) {
        phi = *m;
        return r;
      }
    }
    refs.push_back(t);
    auts.push_back(enumerate_automorphisms(t, cfg.aut_order_cap));
    phi = identity_map(t);
    return refs.size() - 1;
  }
};

struct FactorView {
  GroupPtr t;
  std::vector<Elem> sec;  // t element -> section value in G
  std::size_t ref = 0;
  GroupMap phi;  // ref -> t
  Mat rows;      // k x |t|^2
};

struct SSView {
  GroupPtr g;
  QuotientPresentation qp;
  AbelianPtr A;
  std::vector<FactorView> f;
  std::vector<std::vector<Elem>> comp;  // q -> component per factor
};

SSView build_view(const GroupPtr& g, RefRegistry& reg, const IsoConfig& cfg) {
  if (!is_central_radical(g)) throw StrategyInapplicable("rad(G) != Z(G)");
  SSView v;
  v.g = g;
  v.qp = quotient_with_section(g, center(g));
  v.A = coefficient_structure(v.qp);
  std::vector<Subgroup> factors;
  try {
    factors = simple_factor_decomposition(v.qp.quotient);
  } catch (const NotSemisimpleProduct& e) {
    throw StrategyInapplicable(std::string("G/Z(G) is not a product of simple groups: ") + e.what());
  }
  if (factors.empty()) throw StrategyInapplicable("trivial central quotient");
  const auto& G = *g;
  const auto& A = *v.A;
  auto idx = index_in(v.qp.normal);
  std::vector<Subgroup> order_in_q;
  for (const auto& T : factors) {
    FactorView fv;
    fv.t = subgroup_as_group(T).group;
    const std::size_t nt = fv.t->order();
    for (Elem x = 0; x < nt; ++x) fv.sec.push_back(v.qp.section(T.members[x]));
    fv.rows.assign(A.k(), Vec(nt * nt));
    for (Elem x = 0; x < nt; ++x)
      for (Elem y = 0; y < nt; ++y) {
        Elem val = G.mul(G.mul(fv.sec[x], fv.sec[y]), G.inv(fv.sec[fv.t->mul(x, y)]));
        auto co = A.to_coords(idx[val]);
        for (std::size_t i = 0; i < A.k(); ++i) fv.rows[i][x * nt + y] = co[i];
      }
    fv.ref = reg.classify(fv.t, fv.phi, cfg);
    v.f.push_back(std::move(fv));
    order_in_q.push_back(T);
  }
  // factors sorted by reference class so block structures line up
  std::vector<std::size_t> perm(v.f.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return v.f[a].ref < v.f[b].ref; });
  std::vector<FactorView> sorted;
  std::vector<Subgroup> ts;
  for (auto i : perm) {
    sorted.push_back(std::move(v.f[i]));
    ts.push_back(order_in_q[i]);
  }
  v.f = std::move(sorted);
  const auto& Q = *v.qp.quotient;
  v.comp.assign(Q.order(), std::vector<Elem>(ts.size()));
  std::vector<Elem> pos(ts.size(), 0);
  for (;;) {
    Elem q = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) q = Q.mul(q, ts[i].members[pos[i]]);
    v.comp[q] = pos;
    std::size_t i = ts.size();
    while (i-- > 0) {
      if (++pos[i] < ts[i].size()) break;
      pos[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return v;
}

// factor rows pulled back to the reference group through phi o delta
Mat ref_rows(const FactorView& fv, const CayleyGroup& ref, const GroupMap* delta) {
  const std::size_t nr = ref.order(), nt = fv.t->order();
  Mat out(fv.rows.size(), Vec(nr * nr));
  std::vector<Elem> img(nr);
  for (Elem x = 0; x < nr; ++x) img[x] = fv.phi(delta ? (*delta)(x) : x);
  for (std::size_t i = 0; i < fv.rows.size(); ++i)
    for (Elem x = 0; x < nr; ++x)
      for (Elem y = 0; y < nr; ++y) out[i][x * nr + y] = fv.rows[i][img[x] * nt + img[y]];
  return out;
}

ExtensionData data_from_rows(const AbelianPtr& a, const GroupPtr& q, const Mat& rows) {
  ExtensionData ed = zero_extension_data(a, q);
  std::vector<std::uint32_t> co(a->k());
  for (std::size_t c = 0; c < ed.cocycle.size(); ++c) {
    for (std::size_t i = 0; i < a->k(); ++i) co[i] = rows[i][c];
    ed.cocycle[c] = a->from_coords(co);
  }
  return ed;
}

struct FactorMatch {
  std::size_t target;
  const GroupMap* delta;  // automorphism of the reference group
};

// gamma(a prod s1_i(t_i)) = alpha(a + sum u_i(t_i)) prod s2_j(psi_i(t_i))
GroupMap ss_witness(const SSView& v1, const SSView& v2, const RefRegistry& reg, const Mat& alpha,
                    const std::vector<FactorMatch>& match) {
  const auto& A = *v1.A;
  const std::size_t l = v1.f.size();
  Mat ainv = inverse_aut(AbelianAut{v1.A, alpha}).matrix;
  std::vector<std::vector<Elem>> u(l), psi(l);
  for (std::size_t i = 0; i < l; ++i) {
    const auto& f1 = v1.f[i];
    const auto& f2 = v2.f[match[i].target];
    const auto& ref = reg.refs[f1.ref];
    auto ed1 = data_from_rows(v1.A, ref, ref_rows(f1, *ref, nullptr));
    auto ed2 = data_from_rows(v1.A, ref, apply_rows(A, ainv, ref_rows(f2, *ref, match[i].delta)));
    auto ur = coboundary_witness(ed1, ed2);
    if (!ur) throw Error("factor cocycles are not cohomologous after twisting");
    auto phinv = inverse_map(f1.phi);
    const std::size_t nt = f1.t->order();
    u[i].resize(nt);
    psi[i].resize(nt);
    for (Elem t = 0; t < nt; ++t) {
      Elem r = phinv(t);
      u[i][t] = (*ur)[r];
      psi[i][t] = f2.phi((*match[i].delta)(r));
    }
  }
  const auto& G1 = *v1.g;
  const auto& G2 = *v2.g;
  const auto& Ag = *A.group;
  auto idx = index_in(v1.qp.normal);
  std::vector<std::uint32_t> out(A.k());
  GroupMap m{v1.g, v2.g, std::vector<Elem>(G1.order()), MapKind::isomorphism};
  std::vector<Elem> sec1(v1.qp.quotient->order()), img2(v1.qp.quotient->order());
  std::vector<Elem> ushift(v1.qp.quotient->order());
  for (Elem q = 0; q < sec1.size(); ++q) {
    Elem s = 0, t2 = 0, us = 0;
    for (std::size_t i = 0; i < l; ++i) {
      Elem ti = v1.comp[q][i];
      s = G1.mul(s, v1.f[i].sec[ti]);
      t2 = G2.mul(t2, v2.f[match[i].target].sec[psi[i][ti]]);
      us = Ag.mul(us, u[i][ti]);
    }
    sec1[q] = s;
    img2[q] = t2;
    ushift[q] = us;
  }
  for (Elem g = 0; g < G1.order(); ++g) {
    Elem q = v1.qp.projection(g);
    Elem a = idx[G1.mul(g, G1.inv(sec1[q]))];
    apply_aut_coords(A, alpha, A.to_coords(Ag.mul(a, ushift[q])), out);
    Elem c = v2.qp.normal.members[v2.A->from_coords(out)];
    m.image[g] = G2.mul(c, img2[q]);
  }
  return m;
}

bool kuhn(std::size_t i, const std::vector<std::vector<std::size_t>>& adj, std::vector<std::size_t>& owner,
          std::vector<char>& seen) {
  for (auto j : adj[i]) {
    if (seen[j]) continue;
    seen[j] = 1;
    if (owner[j] == static_cast<std::size_t>(-1) || kuhn(owner[j], adj, owner, seen)) {
      owner[j] = i;
      return true;
    }
  }
  return false;
}

std::string shape_mismatch(const SSView& v1, const SSView& v2) {
  if (abelian_invariants(*v1.A) != abelian_invariants(*v2.A)) return "centers differ";
  if (v1.f.size() != v2.f.size()) return "numbers of simple factors differ";
  for (std::size_t i = 0; i < v1.f.size(); ++i)
    if (v1.f[i].ref != v2.f[i].ref) return "simple factor types differ";
  return {};
}

}  // namespace

IsoVerdict iso_semisimple_product_small_autA(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  const std::string S = "ss-product-1";
  RefRegistry reg;
  auto v1 = build_view(g, reg, cfg);
  auto v2 = build_view(h, reg, cfg);
  if (g->order() != h->order()) return not_iso(S, "orders differ");
  if (auto why = shape_mismatch(v1, v2); !why.empty()) return not_iso(S, why);
  const auto& A = *v1.A;
  const std::size_t l = v1.f.size();
  auto autA = enumerate_abelian_automorphisms(v1.A, cfg.abelian_aut_cap);
  std::map<std::size_t, CentralClassTester> testers;
  for (const auto& f : v1.f)
    if (!testers.count(f.ref)) testers.emplace(f.ref, CentralClassTester(reg.refs[f.ref], v1.A));
  std::vector<Mat> labels1;
  for (const auto& f : v1.f) labels1.push_back(testers.at(f.ref).canonical(ref_rows(f, *reg.refs[f.ref], nullptr)));
  for (std::size_t ai = 0; ai < autA.size(); ++ai) {
    Mat ainv = inverse_aut(autA[ai]).matrix;
    // labels reachable by each factor of H over the diagonal automorphisms
    std::vector<std::map<Mat, std::size_t>> reach(l);
    for (std::size_t j = 0; j < l; ++j) {
      const auto& f = v2.f[j];
      const auto& auts = reg.auts[f.ref];
      for (std::size_t d = 0; d < auts.size(); ++d) {
        Mat lab = testers.at(f.ref).canonical(apply_rows(A, ainv, ref_rows(f, *reg.refs[f.ref], &auts[d])));
        reach[j].emplace(std::move(lab), d);
      }
    }
    std::vector<std::vector<std::size_t>> adj(l);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j)
        if (v1.f[i].ref == v2.f[j].ref && reach[j].count(labels1[i])) adj[i].push_back(j);
    std::vector<std::size_t> owner(l, static_cast<std::size_t>(-1));
    std::size_t matched = 0;
    for (std::size_t i = 0; i < l; ++i) {
      std::vector<char> seen(l, 0);
      if (kuhn(i, adj, owner, seen)) ++matched;
    }
    if (matched != l) continue;
    std::vector<FactorMatch> match(l);
    for (std::size_t j = 0; j < l; ++j) {
      std::size_t i = owner[j];
      match[i] = {j, &reg.auts[v2.f[j].ref][reach[j].at(labels1[i])]};
    }
    auto w = ss_witness(v1, v2, reg, autA[ai].matrix, match);
    std::string trail = "label multisets agree at alpha #" + std::to_string(ai) + "; factor map";
    for (std::size_t i = 0; i < l; ++i) trail += " " + std::to_string(i) + "->" + std::to_string(match[i].target);
    return iso_with(std::move(w), S, trail);
  }
  return not_iso(S, "label multisets differ for all " + std::to_string(autA.size()) + " alpha");
}

namespace {

IsoVerdict ss_code_core(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  const std::string S = "ss-product-2";
  RefRegistry reg;
  auto v1 = build_view(g, reg, cfg);
  auto v2 = build_view(h, reg, cfg);
  if (auto why = shape_mismatch(v1, v2); !why.empty()) return not_iso(S, why);
  const std::size_t l = v1.f.size(), k = v1.A->k();
  const std::uint32_t p = k ? v1.A->primes[0] : 2;
  std::map<std::size_t, CentralClassTester> testers;
  for (const auto& f : v1.f)
    if (!testers.count(f.ref)) testers.emplace(f.ref, CentralClassTester(reg.refs[f.ref], v1.A));
  BlockStructure bs;
  Mat m1(k);
  std::size_t off = 0;
  for (const auto& f : v1.f) {
    const std::size_t nr = reg.refs[f.ref]->order();
    std::vector<std::size_t> cols(nr * nr);
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = off + c;
    off += cols.size();
    bs.blocks.push_back(std::move(cols));
    bs.cls.push_back(f.ref);
    Mat r = testers.at(f.ref).canonical(ref_rows(f, *reg.refs[f.ref], nullptr));
    for (std::size_t i = 0; i < k; ++i) m1[i].insert(m1[i].end(), r[i].begin(), r[i].end());
  }
  auto blocks = block_group(bs);
  std::vector<std::vector<Mat>> p2(l);
  std::size_t diagonals = 1;
  for (std::size_t j = 0; j < l; ++j) {
    const auto& f = v2.f[j];
    for (const auto& d : reg.auts[f.ref]) p2[j].push_back(testers.at(f.ref).canonical(ref_rows(f, *reg.refs[f.ref], &d)));
    diagonals *= p2[j].size();
    if (diagonals > cfg.diagonal_cap) throw CapExceeded("ss-product-2: number of diagonal automorphisms exceeds cap");
  }
  std::vector<std::size_t> d(l, 0);
  for (std::size_t it = 0; it < diagonals; ++it) {
    if (it) {
      for (std::size_t j = l; j-- > 0;) {
        if (++d[j] < p2[j].size()) break;
        d[j] = 0;
      }
    }
    Mat m2(k);
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t i = 0; i < k; ++i) m2[i].insert(m2[i].end(), p2[j][d[j]][i].begin(), p2[j][d[j]][i].end());
    auto coset = coset_intersection(code_equivalence_coset(m1, m2, p, bs), blocks);
    if (coset.empty) continue;
    const Perm& sigma = coset.representative;
    std::vector<FactorMatch> match(l);
    for (std::size_t i = 0; i < l; ++i) {
      std::size_t col = sigma[bs.blocks[i][0]];
      std::size_t j = 0;
      while (bs.blocks[j][0] != col) ++j;
      match[i] = {j, &reg.auts[v2.f[j].ref][d[j]]};
    }
    auto alpha = basis_change(permute_columns(m1, sigma), m2, p);
    if (!alpha) throw Error("ss-product-2: code equivalence without coefficient change");
    auto w = ss_witness(v1, v2, reg, *alpha, match);
    std::string trail = "code equivalence at diagonal #" + std::to_string(it) + " of " + std::to_string(diagonals) +
                        "; factor map";
    for (std::size_t i = 0; i < l; ++i) trail += " " + std::to_string(i) + "->" + std::to_string(match[i].target);
    return iso_with(std::move(w), S, trail);
  }
  return not_iso(S, "code equivalence empty for all " + std::to_string(diagonals) + " diagonals");
}

}  // namespace

IsoVerdict iso_semisimple_product_code(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  const std::string S = "ss-product-2";
  if (!is_central_radical(g) || !is_central_radical(h)) throw StrategyInapplicable("rad(G) != Z(G)");
  if (!elementary(center(g))) throw StrategyInapplicable("center is not elementary abelian");
  if (g->order() != h->order()) return not_iso(S, "orders differ");
  if (!elementary(center(h))) return not_iso(S, "centers differ");
  auto s1 = split_central_direct_factor(g);
  auto s2 = split_central_direct_factor(h);
  if (s1.factor.size() != s2.factor.size()) return not_iso(S, "maximal central direct factors differ");
  auto c1 = subgroup_as_group(s1.complement), c2 = subgroup_as_group(s2.complement);
  auto core = ss_code_core(c1.group, c2.group, cfg);
  std::string note = "set aside central direct factor of order " + std::to_string(s1.factor.size());
  core.certificate.insert(core.certificate.begin(), note);
  if (!core.isomorphic()) return core;
  // gamma(a c) = iota(a) gamma_C(c)
  auto iota = abelian_subgroup_iso(s1.factor, s2.factor);
  const auto& G = *g;
  const auto& H = *h;
  GroupMap w{g, h, std::vector<Elem>(G.order()), MapKind::isomorphism};
  for (Elem a : s1.factor.members)
    for (std::size_t ci = 0; ci < s1.complement.size(); ++ci) {
      Elem c = s1.complement.members[ci];
      Elem img = s2.complement.members[(*core.witness)(static_cast<Elem>(ci))];
      w.image[G.mul(a, c)] = H.mul(iota(a), img);
    }
  auto v = iso_with(std::move(w), S, "");
  v.certificate = core.certificate;
  return v;
}

IsoVerdict iso_with_strategy(const std::string& strategy, const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  if (strategy == "auto") return iso_auto(g, h, cfg);
  if (strategy == "central-radical") return iso_central_radical(g, h, cfg);
  if (strategy == "elem-abelian-radical") return iso_elem_abelian_radical(g, h, cfg);
  if (strategy == "ss-product-1") return iso_semisimple_product_small_autA(g, h, cfg);
  if (strategy == "ss-product-2") return iso_semisimple_product_code(g, h, cfg);
  if (strategy == "brute") return iso_brute(g, h);
  throw PreconditionFailed("unknown strategy " + strategy);
}

namespace {

IsoVerdict dispatch(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  if (g->order() != h->order()) return not_iso("order", "orders differ");
  if (g->is_abelian() || h->is_abelian()) {
    if (g->is_abelian() && h->is_abelian()) return iso_abelian(g, h);
    return not_iso("abelian", "exactly one group is abelian");
  }
  auto og = g->elem_orders(), oh = h->elem_orders();
  std::sort(og.begin(), og.end());
  std::sort(oh.begin(), oh.end());
  if (og != oh) return not_iso("invariants", "element order multisets differ");
  if (center(g).size() != center(h).size()) return not_iso("invariants", "center orders differ");
  bool cg = is_central_radical(g), ch = is_central_radical(h);
  if (cg != ch) return not_iso("invariants", "only one group has a central radical");
  if (cg) {
    auto qp = quotient_with_section(g, center(g));
    std::size_t factors = 0;
    try {
      factors = simple_factor_decomposition(qp.quotient).size();
    } catch (const NotSemisimpleProduct&) {
    }
    if (factors >= 2) {
      if (elementary(center(g))) return iso_semisimple_product_code(g, h, cfg);
      return iso_semisimple_product_small_autA(g, h, cfg);
    }
    return iso_central_radical(g, h, cfg);
  }
  if (auto c = elementary_characteristic(g); c && c->subgroup.size() > 1) return iso_elem_abelian_radical(g, h, cfg);
  if (g->order() > cfg.brute_order_cap) throw CapExceeded("brute-force fallback: order exceeds cap");
  return iso_brute(g, h);
}

}  // namespace

IsoVerdict iso_auto(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg) {
  auto v = dispatch(g, h, cfg);
  if (cfg.oracle_check && g->order() <= cfg.oracle_cap) {
    bool oracle = brute_force_iso(g, h).has_value();
    if (oracle != v.isomorphic()) throw Error("oracle disagreement: " + v.strategy);
    v.certificate.push_back("oracle agrees");
  }
  return v;
}

bool non_pc_regression(const GroupPtr& g, const Subgroup& im1, const Subgroup& im2) {
  if (!g->is_abelian()) throw PreconditionFailed("fixture group must be abelian");
  auto inv = [](const Subgroup& s) { return abelian_invariants(*primary_decomposition(subgroup_as_group(s).group)); };
  if (inv(im1) != inv(im2)) return false;
  auto q1 = quotient_with_section(g, im1).quotient, q2 = quotient_with_section(g, im2).quotient;
  if (abelian_invariants(*primary_decomposition(q1)) != abelian_invariants(*primary_decomposition(q2))) return false;
  auto s = primary_decomposition(g);
  auto gens = subgroup_generators(im1);
  // exhaustive over Aut(G) as coordinate matrices
  for (const auto& m : detail::enumerate_aut_matrices(*s, false, ~std::size_t{0})) {
    AbelianAut a{s, m};
    bool maps = true;
    for (Elem x : gens)
      if (!im2.contains(apply_aut(a, x))) {
        maps = false;
        break;
      }
    if (maps) return false;
  }
  return true;
}

}  // namespace extiso
