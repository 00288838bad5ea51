#include "extiso/cohomology.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "extiso/builders.hpp"
#include "extiso/kernels.hpp"

namespace extiso {

namespace {

constexpr Elem kNone = ~Elem{0};

std::vector<Elem> index_in(const Subgroup& h) {
  std::vector<Elem> idx(h.parent->order(), kNone);
  for (std::size_t i = 0; i < h.members.size(); ++i) idx[h.members[i]] = static_cast<Elem>(i);
  return idx;
}

bool same_table(const GroupPtr& a, const GroupPtr& b) { return a == b || a->table() == b->table(); }

Mat mat_product_rows(const Mat& a, const Mat& b, const std::vector<std::uint64_t>& orders) {
  const std::size_t k = a.size();
  Mat c(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      std::uint64_t s = 0;
      for (std::size_t t = 0; t < k; ++t) s += std::uint64_t{a[i][t]} * b[t][j];
      c[i][j] = static_cast<std::uint32_t>(s % orders[i]);
    }
  return c;
}

// Per-prime embedding of the cochain space into (Z/p^M)^(k_p * m).
struct PrimeBlock {
  std::uint32_t p, M;
  std::vector<std::size_t> coords;
};

std::vector<PrimeBlock> prime_blocks(const AbelianStructure& a) {
  std::vector<PrimeBlock> out;
  for (std::size_t i = 0; i < a.k(); ++i) {
    if (out.empty() || out.back().p != a.primes[i]) out.push_back({a.primes[i], 0, {}});
    out.back().M = std::max(out.back().M, a.exps[i]);
    out.back().coords.push_back(i);
  }
  return out;
}

Vec embed(const AbelianStructure& a, const PrimeBlock& b, const Mat& rows) {
  const std::size_t m = rows.empty() ? 0 : rows[0].size();
  Vec v(b.coords.size() * m);
  ModRing R(b.p, b.M);
  for (std::size_t t = 0; t < b.coords.size(); ++t) {
    std::size_t i = b.coords[t];
    std::uint64_t lift = R.ppow(b.M - a.exps[i]);
    for (std::size_t c = 0; c < m; ++c) v[t * m + c] = static_cast<std::uint32_t>(rows[i][c] * lift % R.m);
  }
  return v;
}

}  // namespace

bool ExtensionData::trivial_action() const {
  Mat id = identity_mat(coefficient->k());
  for (const auto& m : action)
    if (m != id) return false;
  return true;
}

AbelianPtr coefficient_structure(const QuotientPresentation& qp) {
  return primary_decomposition(subgroup_as_group(qp.normal).group);
}

ExtensionData extract_extension_data(const QuotientPresentation& qp) {
  return extract_extension_data(qp, coefficient_structure(qp));
}

ExtensionData extract_extension_data(const QuotientPresentation& qp, const AbelianPtr& coeff) {
  const auto& g = *qp.group;
  const auto& q = *qp.quotient;
  const std::size_t n = q.order();
  const std::size_t k = coeff->k();
  auto to_a = index_in(qp.normal);
  const auto& s = qp.section.image;
  ExtensionData ed;
  ed.coefficient = coeff;
  ed.quotient = qp.quotient;
  ed.cocycle.resize(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem r = 0; r < n; ++r) {
      Elem x = g.mul(g.mul(s[p], s[r]), g.inv(s[q.mul(p, r)]));
      if (to_a[x] == kNone) throw PreconditionFailed("section values leave the normal subgroup");
      ed.cocycle[p * n + r] = to_a[x];
    }
  ed.action.assign(n, Mat(k, Vec(k, 0)));
  for (Elem p = 0; p < n; ++p)
    for (std::size_t j = 0; j < k; ++j) {
      Elem e = qp.normal.members[coeff->basis[j]];
      Elem c = g.mul(g.mul(s[p], e), g.inv(s[p]));
      auto co = coeff->to_coords(to_a[c]);
      for (std::size_t i = 0; i < k; ++i) ed.action[p][i][j] = co[i];
    }
  return ed;
}

GeneralExtensionData extract_general_extension_data(const QuotientPresentation& qp) {
  const auto& g = *qp.group;
  const auto& q = *qp.quotient;
  const std::size_t n = q.order();
  auto sub = subgroup_as_group(qp.normal);
  auto to_n = index_in(qp.normal);
  const auto& s = qp.section.image;
  GeneralExtensionData ed;
  ed.normal = sub.group;
  ed.quotient = qp.quotient;
  ed.cocycle.resize(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem r = 0; r < n; ++r) ed.cocycle[p * n + r] = to_n[g.mul(g.mul(s[p], s[r]), g.inv(s[q.mul(p, r)]))];
  ed.T.assign(n, std::vector<Elem>(qp.normal.size()));
  for (Elem p = 0; p < n; ++p)
    for (std::size_t a = 0; a < qp.normal.size(); ++a)
      ed.T[p][a] = to_n[g.mul(g.mul(s[p], qp.normal.members[a]), g.inv(s[p]))];
  return ed;
}

ExtensionData zero_extension_data(const AbelianPtr& a, const GroupPtr& q) {
  ExtensionData ed;
  ed.coefficient = a;
  ed.quotient = q;
  ed.action.assign(q->order(), identity_mat(a->k()));
  ed.cocycle.assign(q->order() * q->order(), 0);
  return ed;
}

// Light's argument on the magma A x Q: the identity for r in a generating set
// of Q plus theta being a homomorphism gives it for all triples.
bool verify_extension_data(const ExtensionData& ed) {
  const auto& q = *ed.quotient;
  const auto& a = *ed.coefficient;
  const std::size_t n = q.order();
  const std::size_t k = a.k();
  if (ed.cocycle.size() != n * n || ed.action.size() != n) return false;
  for (Elem x : ed.cocycle)
    if (x >= a.group->order()) return false;
  for (Elem p = 0; p < n; ++p)
    if (ed.f(0, p) != 0 || ed.f(p, 0) != 0) return false;
  if (ed.action[0] != identity_mat(k)) return false;
  for (const auto& m : ed.action)
    if (!is_valid_abelian_aut(a, m)) return false;
  for (Elem p = 0; p < n; ++p)
    for (Elem r = 0; r < n; ++r)
      if (mat_product_rows(ed.action[p], ed.action[r], a.orders) != ed.action[q.mul(p, r)]) return false;
  const auto& G = *a.group;
  std::vector<std::uint32_t> tmp(k);
  for (Elem r : q.generators())
    for (Elem p = 0; p < n; ++p)
      for (Elem s = 0; s < n; ++s) {
        Elem lhs = G.mul(ed.f(p, s), ed.f(q.mul(p, s), r));
        apply_aut_coords(a, ed.action[p], a.to_coords(ed.f(s, r)), tmp);
        Elem rhs = G.mul(a.from_coords(tmp), ed.f(p, q.mul(s, r)));
        if (lhs != rhs) return false;
      }
  return true;
}

bool verify_extension_data(const GeneralExtensionData& ed) {
  const auto& q = *ed.quotient;
  const auto& N = *ed.normal;
  const std::size_t n = q.order(), m = N.order();
  if (ed.T.size() != n || ed.cocycle.size() != n * n) return false;
  for (Elem p = 0; p < n; ++p)
    if (ed.f(0, p) != 0 || ed.f(p, 0) != 0) return false;
  for (Elem a = 0; a < m; ++a)
    if (ed.T[0][a] != a) return false;
  for (const auto& t : ed.T) {
    GroupMap tm{ed.normal, ed.normal, t, MapKind::homomorphism};
    if (!is_isomorphism(tm)) return false;
  }
  // T(q1)T(q2) = c_f(q1,q2) T(q1 q2)
  for (Elem p = 0; p < n; ++p)
    for (Elem r = 0; r < n; ++r) {
      Elem c = ed.f(p, r);
      const auto& tpr = ed.T[q.mul(p, r)];
      for (Elem a = 0; a < m; ++a)
        if (ed.T[p][ed.T[r][a]] != N.mul(N.mul(c, tpr[a]), N.inv(c))) return false;
    }
  // f(q1,q2) f(q1q2,q3) = T(q1)(f(q2,q3)) f(q1,q2q3)
  for (Elem p = 0; p < n; ++p)
    for (Elem r = 0; r < n; ++r)
      for (Elem s = 0; s < n; ++s)
        if (N.mul(ed.f(p, r), ed.f(q.mul(p, r), s)) != N.mul(ed.T[p][ed.f(r, s)], ed.f(p, q.mul(r, s))))
          return false;
  return true;
}

Mat cocycle_rows(const ExtensionData& ed) {
  const std::size_t m = ed.cocycle.size();
  const std::size_t k = ed.coefficient->k();
  Mat rows(k, Vec(m, 0));
  for (std::size_t c = 0; c < m; ++c) {
    auto co = ed.coefficient->to_coords(ed.cocycle[c]);
    for (std::size_t i = 0; i < k; ++i) rows[i][c] = co[i];
  }
  return rows;
}

CochainMatrix to_matrix(const ExtensionData& ed) {
  CochainMatrix cm;
  cm.coefficient = ed.coefficient;
  const std::size_t n = ed.qn();
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) cm.columns.emplace_back(p, q);
  cm.entries = cocycle_rows(ed);
  return cm;
}

CochainMatrix to_matrix(const ExtensionData& ed, const std::vector<Subgroup>& factors) {
  const auto& Q = *ed.quotient;
  const auto& A = *ed.coefficient;
  const std::size_t n = Q.order();
  // component of each q in each factor
  std::vector<std::vector<Elem>> comp(factors.size(), std::vector<Elem>(n, kNone));
  {
    std::vector<Elem> tuple(factors.size(), 0);
    std::vector<std::size_t> pos(factors.size(), 0);
    for (;;) {
      Elem x = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) x = Q.mul(x, factors[i].members[pos[i]]);
      if (comp.empty() || comp[0][x] != kNone) throw NotProductRespecting("factors do not form a direct product");
      for (std::size_t i = 0; i < factors.size(); ++i) comp[i][x] = factors[i].members[pos[i]];
      std::size_t i = factors.size();
      while (i-- > 0) {
        if (++pos[i] < factors[i].size()) break;
        pos[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
  }
  const auto& G = *A.group;
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) {
      Elem sum = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) sum = G.mul(sum, ed.f(comp[i][p], comp[i][q]));
      if (sum != ed.f(p, q)) throw NotProductRespecting("cocycle is not a sum of factor cocycles");
    }
  CochainMatrix cm;
  cm.coefficient = ed.coefficient;
  for (const auto& t : factors)
    for (Elem p : t.members)
      for (Elem q : t.members) cm.columns.emplace_back(p, q);
  cm.entries.assign(A.k(), Vec(cm.columns.size(), 0));
  for (std::size_t c = 0; c < cm.columns.size(); ++c) {
    auto co = A.to_coords(ed.f(cm.columns[c].first, cm.columns[c].second));
    for (std::size_t i = 0; i < A.k(); ++i) cm.entries[i][c] = co[i];
  }
  return cm;
}

void write_cochain_matrix(std::ostream& out, const CochainMatrix& m) {
  const std::size_t k = m.entries.size();
  out << k << ' ' << m.columns.size() << '\n';
  for (std::size_t i = 0; i < k; ++i) out << (i ? " " : "") << m.coefficient->orders[i];
  out << '\n';
  for (std::size_t c = 0; c < m.columns.size(); ++c)
    out << (c ? " " : "") << m.columns[c].first << ',' << m.columns[c].second;
  out << '\n';
  for (const auto& row : m.entries) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
    out << '\n';
  }
}

Mat coboundary_of(const ExtensionData& shape, const std::vector<Elem>& u) {
  const auto& Q = *shape.quotient;
  const auto& A = *shape.coefficient;
  const std::size_t n = Q.order(), k = A.k();
  Mat rows(k, Vec(n * n, 0));
  std::vector<std::uint32_t> t(k);
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) {
      apply_aut_coords(A, shape.action[p], A.to_coords(u[q]), t);
      auto up = A.to_coords(u[p]);
      auto upq = A.to_coords(u[Q.mul(p, q)]);
      for (std::size_t i = 0; i < k; ++i)
        rows[i][p * n + q] = static_cast<std::uint32_t>((up[i] + t[i] + A.orders[i] - upq[i]) % A.orders[i]);
    }
  return rows;
}

std::vector<Mat> coboundary_basis(const GroupPtr& q, const AbelianPtr& a, const std::vector<Mat>& action) {
  const std::size_t n = q->order(), k = a->k();
  std::vector<Mat> out;
  if (n <= 1 || k == 0) return out;
  auto blocks = prime_blocks(*a);
  std::vector<HowellSpan> spans;
  for (const auto& b : blocks) spans.emplace_back(ModRing(b.p, b.M), b.coords.size() * n * n);
  ExtensionData shape{a, q, action, {}};
  for (Elem x = 1; x < n; ++x)
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Elem> u(n, 0);
      std::vector<std::uint32_t> e(k, 0);
      e[i] = 1;
      u[x] = a->from_coords(e);
      Mat f = coboundary_of(shape, u);
      bool grew = false;
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if (spans[b].insert(embed(*a, blocks[b], f))) grew = true;
      if (grew) out.push_back(std::move(f));
    }
  return out;
}

std::vector<Mat> coboundary_basis(const GroupPtr& q, const AbelianPtr& a) {
  return coboundary_basis(q, a, std::vector<Mat>(q->order(), identity_mat(a->k())));
}

ExtensionData twist(const ExtensionData& ed, const AbelianAut& alpha, const GroupMap& beta) {
  const auto& A = *ed.coefficient;
  const std::size_t n = beta.source->order();
  AbelianAut ainv = inverse_aut(alpha);
  auto ainv_perm = aut_permutation(ainv);
  ExtensionData out;
  out.coefficient = ed.coefficient;
  out.quotient = beta.source;
  out.action.resize(n);
  for (Elem q = 0; q < n; ++q)
    out.action[q] = mat_product_rows(mat_product_rows(ainv.matrix, ed.action[beta(q)], A.orders), alpha.matrix, A.orders);
  out.cocycle.resize(n * n);
  for (Elem p = 0; p < n; ++p)
    for (Elem q = 0; q < n; ++q) out.cocycle[p * n + q] = ainv_perm[ed.f(beta(p), beta(q))];
  return out;
}

std::optional<std::vector<Elem>> coboundary_witness(const ExtensionData& f1, const ExtensionData& f2) {
  if (!same_table(f1.quotient, f2.quotient) || abelian_invariants(*f1.coefficient) != abelian_invariants(*f2.coefficient) ||
      f1.action != f2.action)
    throw ActionMismatch("cohomologous: data differ in quotient, coefficient or action");
  const auto& Q = *f1.quotient;
  const auto& A = *f1.coefficient;
  const std::size_t n = Q.order(), k = A.k();
  if (n <= 1 || k == 0) {
    if (f1.cocycle != f2.cocycle) return std::nullopt;
    return std::vector<Elem>(n, 0);
  }
  const std::size_t nv = (n - 1) * k;
  std::vector<Congruence> eqs;
  eqs.reserve((n - 1) * (n - 1) * k);
  for (Elem p = 1; p < n; ++p)
    for (Elem q = 1; q < n; ++q) {
      auto c1 = A.to_coords(f1.f(p, q));
      auto c2 = f2.coefficient->to_coords(f2.f(p, q));
      Elem pq = Q.mul(p, q);
      for (std::size_t i = 0; i < k; ++i) {
        Congruence c;
        c.coeffs.assign(nv, 0);
        c.coeffs[(p - 1) * k + i] += 1;
        for (std::size_t j = 0; j < k; ++j) c.coeffs[(q - 1) * k + j] += f1.action[p][i][j];
        if (pq != 0) c.coeffs[(pq - 1) * k + i] -= 1;
        c.rhs = static_cast<std::int64_t>(c1[i]) - static_cast<std::int64_t>(c2[i]);
        c.modulus = A.orders[i];
        eqs.push_back(std::move(c));
      }
    }
  auto sol = solve_congruences(eqs, nv);
  if (!sol) return std::nullopt;
  std::vector<Elem> u(n, 0);
  for (Elem q = 1; q < n; ++q) u[q] = A.from_coords_signed(std::span<const std::int64_t>(sol->data() + (q - 1) * k, k));
  return u;
}

bool cohomologous(const ExtensionData& f1, const ExtensionData& f2) { return coboundary_witness(f1, f2).has_value(); }

HowellSpan coboundary_span(const GroupPtr& q, std::uint32_t p, std::uint32_t mu) {
  const std::size_t n = q->order();
  ModRing R(p, mu);
  HowellSpan span(R, n * n);
  if (n <= 1) return span;
  if (mu == 1) {
    auto gen = kernels::coboundary_generators_parallel(*q, p);
    for (std::size_t r = 0; r < gen.rows; ++r) span.insert(Vec(gen.row(r), gen.row(r) + gen.cols));
    return span;
  }
  for (Elem x = 1; x < n; ++x) {
    Vec v(n * n, 0);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        std::int64_t t = (a == x) + (b == x) - (q->mul(a, b) == x);
        v[a * n + b] = R.reduce(t);
      }
    span.insert(std::move(v));
  }
  return span;
}

CentralClassTester::CentralClassTester(GroupPtr q, AbelianPtr a) : q_(std::move(q)), a_(std::move(a)) {
  for (std::size_t i = 0; i < a_->k(); ++i) {
    auto key = std::make_pair(a_->primes[i], a_->exps[i]);
    if (!b2_.count(key)) b2_.emplace(key, coboundary_span(q_, key.first, key.second));
  }
}

Mat CentralClassTester::lift_rows(const Mat& rows, std::uint32_t p, std::uint32_t mu) const {
  ModRing R(p, mu);
  Mat out;
  for (std::size_t j = 0; j < a_->k(); ++j) {
    if (a_->primes[j] != p) continue;
    Vec v = rows[j];
    if (a_->exps[j] >= mu) {
      for (auto& x : v) x = static_cast<std::uint32_t>(x % R.m);
    } else {
      std::uint64_t s = R.ppow(mu - a_->exps[j]);
      for (auto& x : v) x = static_cast<std::uint32_t>(x * s % R.m);
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool CentralClassTester::same_class_up_to_aut(const Mat& rows1, const Mat& rows2) const {
  for (const auto& [key, b2] : b2_) {
    HowellSpan s1 = b2, s2 = b2;
    for (auto& r : lift_rows(rows1, key.first, key.second)) s1.insert(std::move(r));
    for (auto& r : lift_rows(rows2, key.first, key.second)) s2.insert(std::move(r));
    if (!s1.same_span(s2)) return false;
  }
  return true;
}

Mat CentralClassTester::canonical(const Mat& rows) const {
  Mat out = rows;
  for (std::size_t i = 0; i < a_->k(); ++i) b2_.at({a_->primes[i], a_->exps[i]}).reduce(out[i]);
  return out;
}

bool same_class_up_to_autA(const ExtensionData& f1, const ExtensionData& f2) {
  if (!f1.trivial_action() || !f2.trivial_action()) throw ActionMismatch("span test needs trivial action");
  if (!same_table(f1.quotient, f2.quotient) || abelian_invariants(*f1.coefficient) != abelian_invariants(*f2.coefficient))
    throw ActionMismatch("span test needs common quotient and coefficient");
  CentralClassTester t(f1.quotient, f1.coefficient);
  return t.same_class_up_to_aut(cocycle_rows(f1), cocycle_rows(f2));
}

std::vector<std::size_t> Projection::complement_coordinates(std::uint32_t p, std::uint32_t mu) const {
  const auto& b2 = tester_.b2(p, mu);
  auto piv = b2.pivots();
  std::vector<std::size_t> out;
  std::size_t t = 0;
  for (std::size_t c = 0; c < b2.cols(); ++c) {
    if (t < piv.size() && piv[t] == c) {
      ++t;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

Projection projection_complement(const GroupPtr& q, const AbelianPtr& a) { return Projection(q, a); }

QuotientPresentation restrict_to_factor(const QuotientPresentation& qp, const Subgroup& factor) {
  if (!(qp.normal == center(qp.group))) throw PreconditionFailed("restriction needs A = Z(G)");
  auto factors = simple_factor_decomposition(qp.quotient);
  if (std::find(factors.begin(), factors.end(), factor) == factors.end())
    throw PreconditionFailed("not a simple direct factor of G/A");
  Subgroup u = preimage(qp, factor);
  auto sub = subgroup_as_group(u);
  auto idx = index_in(u);
  std::vector<Elem> a;
  for (Elem x : qp.normal.members) a.push_back(idx[x]);
  return quotient_with_section(sub.group, Subgroup(sub.group, std::move(a)));
}

ProductCocycle assemble_product_cocycle(const std::vector<ExtensionData>& factors) {
  if (factors.empty()) throw PreconditionFailed("no factors");
  const AbelianPtr& A = factors[0].coefficient;
  for (const auto& f : factors) {
    if (abelian_invariants(*f.coefficient) != abelian_invariants(*A) || !(f.coefficient->group->table() == A->group->table()))
      throw PreconditionFailed("factor cocycles need a common coefficient group");
    if (!f.trivial_action()) throw PreconditionFailed("factor cocycles must be central");
  }
  GroupPtr Q = factors[0].quotient;
  for (std::size_t i = 1; i < factors.size(); ++i) Q = direct_product(Q, factors[i].quotient);
  const std::size_t n = Q->order();
  std::vector<std::size_t> radix;
  for (const auto& f : factors) radix.push_back(f.qn());
  auto comps = [&](std::size_t x) {
    std::vector<Elem> c(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      c[i] = static_cast<Elem>(x % radix[i]);
      x /= radix[i];
    }
    return c;
  };
  std::vector<std::vector<Elem>> comp(n);
  for (std::size_t x = 0; x < n; ++x) comp[x] = comps(x);
  ProductCocycle pc;
  pc.quotient = Q;
  pc.data = zero_extension_data(A, Q);
  const auto& G = *A->group;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      Elem s = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) s = G.mul(s, factors[i].f(comp[p][i], comp[q][i]));
      pc.data.cocycle[p * n + q] = s;
    }
  return pc;
}

bool is_internal_direct_product(const Subgroup& a, const Subgroup& b) {
  return a.size() * b.size() == a.parent->order() && intersect(a, b).size() == 1 && is_normal(a) && is_normal(b);
}

namespace {

std::vector<Subgroup> all_subgroups_of_abelian(const Subgroup& a) {
  const auto& g = a.parent;
  std::set<std::vector<Elem>> seen;
  std::vector<Subgroup> subs;
  std::vector<Subgroup> cyclic;
  for (Elem x : a.members) {
    Subgroup c = subgroup_generated(g, std::span<const Elem>(&x, 1));
    if (seen.insert(c.members).second) {
      subs.push_back(c);
      cyclic.push_back(c);
    }
  }
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (const auto& c : cyclic) {
      Subgroup j = product(subs[i], c);
      if (seen.insert(j.members).second) subs.push_back(j);
    }
  std::stable_sort(subs.begin(), subs.end(), [](const Subgroup& x, const Subgroup& y) { return x.size() > y.size(); });
  return subs;
}

}  // namespace

CentralSplit split_central_direct_factor(const GroupPtr& g) {
  Subgroup z = center(g);
  if (z.size() == 1) return {z, whole_group(g)};
  if (z.size() == g->order()) return {z, trivial_subgroup(g)};
  auto qp = quotient_with_section(g, z);
  auto A = coefficient_structure(qp);
  if (A->elementary()) {
    // perfect G/Z: G = Z G', and any complement of Z n G' in Z splits off with C = G'
    Subgroup d = commutator_subgroup(g);
    if (product(z, d).size() == g->order()) {
      Subgroup zd = intersect(z, d);
      std::vector<Elem> gens, span_gens = subgroup_generators(zd);
      Subgroup span = zd;
      for (Elem x : z.members) {
        if (span.contains(x)) continue;
        gens.push_back(x);
        span_gens.push_back(x);
        span = subgroup_generated(g, span_gens);
      }
      return {subgroup_generated(g, gens), d};
    }
    const std::uint32_t p = A->primes[0];
    const std::size_t k = A->k();
    auto ed = extract_extension_data(qp, A);
    CentralClassTester tester(qp.quotient, A);
    Mat proj = tester.canonical(cocycle_rows(ed));
    const std::size_t m = proj.empty() ? 0 : proj[0].size();
    // K = {lambda : lambda^T proj = 0}
    Mat transposed(m, Vec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < m; ++c) transposed[c][i] = proj[i][c];
    Mat K = nullspace_gfp(transposed, k, p);
    kernels::ModMatrix km(K.size(), k, p);
    for (std::size_t r = 0; r < K.size(); ++r)
      for (std::size_t j = 0; j < k; ++j) km.at(r, j) = K[r][j];
    auto piv = kernels::modp_rref_parallel(km);
    const auto& G = *g;
    const auto& members = qp.normal.members;
    auto elem_of = [&](const std::vector<std::uint32_t>& c) { return members[A->from_coords(c)]; };
    // A' = span of e_c at pivot columns; A'' = common kernel of K
    std::vector<Elem> aprime_gens;
    for (auto c : piv) {
      std::vector<std::uint32_t> e(k, 0);
      e[c] = 1;
      aprime_gens.push_back(elem_of(e));
    }
    Subgroup aprime = subgroup_generated(g, aprime_gens);
    std::vector<Elem> app;
    for (std::size_t x = 0; x < A->group->order(); ++x) {
      auto co = A->to_coords(static_cast<Elem>(x));
      bool zero = true;
      for (std::size_t r = 0; r < piv.size() && zero; ++r) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < k; ++j) s += std::uint64_t{km.at(r, j)} * co[j];
        zero = s % p == 0;
      }
      if (zero) app.push_back(members[x]);
    }
    // lambda_r o f = f_{u_r}; correct the section by the A'-valued u
    const std::size_t n = qp.quotient->order();
    std::vector<Elem> shift(n, 0);  // element of G in A'
    for (std::size_t r = 0; r < piv.size(); ++r) {
      ExtensionData row = ed;
      for (auto& x : row.cocycle) {
        auto co = A->to_coords(x);
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < k; ++j) s += std::uint64_t{km.at(r, j)} * co[j];
        std::vector<std::uint32_t> e(k, 0);
        e[piv[r]] = static_cast<std::uint32_t>(s % p);
        x = A->from_coords(e);
      }
      auto u = coboundary_witness(row, zero_extension_data(A, qp.quotient));
      if (!u) throw PreconditionFailed("split: projected cocycle is not a coboundary");
      for (Elem q = 0; q < n; ++q) shift[q] = G.mul(shift[q], members[(*u)[q]]);
    }
    std::vector<Elem> comp;
    for (Elem q = 0; q < n; ++q) {
      Elem sq = G.mul(G.inv(shift[q]), qp.section(q));
      for (Elem a : app) comp.push_back(G.mul(a, sq));
    }
    Subgroup c(g, std::move(comp));
    if (!is_internal_direct_product(aprime, c)) throw PreconditionFailed("split: decomposition check failed");
    return {aprime, c};
  }
  for (const auto& b : all_subgroups_of_abelian(z)) {
    if (b.size() == 1) break;
    if (auto c = find_complement(g, b)) return {b, *c};
  }
  return {trivial_subgroup(g), whole_group(g)};
}

}  // namespace extiso
