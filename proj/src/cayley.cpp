#include "extiso/cayley.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "extiso/kernels.hpp"

namespace extiso {

std::size_t cap_from_env(std::size_t fallback) {
  if (const char* s = std::getenv("EXTISO_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

namespace {

constexpr Elem kNone = ~Elem{0};

// BFS closure of {1} under right multiplication by gens.
template <class Mul>
std::vector<Elem> right_closure(std::size_t n, Mul mul, std::span<const Elem> gens,
                                std::vector<char>& mask) {
  mask.assign(n, 0);
  std::vector<Elem> out{0};
  mask[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Elem g : gens) {
      Elem y = mul(out[i], g);
      if (!mask[y]) {
        mask[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

// Greedy generating set: scan `order` and keep anything not yet generated.
template <class Mul>
std::vector<Elem> greedy_generators(std::size_t n, Mul mul, const std::vector<Elem>& order) {
  std::vector<Elem> gens;
  std::vector<char> mask;
  std::size_t covered = right_closure(n, mul, gens, mask).size();
  for (Elem x : order) {
    if (covered == n) break;
    if (mask[x]) continue;
    gens.push_back(x);
    covered = right_closure(n, mul, gens, mask).size();
  }
  return gens;
}

}  // namespace

CayleyGroup::CayleyGroup(std::size_t n, std::vector<Cell> table, std::vector<Elem> input_labels,
                         std::string label)
    : n_(n), table_(std::move(table)), inv_(n), orders_(n), input_labels_(std::move(input_labels)),
      label_(std::move(label)) {
  if (input_labels_.empty()) {
    input_labels_.resize(n);
    std::iota(input_labels_.begin(), input_labels_.end(), 0);
  }
  for (Elem x = 0; x < n; ++x) {
    const Cell* r = row(x);
    for (Elem y = 0; y < n; ++y)
      if (r[y] == 0) {
        inv_[x] = y;
        break;
      }
  }
  for (Elem x = 0; x < n; ++x) {
    std::uint32_t k = 1;
    for (Elem y = x; y != 0; y = mul(y, x)) ++k;
    orders_[x] = k;  // x, x^2, ..., x^(k-1) are nontrivial
  }
  for (Elem x = 0; x < n && abelian_; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (mul(x, y) != mul(y, x)) {
        abelian_ = false;
        break;
      }
  std::vector<Elem> by_order(n);
  std::iota(by_order.begin(), by_order.end(), 0);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Elem a, Elem b) { return orders_[a] > orders_[b]; });
  gens_ = greedy_generators(n, [this](Elem a, Elem b) { return mul(a, b); }, by_order);
}

Elem CayleyGroup::pow(Elem x, long long e) const {
  long long o = orders_[x];
  e %= o;
  if (e < 0) e += o;
  Elem r = 0;
  for (long long i = 0; i < e; ++i) r = mul(r, x);
  return r;
}

Subgroup::Subgroup(GroupPtr g, std::vector<Elem> elems) : parent(std::move(g)), members(std::move(elems)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  mask.assign(parent->order(), 0);
  for (Elem x : members) mask[x] = 1;
}

bool Subgroup::subset_of(const Subgroup& o) const {
  for (Elem x : members)
    if (!o.contains(x)) return false;
  return true;
}

GroupPtr validate_table(std::size_t n, const std::vector<Elem>& raw, std::string label) {
  if (n == 0 || n > kMaxOrder) throw NotAGroup("bad-order");
  if (raw.size() != n * n) throw NotAGroup("non-latin-square");
  for (Elem v : raw)
    if (v >= n) throw NotAGroup("non-latin-square");
  auto at = [&](std::size_t a, std::size_t b) { return raw[a * n + b]; };

  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[at(a, b)]) throw NotAGroup("non-latin-square");
      seen[at(a, b)] = 1;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t a = 0; a < n; ++a) {
      if (seen[at(a, b)]) throw NotAGroup("non-latin-square");
      seen[at(a, b)] = 1;
    }
  }

  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = at(c, x) == x && at(x, c) == x;
    if (ok) e = c;
  }
  if (e == n) throw NotAGroup("no-identity");
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t y = 0;
    while (at(x, y) != e) ++y;
    if (at(y, x) != e) throw NotAGroup("missing-inverse");
  }

  // swap labels e <-> 0
  std::vector<Elem> to_new(n);
  std::iota(to_new.begin(), to_new.end(), 0);
  std::swap(to_new[0], to_new[e]);
  const std::vector<Elem>& to_old = to_new;  // an involution
  std::vector<Cell> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = static_cast<Cell>(to_new[at(to_old[a], to_old[b])]);

  auto mul = [&](Elem a, Elem b) -> Elem { return table[static_cast<std::size_t>(a) * n + b]; };
  std::vector<Elem> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<Elem> gens = greedy_generators(n, mul, all);
  if (!kernels::light_test_parallel(n, table.data(), gens)) throw NotAGroup("non-associative");
  return std::make_shared<CayleyGroup>(n, std::move(table), to_old, std::move(label));
}

bool associative_full(const CayleyGroup& g) { return kernels::associative_full_parallel(g); }

bool is_homomorphism(const GroupMap& m) {
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (m.image.size() != s.order()) return false;
  for (Elem x : m.image)
    if (x >= t.order()) return false;
  // checking on generators suffices once image(1) = 1
  if (m.image[0] != 0) return false;
  for (Elem g : s.generators())
    for (Elem x = 0; x < s.order(); ++x)
      if (m.image[s.mul(x, g)] != t.mul(m.image[x], m.image[g])) return false;
  return true;
}

bool is_isomorphism(const GroupMap& m) {
  if (m.source->order() != m.target->order() || !is_homomorphism(m)) return false;
  std::vector<char> hit(m.target->order(), 0);
  for (Elem x : m.image) {
    if (hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

GroupMap identity_map(const GroupPtr& g) {
  GroupMap m{g, g, std::vector<Elem>(g->order()), MapKind::isomorphism};
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

GroupMap compose(const GroupMap& second, const GroupMap& first) {
  GroupMap m{first.source, second.target, std::vector<Elem>(first.image.size()), MapKind::homomorphism};
  for (std::size_t i = 0; i < first.image.size(); ++i) m.image[i] = second.image[first.image[i]];
  if (first.kind == MapKind::isomorphism && second.kind == MapKind::isomorphism)
    m.kind = MapKind::isomorphism;
  return m;
}

GroupMap inverse_map(const GroupMap& iso) {
  GroupMap m{iso.target, iso.source, std::vector<Elem>(iso.image.size()), MapKind::isomorphism};
  for (std::size_t i = 0; i < iso.image.size(); ++i) m.image[iso.image[i]] = static_cast<Elem>(i);
  return m;
}

// ---------------------------------------------------------------- subgroups

namespace {

std::vector<Elem> closure_elems(const CayleyGroup& g, std::span<const Elem> gens, std::vector<char>& mask) {
  return right_closure(g.order(), [&](Elem a, Elem b) { return g.mul(a, b); }, gens, mask);
}

// Normal closure of seed inside the subgroup generated by `ambient`.
std::vector<Elem> normal_closure_in(const CayleyGroup& g, std::span<const Elem> ambient,
                                    std::span<const Elem> seed, std::vector<char>& mask) {
  std::vector<Elem> gens;
  for (Elem s : seed)
    if (s != 0) gens.push_back(s);
  std::vector<Elem> elems = closure_elems(g, gens, mask);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem a : ambient) {
      Elem c = g.conj(gens[i], a);
      if (!mask[c]) {
        gens.push_back(c);
        elems = closure_elems(g, gens, mask);
      }
    }
  return elems;
}

}  // namespace

Subgroup whole_group(const GroupPtr& g) {
  std::vector<Elem> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(g, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup(g, {0}); }

Subgroup subgroup_generated(const GroupPtr& g, std::span<const Elem> gens) {
  std::vector<char> mask;
  return Subgroup(g, closure_elems(*g, gens, mask));
}

std::vector<Elem> subgroup_generators(const Subgroup& h) {
  const auto& g = *h.parent;
  std::vector<Elem> order = h.members;
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return g.elem_order(a) > g.elem_order(b); });
  return greedy_generators(g.order(), [&](Elem a, Elem b) { return g.mul(a, b); }, order);
}

bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent;
  for (Elem x : subgroup_generators(h))
    for (Elem a : g.generators())
      if (!h.contains(g.conj(x, a))) return false;
  return true;
}

Subgroup center(const GroupPtr& g) {
  std::vector<Elem> z;
  for (Elem x = 0; x < g->order(); ++x) {
    bool c = true;
    for (Elem a : g->generators())
      if (g->mul(x, a) != g->mul(a, x)) {
        c = false;
        break;
      }
    if (c) z.push_back(x);
  }
  return Subgroup(g, std::move(z));
}

Subgroup centralizer(const GroupPtr& g, const Subgroup& h) {
  auto hg = subgroup_generators(h);
  std::vector<Elem> z;
  for (Elem x = 0; x < g->order(); ++x) {
    bool c = true;
    for (Elem a : hg)
      if (g->mul(x, a) != g->mul(a, x)) {
        c = false;
        break;
      }
    if (c) z.push_back(x);
  }
  return Subgroup(g, std::move(z));
}

Subgroup derived_subgroup(const Subgroup& h) {
  const auto& g = *h.parent;
  auto gens = subgroup_generators(h);
  std::vector<Elem> seed;
  for (Elem a : gens)
    for (Elem b : gens) seed.push_back(g.comm(a, b));
  std::vector<char> mask;
  return Subgroup(h.parent, normal_closure_in(g, gens, seed, mask));
}

Subgroup commutator_subgroup(const GroupPtr& g) { return derived_subgroup(whole_group(g)); }

Subgroup normal_closure(const GroupPtr& g, std::span<const Elem> seed) {
  std::vector<char> mask;
  return Subgroup(g, normal_closure_in(*g, g->generators(), seed, mask));
}

bool is_solvable(const Subgroup& h) {
  Subgroup cur = h;
  // the series strictly decreases, so log2|G| steps suffice
  for (std::size_t step = 0; cur.size() > 1; ++step) {
    Subgroup d = derived_subgroup(cur);
    if (d.size() == cur.size()) return false;
    cur = std::move(d);
  }
  return true;
}

std::vector<std::vector<Elem>> conjugacy_classes(const GroupPtr& g) {
  const std::size_t n = g->order();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<Elem>> out;
  for (Elem x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::vector<Elem> cls{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem a : g->generators()) {
        Elem c = g->conj(cls[i], a);
        if (!seen[c]) {
          seen[c] = 1;
          cls.push_back(c);
        }
      }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

Subgroup solvable_radical(const GroupPtr& g) {
  Subgroup all = whole_group(g);
  if (is_solvable(all)) return all;
  std::vector<Elem> rad;
  for (const auto& cls : conjugacy_classes(g)) {
    Elem x = cls.front();
    if (x == 0 || is_solvable(normal_closure(g, std::span<const Elem>(&x, 1))))
      rad.insert(rad.end(), cls.begin(), cls.end());
  }
  return Subgroup(g, std::move(rad));
}

std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& g) {
  std::vector<Subgroup> closures;
  for (const auto& cls : conjugacy_classes(g)) {
    Elem x = cls.front();
    if (x == 0) continue;
    Subgroup n = normal_closure(g, std::span<const Elem>(&x, 1));
    bool dup = false;
    for (const auto& c : closures)
      if (c == n) {
        dup = true;
        break;
      }
    if (!dup) closures.push_back(std::move(n));
  }
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < closures.size() && minimal; ++j)
      if (j != i && closures[j].size() < closures[i].size() && closures[j].subset_of(closures[i]))
        minimal = false;
    if (minimal) out.push_back(closures[i]);
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.members < b.members; });
  return out;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> m;
  for (Elem x : a.members)
    if (b.contains(x)) m.push_back(x);
  return Subgroup(a.parent, std::move(m));
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  auto gens = subgroup_generators(a);
  auto gb = subgroup_generators(b);
  gens.insert(gens.end(), gb.begin(), gb.end());
  return subgroup_generated(a.parent, gens);
}

SubgroupGroup subgroup_as_group(const Subgroup& h, std::string label) {
  const auto& g = *h.parent;
  const std::size_t m = h.size();
  std::vector<Elem> index(g.order(), kNone);
  for (std::size_t i = 0; i < m; ++i) index[h.members[i]] = static_cast<Elem>(i);
  std::vector<Cell> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = static_cast<Cell>(index[g.mul(h.members[i], h.members[j])]);
  auto sub = std::make_shared<CayleyGroup>(m, std::move(table), std::vector<Elem>{}, std::move(label));
  GroupMap emb{sub, h.parent, h.members, MapKind::homomorphism};
  return {sub, emb};
}

QuotientPresentation quotient_with_section(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(n)) throw NotNormal("subgroup is not normal");
  const std::size_t N = g->order();
  std::vector<Elem> coset(N, kNone);
  std::vector<Elem> reps;
  for (Elem x = 0; x < N; ++x) {
    if (coset[x] != kNone) continue;
    Elem c = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem a : n.members) coset[g->mul(x, a)] = c;
  }
  const std::size_t q = reps.size();
  std::vector<Cell> table(q * q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) table[i * q + j] = static_cast<Cell>(coset[g->mul(reps[i], reps[j])]);
  auto quo = std::make_shared<CayleyGroup>(q, std::move(table), std::vector<Elem>{},
                                           g->label().empty() ? "" : g->label() + "/N");
  QuotientPresentation qp;
  qp.group = g;
  qp.normal = n;
  qp.quotient = quo;
  qp.projection = GroupMap{g, quo, coset, MapKind::homomorphism};
  qp.section = GroupMap{quo, g, reps, MapKind::section};
  return qp;
}

Subgroup preimage(const QuotientPresentation& qp, const Subgroup& h) {
  std::vector<Elem> m;
  for (Elem x = 0; x < qp.group->order(); ++x)
    if (h.contains(qp.projection(x))) m.push_back(x);
  return Subgroup(qp.group, std::move(m));
}

namespace {

bool is_simple_nonabelian(const Subgroup& t) {
  auto sg = subgroup_as_group(t);
  if (sg.group->is_abelian()) return false;
  auto mins = minimal_normal_subgroups(sg.group);
  return mins.size() == 1 && mins[0].size() == t.size();
}

}  // namespace

std::vector<Subgroup> simple_factor_decomposition(const GroupPtr& q) {
  if (q->order() == 1) return {};
  if (center(q).size() != 1) throw NotSemisimpleProduct("nontrivial center");
  auto mins = minimal_normal_subgroups(q);
  std::size_t prod = 1;
  for (const auto& t : mins) {
    if (!is_simple_nonabelian(t)) throw NotSemisimpleProduct("minimal normal subgroup is not simple");
    prod *= t.size();
    if (prod > q->order()) throw NotSemisimpleProduct("factors overlap");
  }
  if (prod != q->order()) throw NotSemisimpleProduct("minimal normal subgroups do not exhaust the group");
  std::vector<Elem> gens;
  for (const auto& t : mins) {
    auto tg = subgroup_generators(t);
    gens.insert(gens.end(), tg.begin(), tg.end());
  }
  if (subgroup_generated(q, gens).size() != q->order()) throw NotSemisimpleProduct("not a direct product");
  return mins;
}

BabaiBeals babai_beals_filtration(const GroupPtr& g) {
  BabaiBeals bb;
  bb.rad = solvable_radical(g);
  if (bb.rad.size() == g->order()) {
    bb.soc_star = bb.rad;
    bb.pker = bb.rad;
    return bb;
  }
  auto qp = quotient_with_section(g, bb.rad);
  auto mins = minimal_normal_subgroups(qp.quotient);
  std::vector<Elem> gens;
  for (const auto& m : mins) {
    auto mg = subgroup_generators(m);
    gens.insert(gens.end(), mg.begin(), mg.end());
  }
  Subgroup soc = subgroup_generated(qp.quotient, gens);
  bb.soc_star = preimage(qp, soc);
  // simple factors of the socle, pulled back to quotient labels
  auto sg = subgroup_as_group(soc);
  std::vector<Subgroup> factors;
  for (const auto& t : minimal_normal_subgroups(sg.group)) {
    std::vector<Elem> m;
    for (Elem x : t.members) m.push_back(sg.embedding(x));
    factors.emplace_back(qp.quotient, std::move(m));
    bb.socle_factor_orders.push_back(t.size());
  }
  std::vector<std::vector<Elem>> fgens;
  for (const auto& t : factors) fgens.push_back(subgroup_generators(t));
  std::vector<Elem> kernel;
  for (Elem x = 0; x < qp.quotient->order(); ++x) {
    bool fixes = true;
    for (std::size_t i = 0; i < factors.size() && fixes; ++i)
      for (Elem t : fgens[i])
        if (!factors[i].contains(qp.quotient->conj(t, x))) {
          fixes = false;
          break;
        }
    if (fixes) kernel.push_back(x);
  }
  bb.pker = preimage(qp, Subgroup(qp.quotient, std::move(kernel)));
  return bb;
}

// ---------------------------------------------------------- isomorphisms

namespace {

struct Signatures {
  std::vector<std::uint64_t> sig;  // (order, class size) packed
  std::map<std::uint64_t, std::size_t> count;
};

Signatures signatures(const GroupPtr& g) {
  Signatures s;
  s.sig.assign(g->order(), 0);
  for (const auto& cls : conjugacy_classes(g))
    for (Elem x : cls) s.sig[x] = (std::uint64_t{g->elem_order(x)} << 32) | cls.size();
  for (auto v : s.sig) ++s.count[v];
  return s;
}

class IsoSearch {
 public:
  IsoSearch(GroupPtr g, GroupPtr h) : g_(std::move(g)), h_(std::move(h)) {}

  // Calls `found` for each isomorphism; stops when it returns false.
  void run(const std::function<bool(const std::vector<Elem>&)>& found) {
    const std::size_t n = g_->order();
    if (n != h_->order() || g_->is_abelian() != h_->is_abelian()) return;
    sg_ = signatures(g_);
    sh_ = signatures(h_);
    if (sg_.count != sh_.count) return;
    if (n == 1) {
      found(std::vector<Elem>{0});
      return;
    }
    choose_generators();
    cand_.resize(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (Elem y = 0; y < n; ++y)
        if (sh_.sig[y] == sg_.sig[gens_[i]]) cand_[i].push_back(y);
    img_.assign(n, kNone);
    used_.assign(n, 0);
    chosen_.assign(gens_.size(), 0);
    found_ = &found;
    stop_ = false;
    recurse(0);
  }

 private:
  void choose_generators() {
    const auto& g = *g_;
    const std::size_t n = g.order();
    std::vector<Elem> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) {
      auto ca = sg_.count[sg_.sig[a]], cb = sg_.count[sg_.sig[b]];
      if (ca != cb) return ca < cb;
      return g.elem_order(a) > g.elem_order(b);
    });
    auto mul = [&](Elem a, Elem b) { return g.mul(a, b); };
    gens_ = greedy_generators(n, mul, order);
    if (gens_.size() <= 2) return;
    // look for a 2-element generating set among rare elements
    std::vector<char> mask;
    std::size_t budget = std::max<std::size_t>(64, 4000000 / (n + 1));
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 8); ++i)
      for (std::size_t j = 0; j < n && budget; ++j, --budget) {
        Elem pair[2] = {order[i], order[j]};
        if (right_closure(n, mul, std::span<const Elem>(pair, 2), mask).size() == n) {
          gens_.assign(pair, pair + 2);
          return;
        }
      }
  }

  // cheap order checks on short words in two generators
  bool pair_ok(Elem a, Elem b, Elem x, Elem y) const {
    const auto& g = *g_;
    const auto& h = *h_;
    if (g.elem_order(g.mul(a, b)) != h.elem_order(h.mul(x, y))) return false;
    if (g.elem_order(g.mul(a, g.inv(b))) != h.elem_order(h.mul(x, h.inv(y)))) return false;
    if (g.elem_order(g.comm(a, b)) != h.elem_order(h.comm(x, y))) return false;
    if (g.elem_order(g.mul(g.mul(a, a), b)) != h.elem_order(h.mul(h.mul(x, x), y))) return false;
    if (g.elem_order(g.mul(a, g.mul(b, b))) != h.elem_order(h.mul(x, h.mul(y, y)))) return false;
    if ((g.mul(a, b) == g.mul(b, a)) != (h.mul(x, y) == h.mul(y, x))) return false;
    return true;
  }

  // Extend the map over <gens_[0..depth]>; false on conflict. Records touched entries.
  bool extend(std::size_t depth, std::vector<Elem>& touched) {
    const auto& g = *g_;
    const auto& h = *h_;
    touched.clear();
    img_[0] = 0;
    used_[0] = 1;
    touched.push_back(0);
    for (std::size_t i = 0; i < touched.size(); ++i) {
      Elem x = touched[i];
      for (std::size_t t = 0; t <= depth; ++t) {
        Elem y = g.mul(x, gens_[t]);
        Elem want = h.mul(img_[x], chosen_[t]);
        if (img_[y] == kNone) {
          if (used_[want]) return false;
          img_[y] = want;
          used_[want] = 1;
          touched.push_back(y);
        } else if (img_[y] != want) {
          return false;
        }
      }
    }
    return true;
  }

  void reset(const std::vector<Elem>& touched) {
    for (Elem x : touched) {
      used_[img_[x]] = 0;
      img_[x] = kNone;
    }
  }

  void recurse(std::size_t depth) {
    if (stop_) return;
    if (depth == gens_.size()) {
      std::vector<Elem> touched;
      bool ok = extend(depth - 1, touched);
      if (ok && touched.size() == g_->order() && !(*found_)(img_)) stop_ = true;
      reset(touched);
      return;
    }
    std::vector<Elem> touched;
    for (Elem y : cand_[depth]) {
      bool ok = true;
      for (std::size_t t = 0; t < depth && ok; ++t) ok = pair_ok(gens_[t], gens_[depth], chosen_[t], y);
      if (!ok) continue;
      chosen_[depth] = y;
      if (depth + 1 < gens_.size()) {
        bool consistent = extend(depth, touched);
        reset(touched);
        if (!consistent) continue;
      }
      recurse(depth + 1);
      if (stop_) return;
    }
  }

  GroupPtr g_, h_;
  Signatures sg_, sh_;
  std::vector<Elem> gens_;
  std::vector<std::vector<Elem>> cand_;
  std::vector<Elem> img_;
  std::vector<char> used_;
  std::vector<Elem> chosen_;
  const std::function<bool(const std::vector<Elem>&)>* found_ = nullptr;
  bool stop_ = false;
};

}  // namespace

std::optional<GroupMap> brute_force_iso(const GroupPtr& g, const GroupPtr& h) {
  std::optional<GroupMap> out;
  IsoSearch s(g, h);
  s.run([&](const std::vector<Elem>& img) {
    out = GroupMap{g, h, img, MapKind::isomorphism};
    return false;
  });
  return out;
}

std::vector<GroupMap> enumerate_automorphisms(const GroupPtr& g, std::size_t order_cap) {
  if (g->order() > order_cap) throw CapExceeded("automorphism enumeration: |G| = " + std::to_string(g->order()) +
                                                " exceeds cap " + std::to_string(order_cap));
  std::vector<GroupMap> out;
  IsoSearch s(g, g);
  s.run([&](const std::vector<Elem>& img) {
    out.push_back(GroupMap{g, g, img, MapKind::isomorphism});
    return true;
  });
  return out;
}

// ---------------------------------------------------------- constructions

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::string label) {
  const std::size_t a = g->order(), b = h->order(), n = a * b;
  if (n > kMaxOrder) throw CapExceeded("direct product too large");
  std::vector<Cell> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<Cell>(g->mul(x / b, y / b) * b + h->mul(x % b, y % b));
  return std::make_shared<CayleyGroup>(n, std::move(table), std::vector<Elem>{}, std::move(label));
}

std::pair<GroupPtr, GroupMap> relabel(const GroupPtr& g, const std::vector<Elem>& perm) {
  const std::size_t n = g->order();
  if (perm.size() != n || perm[0] != 0) throw PreconditionFailed("relabeling must fix the identity");
  std::vector<Elem> back(n);
  for (std::size_t i = 0; i < n; ++i) back[perm[i]] = static_cast<Elem>(i);
  std::vector<Cell> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = static_cast<Cell>(perm[g->mul(back[x], back[y])]);
  auto out = std::make_shared<CayleyGroup>(n, std::move(table), std::vector<Elem>{}, g->label());
  return {out, GroupMap{g, out, perm, MapKind::isomorphism}};
}

std::pair<GroupPtr, GroupMap> random_relabel(const GroupPtr& g, std::uint64_t seed) {
  std::vector<Elem> perm(g->order());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  return relabel(g, perm);
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

template <class Mul>
GroupPtr closure_group(const std::vector<std::uint32_t>& one, const std::vector<std::vector<std::uint32_t>>& gens,
                       Mul mul, std::size_t cap, std::string label) {
  cap = std::min(cap, kMaxOrder);
  std::vector<std::vector<std::uint32_t>> elems{one};
  std::unordered_map<std::vector<std::uint32_t>, Elem, VecHash> index{{one, 0}};
  std::vector<Elem> parent{0}, via{0};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t t = 0; t < gens.size(); ++t) {
      auto y = mul(elems[i], gens[t]);
      if (index.count(y)) continue;
      if (elems.size() >= cap) throw CapExceeded("closure exceeds cap " + std::to_string(cap));
      index.emplace(y, static_cast<Elem>(elems.size()));
      elems.push_back(std::move(y));
      parent.push_back(static_cast<Elem>(i));
      via.push_back(static_cast<Elem>(t));
    }
  const std::size_t n = elems.size();
  std::vector<Elem> right(n * gens.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < gens.size(); ++t) right[i * gens.size() + t] = index.at(mul(elems[i], gens[t]));
  std::vector<Cell> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    table[x * n] = static_cast<Cell>(x);
    for (std::size_t y = 1; y < n; ++y)
      table[x * n + y] = static_cast<Cell>(right[table[x * n + parent[y]] * gens.size() + via[y]]);
  }
  return std::make_shared<CayleyGroup>(n, std::move(table), std::vector<Elem>{}, std::move(label));
}

}  // namespace

GroupPtr group_from_permutations(std::size_t degree, const std::vector<Perm>& gens, std::size_t cap,
                                 std::string label) {
  Perm one(degree);
  std::iota(one.begin(), one.end(), 0);
  for (const auto& p : gens) {
    if (p.size() != degree) throw PreconditionFailed("permutation of wrong degree");
    std::vector<char> hit(degree, 0);
    for (auto x : p) {
      if (x >= degree || hit[x]) throw PreconditionFailed("not a permutation");
      hit[x] = 1;
    }
  }
  auto mul = [](const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
  };
  return closure_group(one, gens, mul, cap, std::move(label));
}

GroupPtr group_from_matrices(std::uint32_t p, std::size_t dim, const std::vector<std::vector<std::uint32_t>>& gens,
                             std::size_t cap, std::string label) {
  std::vector<std::uint32_t> one(dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i) one[i * dim + i] = 1;
  for (const auto& m : gens)
    if (m.size() != dim * dim) throw PreconditionFailed("matrix of wrong size");
  auto mul = [p, dim](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> c(dim * dim, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t j = 0; j < dim; ++j) c[i * dim + j] = (c[i * dim + j] + a[i * dim + k] * b[k * dim + j]) % p;
    return c;
  };
  std::vector<std::vector<std::uint32_t>> reduced;
  for (auto m : gens) {
    for (auto& x : m) x %= p;
    reduced.push_back(std::move(m));
  }
  return closure_group(one, reduced, mul, cap, std::move(label));
}

}  // namespace extiso
