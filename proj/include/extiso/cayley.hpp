#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "extiso/core.hpp"

namespace extiso {

class CayleyGroup;
using GroupPtr = std::shared_ptr<const CayleyGroup>;

// Identity is always element 0 internally; validate_table swaps labels if
// the input put it elsewhere and remembers the input labels.
class CayleyGroup {
 public:
  CayleyGroup(std::size_t n, std::vector<Cell> table, std::vector<Elem> input_labels,
              std::string label);

  std::size_t order() const { return n_; }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }  // x^g
  Elem comm(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
  Elem pow(Elem x, long long e) const;
  std::uint32_t elem_order(Elem x) const { return orders_[x]; }
  const std::vector<std::uint32_t>& elem_orders() const { return orders_; }
  bool is_abelian() const { return abelian_; }
  const std::vector<Cell>& table() const { return table_; }
  const Cell* row(Elem a) const { return table_.data() + static_cast<std::size_t>(a) * n_; }
  // input_labels()[x] is the index x had in the table handed to validate_table
  const std::vector<Elem>& input_labels() const { return input_labels_; }
  const std::string& label() const { return label_; }
  // A small generating set, fixed at construction.
  const std::vector<Elem>& generators() const { return gens_; }

 private:
  std::size_t n_;
  std::vector<Cell> table_;
  std::vector<Elem> inv_;
  std::vector<std::uint32_t> orders_;
  std::vector<Elem> input_labels_;
  std::vector<Elem> gens_;
  std::string label_;
  bool abelian_ = true;
};

struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> members;  // sorted
  std::vector<char> mask;     // mask[x] iff x in members

  Subgroup() = default;
  Subgroup(GroupPtr g, std::vector<Elem> elems);
  std::size_t size() const { return members.size(); }
  bool contains(Elem x) const { return mask[x] != 0; }
  bool operator==(const Subgroup& o) const { return members == o.members; }
  bool subset_of(const Subgroup& o) const;
};

enum class MapKind { homomorphism, isomorphism, section };

struct GroupMap {
  GroupPtr source;
  GroupPtr target;
  std::vector<Elem> image;
  MapKind kind = MapKind::homomorphism;

  Elem operator()(Elem x) const { return image[x]; }
};

struct QuotientPresentation {
  GroupPtr group;
  Subgroup normal;
  GroupPtr quotient;
  GroupMap projection;
  GroupMap section;
};

// Table-level checks
GroupPtr validate_table(std::size_t n, const std::vector<Elem>& raw, std::string label = "");
bool associative_full(const CayleyGroup& g);
bool is_homomorphism(const GroupMap& m);
bool is_isomorphism(const GroupMap& m);

GroupMap identity_map(const GroupPtr& g);
GroupMap compose(const GroupMap& second, const GroupMap& first);  // second o first
GroupMap inverse_map(const GroupMap& iso);

// Subgroups
Subgroup whole_group(const GroupPtr& g);
Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup subgroup_generated(const GroupPtr& g, std::span<const Elem> gens);
std::vector<Elem> subgroup_generators(const Subgroup& h);
bool is_normal(const Subgroup& h);
Subgroup center(const GroupPtr& g);
Subgroup centralizer(const GroupPtr& g, const Subgroup& h);
Subgroup commutator_subgroup(const GroupPtr& g);
Subgroup derived_subgroup(const Subgroup& h);
Subgroup normal_closure(const GroupPtr& g, std::span<const Elem> seed);
bool is_solvable(const Subgroup& h);
std::vector<std::vector<Elem>> conjugacy_classes(const GroupPtr& g);
Subgroup solvable_radical(const GroupPtr& g);
std::vector<Subgroup> minimal_normal_subgroups(const GroupPtr& g);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup product(const Subgroup& a, const Subgroup& b);  // a, b normal or commuting

// The subgroup as a standalone group; embedding maps new labels into the parent.
struct SubgroupGroup {
  GroupPtr group;
  GroupMap embedding;
};
SubgroupGroup subgroup_as_group(const Subgroup& h, std::string label = "");

QuotientPresentation quotient_with_section(const GroupPtr& g, const Subgroup& n);
Subgroup preimage(const QuotientPresentation& qp, const Subgroup& h);

std::vector<Subgroup> simple_factor_decomposition(const GroupPtr& q);

struct BabaiBeals {
  Subgroup rad;
  Subgroup soc_star;
  Subgroup pker;
  std::vector<std::size_t> socle_factor_orders;  // simple factors of Soc(G/rad)
};
BabaiBeals babai_beals_filtration(const GroupPtr& g);

// Isomorphism search
std::optional<GroupMap> brute_force_iso(const GroupPtr& g, const GroupPtr& h);
constexpr std::size_t kDefaultAutOrderCap = 4000;
std::vector<GroupMap> enumerate_automorphisms(const GroupPtr& g,
                                              std::size_t order_cap = kDefaultAutOrderCap);

// Constructions
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::string label = "");
// Relabel by a permutation fixing 0; returns the new group and the map old -> new.
std::pair<GroupPtr, GroupMap> relabel(const GroupPtr& g, const std::vector<Elem>& perm);
std::pair<GroupPtr, GroupMap> random_relabel(const GroupPtr& g, std::uint64_t seed);

using Perm = std::vector<std::uint32_t>;
constexpr std::size_t kDefaultClosureCap = 20000;
// Permutations act on [0, degree); x -> p[x]; products read left to right.
GroupPtr group_from_permutations(std::size_t degree, const std::vector<Perm>& gens,
                                 std::size_t cap = kDefaultClosureCap, std::string label = "");
// dim x dim matrices over GF(p), row-major.
GroupPtr group_from_matrices(std::uint32_t p, std::size_t dim,
                             const std::vector<std::vector<std::uint32_t>>& gens,
                             std::size_t cap = kDefaultClosureCap, std::string label = "");

}  // namespace extiso
