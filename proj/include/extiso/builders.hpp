#pragma once

#include <optional>
#include <vector>

#include "extiso/abelian.hpp"
#include "extiso/cayley.hpp"
#include "extiso/cohomology.hpp"

namespace extiso {

// Group on A x Q with (a, p)(b, q) = (a + theta_p(b) + f(p, q), pq).
// Element (a, q) gets label coord_rank(a) * |Q| + q.
GroupPtr reconstruct_abelian(const ExtensionData& ed, std::string label = "");
// Group on N x Q with (n, p)(m, q) = (n T(p)(m) f(p, q), pq); label n * |Q| + q.
GroupPtr reconstruct_general(const GeneralExtensionData& ed, std::string label = "");

GroupPtr semidirect_product(const AbelianPtr& a, const GroupPtr& q, const std::vector<Mat>& action,
                            std::string label = "");

// Alternating bilinear map Z_p^l x Z_p^l -> Z_p^k, values[i * l + j] = f(e_i, e_j).
struct BilinearMap {
  std::uint32_t p = 3;
  std::size_t k = 0, l = 0;
  std::vector<std::vector<std::uint32_t>> values;

  std::vector<std::uint32_t> eval(std::span<const std::uint32_t> x, std::span<const std::uint32_t> y) const;
  bool alternating() const;
};
// (a, q)(b, q') = (a + b + f(q, q')/2, q + q'); label rank(a) * p^l + rank(q).
GroupPtr baer_group(const BilinearMap& b, std::string label = "");

// (G1 x G2) / {(y^-1, phi(y))}; phi.source is subgroup_as_group(y1).group.
GroupPtr central_product(const GroupPtr& g1, const GroupPtr& g2, const Subgroup& y1, const GroupMap& phi,
                         std::string label = "");

// G|_{Z(N)} = C_G(N) when every coset of N acts on N by an inner automorphism.
struct TrivialCore {
  GroupPtr core;
  GroupMap embedding;  // core -> G
};
TrivialCore act_trivial_core(const GroupPtr& g, const Subgroup& n);

// A complement of the abelian normal subgroup a, if any.
std::optional<Subgroup> find_complement(const GroupPtr& g, const Subgroup& a);

}  // namespace extiso
