#pragma once

#include <optional>
#include <string>
#include <vector>

#include "extiso/abelian.hpp"
#include "extiso/cayley.hpp"
#include "extiso/cohomology.hpp"

namespace extiso {

struct IsoConfig {
  std::size_t aut_order_cap = kDefaultAutOrderCap;        // |Q| for Aut(Q) enumeration
  std::size_t abelian_aut_cap = kDefaultAbelianAutCap;    // |Aut(A)|
  std::size_t cyclicity_cap = 100000;                     // p^dim V
  std::size_t diagonal_cap = 1000000;                     // diagonals in the code strategy
  std::size_t brute_order_cap = 4000;                     // brute-force fallback
  std::size_t oracle_cap = 200;                           // --oracle-check limit
  bool oracle_check = false;

  // EXTISO_CAP scales every cap to the given value when set.
  static IsoConfig from_env();
};

enum class IsoResult { isomorphic, not_isomorphic };

struct IsoVerdict {
  IsoResult result = IsoResult::not_isomorphic;
  std::optional<GroupMap> witness;
  std::string strategy;
  std::vector<std::string> certificate;

  bool isomorphic() const { return result == IsoResult::isomorphic; }
};

// Matrix algebra U and U-module V inside M(k, p), as bases.
struct AlgebraModulePair {
  std::uint32_t p = 2;
  std::size_t k = 0;
  std::vector<Mat> U;
  std::vector<Mat> V;
};

// A generator of V as a U-module, by exhaustive search over V.
std::optional<Mat> module_cyclicity_test(const AlgebraModulePair& pair, std::size_t cap = 100000);

// The module route for one beta: an invertible generator of V, rescaled so
// that theta1 = alpha^-1 theta2 alpha and [alpha f1] = [f2], with f1 = alpha^-1 f2 + f_u.
struct CyclicityMatch {
  Mat alpha;
  std::vector<Elem> u;
};
std::optional<CyclicityMatch> cyclicity_match(const ExtensionData& ed1, const ExtensionData& ed2,
                                              std::size_t cap = 100000);

// U and V for (theta1, f1) against (theta2, f2) on a common Q and Z_p^k.
AlgebraModulePair build_module_pair(const ExtensionData& ed1, const ExtensionData& ed2);

// Re-express ed's cocycle in coefficient a (same invariants, coordinates identified).
ExtensionData with_coefficient(const ExtensionData& ed, const AbelianPtr& a);

struct PseudoCongruence {
  AbelianAut alpha;
  GroupMap beta;
};
std::optional<PseudoCongruence> pseudo_congruent(const ExtensionData& ed1, const ExtensionData& ed2,
                                                 const std::vector<AbelianAut>& aut_a,
                                                 const std::vector<GroupMap>& aut_q);

// gamma(a s1(q)) = alpha(a + u(q)) s2(beta(q)) when f1 = f2^(alpha, beta) + f_u.
GroupMap main_lemma_witness(const QuotientPresentation& qp1, const ExtensionData& ed1,
                            const QuotientPresentation& qp2, const AbelianStructure& a2, const Mat& alpha,
                            const GroupMap& beta, const std::vector<Elem>& u);

// Invertible alpha with alpha * p1 = p2 over GF(p), given equal row spans.
std::optional<Mat> basis_change(const Mat& p1, const Mat& p2, std::uint32_t p);

IsoVerdict iso_brute(const GroupPtr& g, const GroupPtr& h);
IsoVerdict iso_abelian(const GroupPtr& g, const GroupPtr& h);
IsoVerdict iso_central_radical(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg = {});
IsoVerdict iso_elem_abelian_radical(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg = {});
IsoVerdict iso_semisimple_product_small_autA(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg = {});
IsoVerdict iso_semisimple_product_code(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg = {});
IsoVerdict iso_auto(const GroupPtr& g, const GroupPtr& h, const IsoConfig& cfg = {});
// strategy: auto | central-radical | elem-abelian-radical | ss-product-1 | ss-product-2 | brute
IsoVerdict iso_with_strategy(const std::string& strategy, const GroupPtr& g, const GroupPtr& h,
                             const IsoConfig& cfg = {});

// The characteristic elementary abelian subgroup used by iso_elem_abelian_radical:
// the first nontrivial one among rad(G), Z(G), [G,G], else the first trivial one.
struct CharacteristicChoice {
  std::string name;
  Subgroup subgroup;
};
std::optional<CharacteristicChoice> elementary_characteristic(const GroupPtr& g);
Subgroup characteristic_by_name(const GroupPtr& g, const std::string& name);

// True iff im1 and im2 are isomorphic subgroups with isomorphic quotients but
// no automorphism of the abelian group g carries im1 onto im2.
bool non_pc_regression(const GroupPtr& g, const Subgroup& im1, const Subgroup& im2);

}  // namespace extiso
