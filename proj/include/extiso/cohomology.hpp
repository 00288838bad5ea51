#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "extiso/abelian.hpp"
#include "extiso/cayley.hpp"
#include "extiso/modlinalg.hpp"

namespace extiso {

// Abelian coefficients: action[q] is the matrix of theta_q on coordinates,
// cocycle[p * |Q| + q] an element of coefficient->group.
struct ExtensionData {
  AbelianPtr coefficient;
  GroupPtr quotient;
  std::vector<Mat> action;
  std::vector<Elem> cocycle;

  std::size_t qn() const { return quotient->order(); }
  Elem f(Elem p, Elem q) const { return cocycle[static_cast<std::size_t>(p) * qn() + q]; }
  bool trivial_action() const;
};

// Nonabelian coefficients: T[q] is a permutation of N's elements.
struct GeneralExtensionData {
  GroupPtr normal;
  GroupPtr quotient;
  std::vector<std::vector<Elem>> T;
  std::vector<Elem> cocycle;

  Elem f(Elem p, Elem q) const { return cocycle[static_cast<std::size_t>(p) * quotient->order() + q]; }
};

// The normal subgroup as a standalone group, labels following qp.normal.members.
AbelianPtr coefficient_structure(const QuotientPresentation& qp);
ExtensionData extract_extension_data(const QuotientPresentation& qp);
ExtensionData extract_extension_data(const QuotientPresentation& qp, const AbelianPtr& coefficient);
GeneralExtensionData extract_general_extension_data(const QuotientPresentation& qp);

bool verify_extension_data(const ExtensionData& ed);
bool verify_extension_data(const GeneralExtensionData& ed);

ExtensionData zero_extension_data(const AbelianPtr& a, const GroupPtr& q);

// A 2-cochain as a k x m matrix, row i reduced mod orders[i].
struct CochainMatrix {
  AbelianPtr coefficient;
  std::vector<std::pair<Elem, Elem>> columns;
  Mat entries;
};

Mat cocycle_rows(const ExtensionData& ed);  // full mode, column p*|Q|+q
CochainMatrix to_matrix(const ExtensionData& ed);
// product-respecting mode: columns are the union of T_i x T_i
CochainMatrix to_matrix(const ExtensionData& ed, const std::vector<Subgroup>& factors);
void write_cochain_matrix(std::ostream& out, const CochainMatrix& m);

// Independent generating set of B^2(Q, A, theta); each element a k x |Q|^2 matrix.
std::vector<Mat> coboundary_basis(const GroupPtr& q, const AbelianPtr& a, const std::vector<Mat>& action);
std::vector<Mat> coboundary_basis(const GroupPtr& q, const AbelianPtr& a);  // trivial action
Mat coboundary_of(const ExtensionData& shape, const std::vector<Elem>& u);  // f_u as rows

ExtensionData twist(const ExtensionData& ed, const AbelianAut& alpha, const GroupMap& beta);

// u with f1 - f2 = f_u (action of the shared data), or nothing.
std::optional<std::vector<Elem>> coboundary_witness(const ExtensionData& f1, const ExtensionData& f2);
bool cohomologous(const ExtensionData& f1, const ExtensionData& f2);

// Howell-form span over Z/p^mu of B^2(Q, Z_{p^mu}) with trivial action.
HowellSpan coboundary_span(const GroupPtr& q, std::uint32_t p, std::uint32_t mu);

// Span test for trivial action (per distinct (p, mu) of the coefficient).
class CentralClassTester {
 public:
  CentralClassTester(GroupPtr q, AbelianPtr a);
  bool same_class_up_to_aut(const Mat& rows1, const Mat& rows2) const;
  // rows lifted or reduced into Z/p^mu as described for mixed exponents
  Mat lift_rows(const Mat& rows, std::uint32_t p, std::uint32_t mu) const;
  const HowellSpan& b2(std::uint32_t p, std::uint32_t mu) const { return b2_.at({p, mu}); }
  // canonical representative of each row modulo B^2 (row modulus orders[i])
  Mat canonical(const Mat& rows) const;

 private:
  GroupPtr q_;
  AbelianPtr a_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, HowellSpan> b2_;
};

bool same_class_up_to_autA(const ExtensionData& f1, const ExtensionData& f2);

// pi: projection along B^2 onto the pivot-free coordinates (trivial action).
class Projection {
 public:
  Projection(GroupPtr q, AbelianPtr a) : tester_(std::move(q), std::move(a)) {}
  Mat apply(const Mat& rows) const { return tester_.canonical(rows); }
  std::vector<std::size_t> complement_coordinates(std::uint32_t p, std::uint32_t mu) const;

 private:
  CentralClassTester tester_;
};
Projection projection_complement(const GroupPtr& q, const AbelianPtr& a);

QuotientPresentation restrict_to_factor(const QuotientPresentation& qp, const Subgroup& factor);

struct ProductCocycle {
  GroupPtr quotient;  // direct product of the factor quotients, factor 0 most significant
  ExtensionData data;
};
ProductCocycle assemble_product_cocycle(const std::vector<ExtensionData>& factors);

struct CentralSplit {
  Subgroup factor;      // A'
  Subgroup complement;  // C with G = A' x C
};
CentralSplit split_central_direct_factor(const GroupPtr& g);
bool is_internal_direct_product(const Subgroup& a, const Subgroup& b);

}  // namespace extiso
