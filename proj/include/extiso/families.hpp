#pragma once

// Named groups and fixtures used by the CLI, tests and the shipped corpus.

#include <string>
#include <vector>

#include "extiso/builders.hpp"
#include "extiso/cayley.hpp"
#include "extiso/cohomology.hpp"

namespace extiso::families {

GroupPtr trivial();
GroupPtr cyclic(std::size_t n);
GroupPtr abelian(const std::vector<std::size_t>& cyclic_orders);  // Z_{n1} x Z_{n2} x ...
GroupPtr elementary_abelian(std::uint32_t p, std::size_t k);
GroupPtr dihedral(std::size_t n);  // order 2n
GroupPtr symmetric(std::size_t n);
GroupPtr alternating(std::size_t n);
GroupPtr quaternion8();
GroupPtr heisenberg(std::uint32_t p);  // order p^3, exponent p for odd p
GroupPtr sl25();
GroupPtr z7_z3();
GroupPtr z3_z2();  // Z3 x| Z2 with inversion, built as a semidirect product
GroupPtr z2_a5();

// Z2 central extension of T1 x T2 (T = A5) with class c_i in {0, 1} on factor i.
struct ProductExtension {
  GroupPtr group;
  ExtensionData data;
};
ProductExtension a5xa5_central(bool first, bool second);

// Z3 by Z3 with Z9's cocycle through the projections 1 -> 1 and 1 -> 2.
struct ExampleE1 {
  ExtensionData first, second;
  GroupPtr z9;
};
ExampleE1 example_e1();

// Example on p = 2: G = Z8 x Z4 x Z2 x Z2 and two embeddings of Z4 x Z2 x Z2.
struct ExampleE2 {
  GroupPtr g;
  Subgroup image1, image2;
};
ExampleE2 example_e2(std::uint32_t p = 2);

struct NamedGroup {
  std::string name;
  GroupPtr group;
};
// >= 30 groups of order <= 200
std::vector<NamedGroup> corpus();

}  // namespace extiso::families
