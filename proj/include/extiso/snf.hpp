#pragma once

// Smith-style diagonalization over Z with explicit unimodular transforms.
// Used for small Diophantine systems and as an oracle for solve_congruences.

#include <optional>
#include <vector>

#include "extiso/modlinalg.hpp"

namespace extiso {

// Integer solution of A x = b, or nothing.
std::optional<std::vector<std::int64_t>> solve_diophantine_snf(const std::vector<std::vector<std::int64_t>>& a,
                                                               const std::vector<std::int64_t>& b);

// Moduli become slack columns m_i * t_i.
std::optional<std::vector<std::int64_t>> solve_congruences_snf(const std::vector<Congruence>& eqs, std::size_t nvars);

}  // namespace extiso
