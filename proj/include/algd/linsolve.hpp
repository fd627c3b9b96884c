#pragma once

#include <map>
#include <optional>
#include <vector>

#include "algd/poly.hpp"

namespace algd {

// Sparse vector over Q indexed by row (equation) number.
using SparseVec = std::map<int, Rational>;

// Solves sum_c x_c columns[c] = rhs exactly by sparse Gaussian elimination.
// Free unknowns are set to 0, so the answer is deterministic. nullopt when
// the system is inconsistent.
std::optional<std::vector<Rational>> solve_sparse(const std::vector<SparseVec>& columns, const SparseVec& rhs);

// Exponent vectors of all monomials in n variables of total degree <= bound,
// in increasing degree.
std::vector<Monomial> monomials_up_to(int n, int bound);

}  // namespace algd
