#pragma once

#include <vector>

#include "gbt/constraint.hpp"
#include "gbt/digraph.hpp"

namespace gbt {

/// Membership decided from the spec data alone (independent of the refiner code).
bool oracle_contains(const ConstraintSpec& c, const Permutation& g);

/// Every permutation passing all constraints, sorted by image sequence. Enumerates
/// the smallest group or coset given by a Group/Coset spec (order <= 10^6), else
/// Sym(degree) for degree <= 8.
std::vector<Permutation> brute_solve(const std::vector<ConstraintSpec>& specs, std::size_t degree);

/// All g with S^g = T by enumeration of Sym(n), n <= 7.
std::vector<Permutation> brute_iso_stacks(const DigraphStack& s, const DigraphStack& t);

/// All g with S^g = T by point-by-point backtracking with label and arc checks only.
/// Exponential in the worst case; meant for degree <= 10.
std::vector<Permutation> exact_iso_stacks(const DigraphStack& s, const DigraphStack& t);

}  // namespace gbt
