// Truncated subalgebra generation inside K[X] / K[X]_{deg > d}.

#pragma once

#include <vector>

#include "toric/exactmath.hpp"
#include "toric/monoid.hpp"

namespace toric {

/**
 * Smallest subspace of span{chi^m : m ∈ truncationSet(P, d)} containing 1
 * and every seed vector (terms of degree > d dropped), closed under
 * products truncated at degree d.
 */
TruncatedSubspace generateSubalgebra(const AffineMonoid& P, const std::vector<TruncatedSubspace>& seeds, long d);

/** Projects a subspace onto the degree-<= d monomials of P. */
TruncatedSubspace truncateSubspace(const AffineMonoid& P, const TruncatedSubspace& s, long d);

}   // namespace toric
