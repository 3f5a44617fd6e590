#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nestkit/group.hpp"

namespace nestkit {

/// Orders of the cyclic factors of G/G' in primary form, ascending.
std::vector<std::size_t> abelian_invariants(const Group& g);

/// Isomorphism-invariant summary: order, class sizes, element-order
/// statistics, |Z(G)|, |G'| and the abelian invariants. Equal for
/// isomorphic groups; a cheap filter before are_isomorphic.
std::string structure_key(const Group& g);

/// Exact isomorphism test. Maps a small generating set of `a` into `b` by
/// backtracking over images with matching order and class size, checking
/// each partial map on the subgroup it generates.
bool are_isomorphic(const Group& a, const Group& b);

}  // namespace nestkit
