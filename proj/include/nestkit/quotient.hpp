#pragma once

#include <vector>

#include "nestkit/group.hpp"

namespace nestkit {

/// G -> G/N on left cosets. Coset representatives are least element indices;
/// target elements are ordered by their representatives, so the identity
/// coset is element 0.
struct QuotientMap {
  const Group* source = nullptr;
  Subgroup kernel;
  GroupPtr target;
  std::vector<Elem> projection;
  std::vector<Elem> representative;  // least preimage of each target element

  Elem project(Elem a) const { return projection[a]; }
  /// HN/N as a subgroup of the target.
  Subgroup image(const Subgroup& h) const;
  /// Full preimage in the source of a target subgroup.
  Subgroup preimage(const Subgroup& h) const;
};

/// Throws NotNormal when n is not normal.
QuotientMap quotient(const Group& g, const Subgroup& n);

}  // namespace nestkit
