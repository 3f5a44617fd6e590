#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "nestkit/group.hpp"

namespace nestkit {

/// Permutations on points 0..degree-1, each given by its image list.
struct PermGenerators {
  unsigned degree = 0;
  std::vector<std::vector<unsigned>> generators;
};

/// Invertible dim x dim matrices over the prime field F_p, row-major.
struct MatrixGenerators {
  unsigned p = 2;
  unsigned dim = 1;
  std::vector<std::vector<unsigned>> generators;
};

/// An explicit Cayley table; row i lists i*j for every j. Element 0 must be
/// the identity.
struct CayleyTable {
  std::vector<std::vector<unsigned>> rows;
};

using GeneratorSpec = std::variant<PermGenerators, MatrixGenerators, CayleyTable>;

/// Enumerates the group generated by `spec`. Elements are numbered in
/// breadth-first order over right multiplication by the generators, in the
/// order given. Throws OrderCapExceeded or InvalidGenerators.
GroupPtr build_group(const GeneratorSpec& spec, std::size_t cap = kDefaultOrderCap, Provenance source = {});

using Tuple = std::vector<int>;
using TupleMul = std::function<Tuple(const Tuple&, const Tuple&)>;
using TupleLabel = std::function<std::string(const Tuple&)>;

/// Breadth-first closure for groups whose elements are encoded as integer
/// tuples with a closed-form product.
GroupPtr enumerate_group(const Tuple& identity, const std::vector<Tuple>& generators, const TupleMul& mul,
                         const TupleLabel& label, std::size_t cap, Provenance source);

/// G x H on pair indices i*|H| + j; both factors are recorded in the source.
GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t cap = kDefaultOrderCap);

/// Inverse laws exhaustively; associativity on all triples up to order 256,
/// on 10^6 seeded random triples above.
bool check_group_axioms(const Group& g);

std::string cycle_notation(const std::vector<unsigned>& images);

}  // namespace nestkit
