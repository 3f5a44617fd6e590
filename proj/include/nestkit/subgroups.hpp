#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nestkit/group.hpp"
#include "nestkit/series_report.hpp"

namespace nestkit {

inline constexpr std::size_t kDefaultLatticeLimit = 512;

Subgroup trivial_subgroup(const Group& g);
Subgroup whole_group(const Group& g);

/// Least subgroup containing the given elements.
Subgroup subgroup_closure(const Group& g, std::span<const Elem> elems);
Subgroup subgroup_closure(const Group& g, const ElemSet& elems);
/// Least normal subgroup containing the given elements.
Subgroup normal_closure(const Group& g, std::span<const Elem> elems);

Subgroup intersect(const Subgroup& a, const Subgroup& b);
/// <A, B> for arbitrary subgroups.
Subgroup join(const Subgroup& a, const Subgroup& b);
/// AB where at least one factor is normal, so the product set is a subgroup.
Subgroup product(const Subgroup& a, const Subgroup& b);

bool is_normal(const Subgroup& h);

const ConjClasses& conjugacy_classes(const Group& g);
Subgroup center(const Group& g);
Subgroup centralizer(const Group& g, Elem x);

/// The set { [g,x] : x in G }.
ElemSet gamma_set(const Group& g, Elem x);
/// [g, T] = < [g,t] : t in T >.
Subgroup bracket(Elem x, const Subgroup& t);
/// [S, T] = < [s,t] : s in S, t in T >.
Subgroup bracket(const Subgroup& s, const Subgroup& t);
Subgroup derived_subgroup(const Group& g);

/// Z_N = { g : [g,G] <= N }, the preimage of Z(G/N). Throws NotNormal.
Subgroup z_over(const Subgroup& n);

SeriesReport upper_central_series(const Group& g);
SeriesReport lower_central_series(const Group& g);
bool is_nilpotent(const Group& g);

/// All normal subgroups, sorted by order then member list. Throws
/// LatticeTooLarge once more than `limit` subgroups have been found.
std::vector<Subgroup> normal_subgroups(const Group& g, std::size_t limit = kDefaultLatticeLimit);

bool is_quasi_simple(const Group& g);

/// p when n = p^k for a prime p and k >= 1.
std::optional<unsigned> prime_power_base(std::size_t n);
std::vector<unsigned> prime_divisors(std::size_t n);
/// True when |a : b| is a power of p (including 1). Requires b <= a.
bool is_p_section(const Subgroup& a, const Subgroup& b, unsigned p);
/// a/b is abelian and every element has order dividing p. Requires b normal in a.
bool is_elementary_abelian_section(const Subgroup& a, const Subgroup& b, unsigned p);
/// Exponent of a/b: least m with x^m in b for every x in a.
unsigned section_exponent(const Subgroup& a, const Subgroup& b);

/// Elements of the given subgroup, as labels, for diagnostics.
std::vector<std::string> member_labels(const Subgroup& h);

}  // namespace nestkit
