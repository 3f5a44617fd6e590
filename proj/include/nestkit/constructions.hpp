#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nestkit/group.hpp"

namespace nestkit {

GroupPtr cyclic(unsigned n, std::size_t cap = kDefaultOrderCap);
GroupPtr elementary_abelian(unsigned p, unsigned rank, std::size_t cap = kDefaultOrderCap);
/// Direct product of cyclic groups of the given orders.
GroupPtr abelian(const std::vector<unsigned>& orders, std::size_t cap = kDefaultOrderCap);
/// Dihedral group of order 2n, generated by r = (1,0) and s = (0,1).
GroupPtr dihedral(unsigned n, std::size_t cap = kDefaultOrderCap);
/// Dicyclic group of order 4n; generalized quaternion when n is a power of 2.
GroupPtr dicyclic(unsigned n, std::size_t cap = kDefaultOrderCap);
/// Generalized quaternion group of the given order (a power of 2, at least 8).
GroupPtr quaternion(unsigned order, std::size_t cap = kDefaultOrderCap);
/// Semidihedral group of the given order (a power of 2, at least 16).
GroupPtr semidihedral(unsigned order, std::size_t cap = kDefaultOrderCap);
GroupPtr symmetric(unsigned n, std::size_t cap = kDefaultOrderCap);
GroupPtr alternating(unsigned n, std::size_t cap = kDefaultOrderCap);

enum class ExtraspecialType { Plus, Minus };

/// Extraspecial group of order p^(1+2n). For odd p, Plus has exponent p and
/// Minus exponent p^2; for p = 2 the types are those of D8 and Q8 central
/// products.
GroupPtr extraspecial(unsigned p, unsigned n, ExtraspecialType type, std::size_t cap = kDefaultOrderCap);

/// Upper unitriangular 3x3 matrices over F_q. Supported fields: prime q and
/// q = 4, 8, 9, built on x^2+x+1, x^3+x+1 and x^2+x+2. Throws
/// UnsupportedField otherwise.
GroupPtr heisenberg(unsigned q, std::size_t cap = kDefaultOrderCap);

/// C_p wr C_p acting on p^2 points.
GroupPtr wreath_cpcp(unsigned p, std::size_t cap = kDefaultOrderCap);

GroupPtr sl2(unsigned p, std::size_t cap = kDefaultOrderCap);
GroupPtr gl2(unsigned p, std::size_t cap = kDefaultOrderCap);
GroupPtr psl2(unsigned p, std::size_t cap = kDefaultOrderCap);

/// Builds a named family member. Parameters are the tokens that follow the
/// name in a recipe such as "dihedral:4" or "extraspecial:2:1:minus".
/// Throws UnknownFamily for unknown names or malformed parameters.
GroupPtr standard_family(std::string_view name, const std::vector<std::string>& params,
                         std::size_t cap = kDefaultOrderCap);

/// Result of the central-quotient construction (H x K)/N with
/// N = <(x_i, y_i)>.
struct Section8Group {
  GroupPtr group;
  /// H x K before the quotient.
  GroupPtr product;
  unsigned p = 0;
  unsigned l = 0;
  /// Images in `group` of X x Y (i.e. M/N) and, for the extended form, of
  /// N<(u,v)> (i.e. L/N).
  std::vector<Elem> m_members;
  std::vector<Elem> l_members;
  /// Image of Z(H) x Z(K).
  std::vector<Elem> central_members;
  /// |U(G)| = p^l.
  std::size_t expected_u_order = 0;
};

/// Validates every hypothesis of the construction and throws
/// HypothesisViolated naming the first failure: H and K are p-groups for one
/// prime, x_i in U(H), y_i in U(K), |<xs>| = |<ys>| = p^l,
/// p^l <= |U(H)|, |U(K)| and p^l < |Z(H)|, |H'|, |Z(K)|, |K'|.
/// With `extension` = (u, v), also requires u in U(H) \ <xs>,
/// v in U(K) \ <ys>, and records L/N = N<(u,v)>/N.
Section8Group section8_quotient(const GroupPtr& h, const GroupPtr& k, const std::vector<Elem>& xs,
                                const std::vector<Elem>& ys,
                                std::optional<std::pair<Elem, Elem>> extension = std::nullopt,
                                std::size_t cap = kDefaultOrderCap);

/// section8_quotient with H = K = heisenberg(q), the first l elements of a
/// basis of U(H) chosen in index order, and, when `extended`, the next basis
/// element as u = v.
Section8Group section8_heisenberg(unsigned q, unsigned l, bool extended, std::size_t cap = kDefaultOrderCap);

/// Group file text:
///
///     # comment
///     perm <degree>        one generator per line in 1-based cycle notation
///     matmod <p> <dim>     one generator per line, dim*dim entries row-major
///     table <order>        one row per line, 0-based entries; row 0 is the identity
///
/// Blank lines and text after '#' are ignored. Throws ParseError with the
/// line and column of the offending token.
GroupPtr parse_group_text(std::string_view text, std::size_t cap = kDefaultOrderCap);
GroupPtr parse_group_file(const std::filesystem::path& path, std::size_t cap = kDefaultOrderCap);

/// Hex SHA-1 of a byte string.
std::string sha1_hex(std::string_view bytes);

}  // namespace nestkit
