#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "nestkit/cyclotomic.hpp"
#include "nestkit/group.hpp"
#include "nestkit/series_report.hpp"

namespace nestkit {

struct Character {
  std::size_t id = 0;
  unsigned degree = 0;
  /// One value per conjugacy class, in the group's class order.
  std::vector<CyclotomicInt> values;
  /// Per class: j when chi(g) = degree * zeta_e^j, otherwise -1.
  std::vector<int> scalar_root;
};

/// Irreducible characters computed by Dixon-Schneider. Rows are sorted by
/// degree; within a degree the principal character comes first, then rows in
/// descending lexicographic order of their coefficient vectors.
///
/// Kernels, quasi-kernels Z(chi) and vanishing-off subgroups V(chi) are
/// computed for every row on construction.
class CharacterTable {
 public:
  const Group& group() const { return *group_; }
  const ConjClasses& classes() const { return group_->classes(); }
  std::size_t size() const { return rows_.size(); }
  const Character& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Character>& rows() const { return rows_; }
  /// Exponent of the group; all values lie in Z[zeta_e].
  unsigned exponent() const { return e_; }
  /// The prime used for the modular computation.
  std::uint64_t modulus() const { return p_; }
  /// power_map(k)[c] = class of g^k for g in class c, for k dividing e.
  const std::vector<std::uint32_t>& power_map(unsigned k) const { return power_maps_.at(k); }
  const std::map<unsigned, std::vector<std::uint32_t>>& power_maps() const { return power_maps_; }

  const Subgroup& kernel(std::size_t i) const { return kernels_[i]; }
  const Subgroup& center(std::size_t i) const { return centers_[i]; }
  const Subgroup& vanishing_off(std::size_t i) const { return vanishing_[i]; }

 private:
  friend CharacterTable character_table(const Group& g);
  CharacterTable() = default;

  const Group* group_ = nullptr;
  unsigned e_ = 1;
  std::uint64_t p_ = 0;
  std::vector<Character> rows_;
  std::map<unsigned, std::vector<std::uint32_t>> power_maps_;
  std::vector<Subgroup> kernels_, centers_, vanishing_;
};

/// Throws PrimeSearchFailed if no prime p = 1 (mod e) with
/// 2*ceil(sqrt|G|) < p < 2^31 exists.
CharacterTable character_table(const Group& g);

/// The Dixon-Schneider modulus for a group of the given order and exponent.
std::uint64_t dixon_prime(std::size_t order, unsigned exponent);

/// {g : chi(g) = chi(1)}, read off the values.
Subgroup kernel_of(const CharacterTable& t, std::size_t chi);
/// Z(chi), computed group-theoretically as Z_{ker chi}.
Subgroup center_of(const CharacterTable& t, std::size_t chi);
/// Z(chi) read off the values as {g : |chi(g)| = chi(1)}.
Subgroup center_from_values(const CharacterTable& t, std::size_t chi);
Subgroup vanishing_off_char(const CharacterTable& t, std::size_t chi);

/// Row indices of Irr(G|N), the rows whose kernel does not contain N.
/// Throws NotNormal.
std::vector<std::size_t> irr_over(const CharacterTable& t, const Subgroup& n);
/// Row indices whose kernel contains N: the inflations of Irr(G/N).
std::vector<std::size_t> irr_of_quotient(const CharacterTable& t, const Subgroup& n);

/// V(chi) = Z(chi) = N. Requires N normal and N <= Z(chi); throws
/// PreconditionViolated otherwise. When N = Z(G) and the answer is true,
/// also checks chi(1)^2 = |G : Z(G)| and throws Internal if it fails.
bool is_fully_ramified(const CharacterTable& t, std::size_t chi, const Subgroup& n);

bool is_gvz(const CharacterTable& t);
bool is_vz(const CharacterTable& t);
/// Nestedness of the quasi-kernels. When nested, the chain of centers
/// X_0 = G > X_1 > ... > X_n is returned with kind ChainOfCenters.
std::pair<bool, std::optional<SeriesReport>> is_nested_direct(const CharacterTable& t);
/// The same predicates for G/N, evaluated on the rows with N <= ker.
/// Returned subgroups are preimages in G.
bool is_gvz_over(const CharacterTable& t, const Subgroup& n);
std::pair<bool, std::optional<SeriesReport>> is_nested_over(const CharacterTable& t, const Subgroup& n);

bool is_extraspecial(const Group& g);
bool is_semi_extraspecial(const Group& g);

struct OrthogonalityReport {
  bool rows_ok = true;
  bool columns_ok = true;
  bool degrees_ok = true;
  bool square = true;
  bool ok() const { return rows_ok && columns_ok && degrees_ok && square; }
};

/// Exact row and column orthogonality and sum of squared degrees.
OrthogonalityReport check_orthogonality(const CharacterTable& t);

}  // namespace nestkit
