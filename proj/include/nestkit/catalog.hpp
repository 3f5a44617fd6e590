#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nestkit/chartab.hpp"
#include "nestkit/group.hpp"

namespace nestkit {

using InvariantValue = std::variant<bool, std::uint64_t>;

std::string to_string(const InvariantValue& v);

struct Expectation {
  InvariantValue value;
  /// "paper", "derived" or "trivial".
  std::string provenance;
};

struct CatalogEntry {
  std::string name;
  /// See build_recipe.
  std::string recipe;
  std::map<std::string, Expectation> expected;
};

/// Recipes:
///
///     family:<name>[:<param>...]   standard_family
///     section8:<q>:<l>             section8_heisenberg(q, l), plain
///     section8x:<q>:<l>            the same with the extension element
///     file:<path>                  group file, relative to `base_dir`
///     <recipe> * <recipe> ...      direct product, left to right
///
/// Throws UnknownFamily for an unrecognised recipe and OrderCapExceeded.
GroupPtr build_recipe(std::string_view recipe, std::size_t cap = kDefaultOrderCap,
                      const std::filesystem::path& base_dir = {});

/// Invariant names understood in `expected`:
///   order, abelian, |Z|, |G'|, |K|, |U|, |V|, nested, nested_gvz,
///   semi_extraspecial, U<Z, Z_U=Z, Z(chi)>Z for all chi
/// The last needs the table.
const std::vector<std::string>& invariant_names();

/// Computes the named invariants. Names needing the table are left out when
/// `t` is null; unknown names throw PreconditionViolated.
std::map<std::string, InvariantValue> observe_invariants(const Group& g, const CharacterTable* t,
                                                         const std::vector<std::string>& names);

struct ExpectationMismatch {
  std::string invariant;
  InvariantValue expected;
  InvariantValue observed;
  std::string provenance;
};

std::vector<ExpectationMismatch> check_expectations(const CatalogEntry& e, const Group& g, const CharacterTable* t);

/// Named groups with their expected invariants, then every group of order at
/// most 63 that is a direct product of family members, one per isomorphism
/// type, in order of size. Deterministic.
std::vector<CatalogEntry> default_catalog();

/// Manifest JSON: {"schema": "nestkit-catalog/1", "entries": [{"name",
/// "recipe", "expected": {inv: {"value", "provenance"}}}]}.
std::string catalog_to_json(const std::vector<CatalogEntry>& entries);
/// Throws ParseError on malformed JSON or a missing field.
std::vector<CatalogEntry> catalog_from_json(std::string_view text);
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& path);

}  // namespace nestkit
