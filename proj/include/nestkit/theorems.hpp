#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nestkit/chartab.hpp"
#include "nestkit/group.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

struct TheoremVerdict {
  std::string theorem_id;
  /// Hypotheses met. `holds` is meaningful only when this is set.
  bool applicable = false;
  bool holds = false;
  /// Not evaluated because the check needs the character table or the
  /// normal lattice and that was unavailable.
  bool skipped = false;
  /// Checks of statements the theory does not claim; failures are logged
  /// and never stop the suite.
  bool exploratory = false;
  /// Counterexample on failure, or a found witness for existential claims.
  std::string witness;

  friend bool operator==(const TheoremVerdict&, const TheoremVerdict&) = default;
};

struct SuiteOptions {
  std::size_t lattice_limit = kDefaultLatticeLimit;
  /// Run only this theorem id.
  std::optional<std::string> only;
};

/// Every theorem id, in suite order.
const std::vector<std::string>& theorem_ids();
bool is_theorem_id(std::string_view id);

/// Runs the theorem checks on one group. Quantifiers over normal subgroups
/// range over the full lattice; over elements, over all elements or class
/// representatives. The suite stops at the first failing non-exploratory
/// verdict, which is then the last entry. `t` may be null, in which case the
/// character-theoretic checks are skipped.
std::vector<TheoremVerdict> verify_theorem_suite(const Group& g, const CharacterTable* t,
                                                 const SuiteOptions& options = {});

/// The first applicable non-exploratory verdict with holds = false.
const TheoremVerdict* first_failure(const std::vector<TheoremVerdict>& verdicts);

}  // namespace nestkit
