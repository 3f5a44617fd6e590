#pragma once

#include <map>
#include <optional>
#include <string>

#include "nestkit/chartab.hpp"
#include "nestkit/group.hpp"
#include "nestkit/series_report.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

/// K_0 = 1, K_{i+1}/K_i = K(G/K_i). Terms are subgroups of G.
SeriesReport k_series(const Group& g);

/// U_0 = 1, U_{i+1}/U_i = U(G/U_i). Also checks U_i <= K_i and that
/// U_i < K_i forces U_{i+1} = U_i; throws Internal if either fails.
SeriesReport u_series(const Group& g);

/// delta_1 = G, delta_{i+1} = product of Z(chi) over Irr(G|[delta_i,G]).
/// A character-free route takes the subgroup generated by the g with
/// [delta_i,G] not inside [g,G]; it is the only route without a table.
/// Throws RouteDisagreement when the routes differ. terms[i] is delta_{i+1}.
SeriesReport delta_series(const Group& g, const CharacterTable* t = nullptr);

/// epsilon_1 = G, epsilon_{i+1} = V(G|[epsilon_i,G]). terms[i] is
/// epsilon_{i+1}. Given the delta series, also checks
/// delta_{i+1} <= epsilon_{i+1} <= epsilon_i, and that
/// [epsilon_{i+1},G] < [epsilon_i,G] implies delta_{i+1} = epsilon_{i+1} and
/// [epsilon_i,G] <= U(G | [epsilon_{i+1},G]) modulo [epsilon_{i+1},G];
/// throws Internal if any fails.
SeriesReport epsilon_series(const Group& g, const SeriesReport* delta = nullptr);

/// K(G/N) and U(G/N), returned as preimages in G.
Subgroup k_of_quotient(const Subgroup& n);
Subgroup u_of_quotient(const Subgroup& n);

/// Outcome of a nestedness decision. `routes` maps route names to their
/// verdicts; all must agree.
struct RouteVerdict {
  bool value = false;
  std::map<std::string, bool> routes;
  /// The route over all proper normal subgroups was not run because the
  /// lattice is over the limit and no candidate N (central series terms,
  /// normal closures of single classes) gave a false verdict.
  bool lattice_route_skipped = false;
  /// Chain of centers X_0 > ... > X_n when nested.
  std::optional<SeriesReport> chain;
  /// Series identities checked when the verdict is true, e.g. "K_i=[X_{n-i},G]".
  std::map<std::string, bool> identities;
};

struct SeriesBundle {
  SeriesReport k, u, delta, epsilon;
};

SeriesBundle all_series(const Group& g, const CharacterTable* t);

/// Routes: "chain" (quasi-kernels totally ordered, needs the table),
/// "K-series" (K_inf = G), "delta" (delta_inf = 1) and "quotients"
/// (K(G/N) > 1 for every proper normal N). Throws RouteDisagreement.
RouteVerdict is_nested(const Group& g, const CharacterTable* t, const SeriesBundle* series = nullptr,
                       std::size_t lattice_limit = kDefaultLatticeLimit);

/// Routes: "direct" (nested and GVZ from the table), "U-series"
/// (U_inf = G), "epsilon" (epsilon_inf = 1) and "quotients" (U(G/N) > 1 for
/// every proper normal N). "direct" needs the table. Throws
/// RouteDisagreement.
RouteVerdict is_nested_gvz(const Group& g, const CharacterTable* t, const SeriesBundle* series = nullptr,
                           std::size_t lattice_limit = kDefaultLatticeLimit);

}  // namespace nestkit
