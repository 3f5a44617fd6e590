#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nestkit/chartab.hpp"
#include "nestkit/group.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

/// K(G): G when abelian, otherwise the intersection of [g,G] over the
/// noncentral elements.
Subgroup k_subgroup(const Group& g);
/// Intersection of ker(chi) over the rows with Z(chi) > Z(G).
/// Throws AbelianInput for abelian groups.
Subgroup k_via_characters(const CharacterTable& t);

/// V(G|M) without characters: M together with every g outside M that is not
/// conjugate to all of gM, i.e. M is not contained in gamma(g). Throws
/// NotNormal.
Subgroup v_rel(const Subgroup& m);
/// V(G|M) as the product of V(chi) over Irr(G|M).
Subgroup v_rel_characters(const CharacterTable& t, const Subgroup& m);
/// V(G|H) <= N, decided without building V(G|H).
bool v_rel_within(const Subgroup& h, const Subgroup& n);

/// U(G|N), class by class: g lies in it iff V(G|<g>^G) <= N. Throws NotNormal.
Subgroup u_rel(const Subgroup& n);
/// U(G|N) as the product of all normal H in `lattice` with V(G|H) <= N.
Subgroup u_rel_by_lattice(const Subgroup& n, const std::vector<Subgroup>& lattice);
/// U(G|N) as the intersection of ker(chi) over the rows with V(chi) not
/// contained in N (G when there are none).
Subgroup u_rel_characters(const CharacterTable& t, const Subgroup& n);

/// The ways of computing U(G) = U(G|Z(G)).
struct URoutes {
  Subgroup definition;                 // u_rel(Z(G))
  Subgroup via_d;                      // intersection of [g, D_G(g)]
  Subgroup via_gamma;                  // largest normal subgroup inside the gamma sets
  std::optional<Subgroup> via_kernels;  // intersection of ker(chi) with V(chi) > Z(G)

  bool agree() const;
};

URoutes u_routes(const Group& g, const CharacterTable* t = nullptr);
/// U(G); every available route is computed and compared. Throws
/// RouteDisagreement when they differ.
Subgroup u_subgroup(const Group& g, const CharacterTable* t = nullptr);

/// Largest normal subgroup of G contained in the set s.
Subgroup largest_normal_inside(const Group& g, const ElemSet& s);

/// D_G(g) = { x : [g,x] in Z(G) }.
Subgroup d_sub(const Group& g, Elem x);

/// Every g outside N has M inside gamma(g). Requires M <= N, both normal;
/// cross-checked against M <= U(G|N).
bool is_camina_triple(const Subgroup& n, const Subgroup& m);
bool is_camina_pair(const Subgroup& n);

/// Minimal members of { N normal : N not central }. Throws AbelianInput.
std::vector<Subgroup> minimal_noncentral_normals(const Group& g);
/// Least size of a noncentral class. Throws AbelianInput.
std::size_t minimal_class_size(const Group& g);

struct InvariantBundle {
  const Group* group = nullptr;
  Subgroup K, U, Z, Gprime, Z2, ZK, ZU;
  /// Rows with Z(chi) > Z(G); empty without a table.
  std::vector<std::size_t> X_set;
  std::map<std::string, bool> route_agreement;
};

/// All of the above for one group. Route disagreements are recorded rather
/// than thrown.
InvariantBundle compute_invariants(const Group& g, const CharacterTable* t = nullptr);

}  // namespace nestkit
