#include "nestkit/invariants.hpp"

#include <algorithm>

#include "nestkit/error.hpp"

namespace nestkit {

namespace {

void require_normal(const Subgroup& n, const char* who) {
  if (!is_normal(n)) throw Error(ErrorKind::NotNormal, std::string(who) + ": subgroup is not normal");
}

bool class_inside(const std::vector<Elem>& cls, const ElemSet& s) {
  return std::all_of(cls.begin(), cls.end(), [&](Elem x) { return s.test(x); });
}

Subgroup ncl_of(const Group& g, Elem x) {
  Elem one[] = {x};
  return normal_closure(g, one);
}

}  // namespace

Subgroup k_subgroup(const Group& g) {
  if (g.is_abelian()) return whole_group(g);
  const Subgroup z = center(g);
  ElemSet acc(g.order());
  acc.set();
  for (Elem rep : g.classes().representatives) {
    if (z.contains(rep)) continue;
    const ElemSet& gam = g.gamma(rep);
    if (acc.is_subset_of(gam)) continue;
    acc &= subgroup_closure(g, gam).bits();
  }
  return subgroup_closure(g, acc);
}

Subgroup k_via_characters(const CharacterTable& t) {
  const Group& g = t.group();
  if (g.is_abelian()) throw Error(ErrorKind::AbelianInput, "k_via_characters: group is abelian");
  const Subgroup z = center(g);
  ElemSet acc(g.order());
  acc.set();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (z < t.center(i)) acc &= t.kernel(i).bits();
  return subgroup_closure(g, acc);
}

Subgroup v_rel(const Subgroup& m) {
  require_normal(m, "v_rel");
  const Group& g = m.group();
  if (m.is_trivial()) return m;
  const auto& cc = g.classes();
  ElemSet s = m.bits();
  for (std::size_t c = 0; c < cc.size(); ++c) {
    Elem rep = cc.representatives[c];
    if (m.contains(rep)) continue;
    if (!m.bits().is_subset_of(g.gamma(rep)))
      for (Elem x : cc.classes[c]) s.set(x);
  }
  return subgroup_closure(g, s);
}

Subgroup v_rel_characters(const CharacterTable& t, const Subgroup& m) {
  const Group& g = t.group();
  ElemSet s(g.order());
  s.set(0);
  for (std::size_t i : irr_over(t, m)) s |= t.vanishing_off(i).bits();
  return subgroup_closure(g, s);
}

bool v_rel_within(const Subgroup& h, const Subgroup& n) {
  if (!(h <= n)) return false;
  const Group& g = h.group();
  for (Elem rep : g.classes().representatives)
    if (!n.contains(rep) && !h.bits().is_subset_of(g.gamma(rep))) return false;
  return true;
}

Subgroup u_rel(const Subgroup& n) {
  require_normal(n, "u_rel");
  const Group& g = n.group();
  const auto& cc = g.classes();
  // g is in U(G|N) iff <g>^G lies in N and in gamma(x) for every x outside N.
  ElemSet allowed = n.bits();
  for (Elem rep : cc.representatives)
    if (!n.contains(rep)) allowed &= g.gamma(rep);
  ElemSet members(g.order());
  for (std::size_t c = 0; c < cc.size(); ++c) {
    Elem rep = cc.representatives[c];
    if (members.test(rep) || !class_inside(cc.classes[c], allowed)) continue;
    Subgroup h = ncl_of(g, rep);
    if (h.bits().is_subset_of(allowed)) members |= h.bits();
  }
  Subgroup u = subgroup_closure(g, members);
  if (u.bits() != members) throw Error(ErrorKind::Internal, "u_rel: member set is not a subgroup");
  return u;
}

Subgroup u_rel_by_lattice(const Subgroup& n, const std::vector<Subgroup>& lattice) {
  const Group& g = n.group();
  ElemSet acc(g.order());
  acc.set(0);
  for (const auto& h : lattice)
    if (v_rel_within(h, n)) acc |= h.bits();
  return subgroup_closure(g, acc);
}

Subgroup u_rel_characters(const CharacterTable& t, const Subgroup& n) {
  const Group& g = t.group();
  ElemSet acc(g.order());
  acc.set();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!(t.vanishing_off(i) <= n)) acc &= t.kernel(i).bits();
  return subgroup_closure(g, acc);
}

bool URoutes::agree() const {
  if (!(definition == via_d) || !(definition == via_gamma)) return false;
  return !via_kernels || *via_kernels == definition;
}

Subgroup largest_normal_inside(const Group& g, const ElemSet& s) {
  const auto& cc = g.classes();
  std::vector<std::optional<Subgroup>> closures(cc.size());
  ElemSet cur = s;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < cc.size(); ++c) {
      Elem rep = cc.representatives[c];
      if (!cur.test(rep)) continue;
      bool keep = class_inside(cc.classes[c], cur);
      if (keep) {
        if (!closures[c]) closures[c] = ncl_of(g, rep);
        keep = closures[c]->bits().is_subset_of(cur);
      }
      if (!keep) {
        for (Elem x : cc.classes[c]) cur.reset(x);
        changed = true;
      }
    }
  }
  cur.set(0);
  Subgroup h = subgroup_closure(g, cur);
  if (h.bits() != cur) throw Error(ErrorKind::Internal, "largest_normal_inside: no largest normal subgroup");
  return h;
}

Subgroup d_sub(const Group& g, Elem x) {
  const Subgroup z = center(g);
  ElemSet bits(g.order());
  for (std::size_t y = 0; y < g.order(); ++y)
    if (z.contains(g.comm(x, static_cast<Elem>(y)))) bits.set(y);
  return subgroup_closure(g, bits);
}

URoutes u_routes(const Group& g, const CharacterTable* t) {
  if (g.is_abelian()) {
    Subgroup w = whole_group(g);
    URoutes r{w, w, w, std::nullopt};
    if (t) r.via_kernels = w;
    return r;
  }
  const Subgroup z = center(g);
  const std::size_t n = g.order();

  // [g, D_G(g)] over every noncentral g. The map x -> [g,x] on D_G(g) is a
  // homomorphism into Z(G), so its image set is already a subgroup.
  ElemSet via_d(n);
  via_d.set();
  ElemSet img(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto x = static_cast<Elem>(a);
    if (z.contains(x)) continue;
    img.reset();
    for (std::size_t b = 0; b < n; ++b) {
      Elem c = g.comm(x, static_cast<Elem>(b));
      if (z.contains(c)) img.set(c);
    }
    if (via_d.is_subset_of(img)) continue;
    via_d &= subgroup_closure(g, img).bits();
  }

  ElemSet inside(n);
  inside.set();
  for (std::size_t a = 0; a < n; ++a)
    if (!z.contains(static_cast<Elem>(a))) inside &= g.gamma(static_cast<Elem>(a));

  URoutes r{u_rel(z), subgroup_closure(g, via_d), largest_normal_inside(g, inside), std::nullopt};
  if (t) {
    ElemSet acc(n);
    acc.set();
    for (std::size_t i = 0; i < t->size(); ++i)
      if (z < t->vanishing_off(i)) acc &= t->kernel(i).bits();
    r.via_kernels = subgroup_closure(g, acc);
  }
  return r;
}

Subgroup u_subgroup(const Group& g, const CharacterTable* t) {
  URoutes r = u_routes(g, t);
  if (!r.agree()) throw Error(ErrorKind::RouteDisagreement, "u_subgroup: characterizations of U(G) differ");
  return r.definition;
}

bool is_camina_triple(const Subgroup& n, const Subgroup& m) {
  require_normal(n, "is_camina_triple");
  require_normal(m, "is_camina_triple");
  if (!(m <= n)) throw Error(ErrorKind::PreconditionViolated, "is_camina_triple: M is not contained in N");
  const Group& g = n.group();
  bool triple = true;
  for (Elem rep : g.classes().representatives)
    if (!n.contains(rep) && !m.bits().is_subset_of(g.gamma(rep))) {
      triple = false;
      break;
    }
  if (triple != (m <= u_rel(n)))
    throw Error(ErrorKind::RouteDisagreement, "is_camina_triple: commutator test and U(G|N) disagree");
  return triple;
}

bool is_camina_pair(const Subgroup& n) { return is_camina_triple(n, n); }

std::vector<Subgroup> minimal_noncentral_normals(const Group& g) {
  if (g.is_abelian()) throw Error(ErrorKind::AbelianInput, "minimal_noncentral_normals: group is abelian");
  // A minimal noncentral normal subgroup is the normal closure of any of its
  // noncentral elements.
  const Subgroup z = center(g);
  std::vector<Subgroup> cands;
  for (Elem rep : g.classes().representatives) {
    if (z.contains(rep)) continue;
    Subgroup h = ncl_of(g, rep);
    if (std::none_of(cands.begin(), cands.end(), [&](const Subgroup& c) { return c == h; }))
      cands.push_back(std::move(h));
  }
  std::vector<Subgroup> out;
  for (const auto& h : cands)
    if (std::none_of(cands.begin(), cands.end(), [&](const Subgroup& c) { return c < h; })) out.push_back(h);
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::lexicographical_compare(a.members().begin(), a.members().end(), b.members().begin(),
                                        b.members().end());
  });
  return out;
}

std::size_t minimal_class_size(const Group& g) {
  if (g.is_abelian()) throw Error(ErrorKind::AbelianInput, "minimal_class_size: group is abelian");
  std::size_t best = g.order();
  for (const auto& cls : g.classes().classes)
    if (cls.size() > 1) best = std::min(best, cls.size());
  return best;
}

InvariantBundle compute_invariants(const Group& g, const CharacterTable* t) {
  Subgroup z = center(g);
  Subgroup k = k_subgroup(g);
  URoutes ur = u_routes(g, t);
  Subgroup z2 = z_over(z);
  Subgroup zk = z_over(k);
  Subgroup zu = z_over(ur.definition);
  InvariantBundle b{&g, k, ur.definition, z, derived_subgroup(g), z2, zk, zu, {}, {}};
  b.route_agreement["U:D"] = ur.via_d == ur.definition;
  b.route_agreement["U:gamma"] = ur.via_gamma == ur.definition;
  if (t) {
    b.route_agreement["U:kernels"] = *ur.via_kernels == ur.definition;
    for (std::size_t i = 0; i < t->size(); ++i)
      if (z < t->center(i)) b.X_set.push_back(i);
    if (!g.is_abelian()) b.route_agreement["K:characters"] = k_via_characters(*t) == k;
  }
  return b;
}

}  // namespace nestkit
