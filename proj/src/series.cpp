#include "nestkit/series.hpp"

#include <optional>
#include <string>
#include <vector>

#include "nestkit/error.hpp"
#include "nestkit/invariants.hpp"
#include "nestkit/quotient.hpp"

namespace nestkit {

namespace {

std::string term_name(const char* series, std::size_t i) { return std::string(series) + "_" + std::to_string(i); }

// [g,G] for every class, indexed by class number.
class ClassBrackets {
 public:
  explicit ClassBrackets(const Group& g) : g_(g), whole_(whole_group(g)) {}
  const Subgroup& of(Elem x) {
    const auto& cc = g_.classes();
    std::uint32_t c = cc.class_of[x];
    if (cache_.empty()) cache_.resize(cc.size());
    if (!cache_[c]) cache_[c] = bracket(cc.representatives[c], whole_);
    return *cache_[c];
  }

 private:
  const Group& g_;
  Subgroup whole_;
  std::vector<std::optional<Subgroup>> cache_;
};

Subgroup delta_step_characters(const CharacterTable& t, const Subgroup& d) {
  const Group& g = t.group();
  ElemSet acc(g.order());
  acc.set(0);
  for (std::size_t j : irr_over(t, d)) acc |= t.center(j).bits();
  return subgroup_closure(g, acc);
}

Subgroup delta_step_brackets(ClassBrackets& br, const Group& g, const Subgroup& d) {
  ElemSet acc(g.order());
  acc.set(0);
  for (const auto& cls : g.classes().classes)
    if (!(d <= br.of(cls.front())))
      for (Elem x : cls) acc.set(x);
  return subgroup_closure(g, acc);
}

void disagree(const std::string& what) { throw Error(ErrorKind::RouteDisagreement, what); }

}  // namespace

Subgroup k_of_quotient(const Subgroup& n) {
  if (n.is_trivial()) return k_subgroup(n.group());
  QuotientMap q = quotient(n.group(), n);
  return q.preimage(k_subgroup(*q.target));
}

Subgroup u_of_quotient(const Subgroup& n) {
  if (n.is_trivial()) return u_subgroup(n.group());
  QuotientMap q = quotient(n.group(), n);
  return q.preimage(u_subgroup(*q.target));
}

SeriesReport k_series(const Group& g) {
  SeriesReport s;
  s.kind = SeriesKind::K;
  Subgroup cur = trivial_subgroup(g);
  while (extend_series(s, cur)) cur = k_of_quotient(s.terms.back());
  return s;
}

SeriesReport u_series(const Group& g) {
  SeriesReport s;
  s.kind = SeriesKind::U;
  SeriesReport k = k_series(g);
  Subgroup cur = trivial_subgroup(g);
  while (extend_series(s, cur)) cur = u_of_quotient(s.terms.back());
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (!(s.terms[i] <= k.at(i))) throw Error(ErrorKind::Internal, "U_" + std::to_string(i) + " is not inside K_" + std::to_string(i));
    if (s.terms[i] < k.at(i) && !(s.at(i + 1) == s.terms[i]))
      throw Error(ErrorKind::Internal, "U_" + std::to_string(i) + " < K_" + std::to_string(i) + " but the U-series moves on");
  }
  return s;
}

SeriesReport delta_series(const Group& g, const CharacterTable* t) {
  SeriesReport s;
  s.kind = SeriesKind::Delta;
  Subgroup whole = whole_group(g);
  ClassBrackets br(g);
  Subgroup cur = whole;
  while (extend_series(s, cur)) {
    Subgroup d = bracket(s.terms.back(), whole);
    cur = delta_step_brackets(br, g, d);
    if (t && !(delta_step_characters(*t, d) == cur))
      disagree("delta routes differ at " + term_name("delta", s.terms.size() + 1));
  }
  return s;
}

SeriesReport epsilon_series(const Group& g, const SeriesReport* delta) {
  SeriesReport s;
  s.kind = SeriesKind::Epsilon;
  Subgroup whole = whole_group(g);
  Subgroup cur = whole;
  while (extend_series(s, cur)) cur = v_rel(bracket(s.terms.back(), whole));
  if (!delta) return s;
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Internal, what); };
  for (std::size_t i = 1; i < s.terms.size(); ++i) {
    // terms[i] is epsilon_{i+1}
    if (!(delta->at(i) <= s.terms[i])) fail(term_name("delta", i + 1) + " is not inside " + term_name("epsilon", i + 1));
    if (!(s.terms[i] <= s.terms[i - 1])) fail(term_name("epsilon", i + 1) + " is not inside " + term_name("epsilon", i));
    Subgroup lower = bracket(s.terms[i], whole);
    Subgroup upper = bracket(s.terms[i - 1], whole);
    if (lower < upper) {
      if (!(delta->at(i) == s.terms[i])) fail(term_name("delta", i + 1) + " differs from " + term_name("epsilon", i + 1));
      if (!(upper <= u_of_quotient(lower))) fail("[epsilon_i,G] is not inside U(G/[epsilon_{i+1},G]) at i = " + std::to_string(i));
    }
  }
  return s;
}

SeriesBundle all_series(const Group& g, const CharacterTable* t) {
  SeriesBundle b;
  b.k = k_series(g);
  b.u = u_series(g);
  b.delta = delta_series(g, t);
  b.epsilon = epsilon_series(g, &b.delta);
  return b;
}

namespace {

// When the lattice is too large, a false verdict can still be certified by
// one proper N with trivial K(G/N) (resp. U(G/N)); candidates are the
// normal closures of single classes and the terms of the central series.
// nullopt when no such N turns up.
std::optional<bool> all_proper_quotients(const Group& g, std::size_t limit, Subgroup (*of_quotient)(const Subgroup&)) {
  std::vector<Subgroup> lattice;
  try {
    lattice = normal_subgroups(g, limit);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::LatticeTooLarge) throw;
    std::vector<Subgroup> cands{trivial_subgroup(g)};
    for (const SeriesReport& s : {upper_central_series(g), lower_central_series(g)})
      cands.insert(cands.end(), s.terms.begin(), s.terms.end());
    for (Elem x : g.classes().representatives) cands.push_back(normal_closure(g, std::span<const Elem>(&x, 1)));
    for (const auto& n : cands)
      if (!n.is_whole() && of_quotient(n) == n) return false;
    return std::nullopt;
  }
  for (const auto& n : lattice)
    if (!n.is_whole() && of_quotient(n) == n) return false;
  return true;
}

void settle(RouteVerdict& v, const char* what) {
  auto it = v.routes.begin();
  v.value = it->second;
  for (const auto& [name, value] : v.routes)
    if (value != v.value) {
      std::string msg = std::string(what) + " routes disagree:";
      for (const auto& [n2, v2] : v.routes) msg += " " + n2 + "=" + (v2 ? "true" : "false");
      disagree(msg);
    }
}

}  // namespace

RouteVerdict is_nested(const Group& g, const CharacterTable* t, const SeriesBundle* series, std::size_t lattice_limit) {
  std::optional<SeriesBundle> own;
  if (!series) series = &own.emplace(all_series(g, t));
  RouteVerdict v;
  if (t) {
    auto [nested, chain] = is_nested_direct(*t);
    v.routes["chain"] = nested;
    v.chain = std::move(chain);
  }
  v.routes["K-series"] = series->k.terminal().is_whole();
  v.routes["delta"] = series->delta.terminal().is_trivial();
  if (auto q = all_proper_quotients(g, lattice_limit, &k_of_quotient))
    v.routes["quotients"] = *q;
  else
    v.lattice_route_skipped = true;
  settle(v, "nested");
  if (v.value && v.chain) {
    const auto& x = v.chain->terms;
    const std::size_t n = x.size() - 1;
    Subgroup whole = whole_group(g);
    v.identities["X_n=Z(G)"] = x[n] == center(g);
    bool k_ok = true, d_ok = true;
    for (std::size_t i = 0; i <= n; ++i) k_ok = k_ok && series->k.at(i) == bracket(x[n - i], whole);
    for (std::size_t i = 1; i <= n + 1; ++i) d_ok = d_ok && series->delta.at(i - 1) == x[i - 1];
    v.identities["K_i=[X_{n-i},G]"] = k_ok;
    v.identities["delta_i=X_{i-1}"] = d_ok;
  }
  return v;
}

RouteVerdict is_nested_gvz(const Group& g, const CharacterTable* t, const SeriesBundle* series,
                           std::size_t lattice_limit) {
  std::optional<SeriesBundle> own;
  if (!series) series = &own.emplace(all_series(g, t));
  RouteVerdict v;
  if (t) {
    auto [nested, chain] = is_nested_direct(*t);
    v.routes["direct"] = nested && is_gvz(*t);
    v.chain = std::move(chain);
  }
  v.routes["U-series"] = series->u.terminal().is_whole();
  v.routes["epsilon"] = series->epsilon.terminal().is_trivial();
  if (auto q = all_proper_quotients(g, lattice_limit, &u_of_quotient))
    v.routes["quotients"] = *q;
  else
    v.lattice_route_skipped = true;
  settle(v, "nested GVZ");
  if (v.value && v.chain) {
    const auto& x = v.chain->terms;
    const std::size_t n = x.size() - 1;
    Subgroup whole = whole_group(g);
    bool u_ok = true, e_ok = true;
    for (std::size_t i = 0; i <= n; ++i) {
      u_ok = u_ok && series->u.at(i) == bracket(x[n - i], whole);
      e_ok = e_ok && series->epsilon.at(i) == x[i];
    }
    v.identities["U_i=[X_{n-i},G]"] = u_ok;
    v.identities["epsilon_{i+1}=X_i"] = e_ok;
  }
  if (!v.value) v.chain.reset();
  return v;
}

}  // namespace nestkit
