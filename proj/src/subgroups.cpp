#include "nestkit/subgroups.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nestkit/error.hpp"
#include "nestkit/quotient.hpp"

namespace nestkit {

namespace {

// Extends a closed set (elts/bits, closed under right multiplication by gens)
// by one new generator.
void adjoin(const Group& g, std::vector<Elem>& elts, ElemSet& bits, std::vector<Elem>& gens, Elem c) {
  gens.push_back(c);
  const std::size_t old = elts.size();
  for (std::size_t i = 0; i < old; ++i) {
    Elem y = g.mul(elts[i], c);
    if (!bits.test(y)) {
      bits.set(y);
      elts.push_back(y);
    }
  }
  for (std::size_t i = old; i < elts.size(); ++i) {
    for (Elem s : gens) {
      Elem y = g.mul(elts[i], s);
      if (!bits.test(y)) {
        bits.set(y);
        elts.push_back(y);
      }
    }
  }
}

template <class Range>
Subgroup closure_impl(const Group& g, const Range& candidates) {
  ElemSet bits(g.order());
  bits.set(0);
  std::vector<Elem> elts{0};
  std::vector<Elem> gens;
  for (Elem c : candidates)
    if (!bits.test(c)) adjoin(g, elts, bits, gens, c);
  return Subgroup(g, std::move(bits), std::move(gens));
}

std::vector<Elem> to_list(const ElemSet& s) {
  std::vector<Elem> out;
  out.reserve(s.count());
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) out.push_back(static_cast<Elem>(i));
  return out;
}

void require_same_group(const Subgroup& a, const Subgroup& b) {
  if (&a.group() != &b.group()) throw Error(ErrorKind::PreconditionViolated, "subgroups of different groups");
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool extend_series(SeriesReport& series, Subgroup next) {
  auto stopped = [&] {
    if (series.terms.empty()) return false;
    const Subgroup& last = series.terms.back();
    if (series.terms.size() >= 2 && last == series.terms[series.terms.size() - 2]) return true;
    switch (series.kind) {
      case SeriesKind::K:
      case SeriesKind::U:
      case SeriesKind::UpperCentral: return last.is_whole();
      default: return last.is_trivial();
    }
  };
  if (stopped()) return false;
  series.terms.push_back(std::move(next));
  const std::size_t n = series.terms.size();
  if (n >= 2 && series.terms[n - 1] == series.terms[n - 2]) {
    // stabilized_at already points at the first occurrence
  } else {
    series.stabilized_at = n - 1;
  }
  return !stopped();
}

std::string_view to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::K: return "K";
    case SeriesKind::U: return "U";
    case SeriesKind::Delta: return "delta";
    case SeriesKind::Epsilon: return "epsilon";
    case SeriesKind::UpperCentral: return "upper-central";
    case SeriesKind::ChainOfCenters: return "chain-of-centers";
    case SeriesKind::LowerCentral: return "lower-central";
  }
  return "unknown";
}

Subgroup trivial_subgroup(const Group& g) {
  ElemSet bits(g.order());
  bits.set(0);
  return Subgroup(g, std::move(bits));
}

Subgroup whole_group(const Group& g) {
  ElemSet bits(g.order());
  bits.set();
  std::vector<Elem> gens(g.generators().begin(), g.generators().end());
  if (gens.empty() && g.order() > 1) return subgroup_closure(g, bits);
  return Subgroup(g, std::move(bits), std::move(gens));
}

Subgroup subgroup_closure(const Group& g, std::span<const Elem> elems) { return closure_impl(g, elems); }

Subgroup subgroup_closure(const Group& g, const ElemSet& elems) { return closure_impl(g, to_list(elems)); }

Subgroup normal_closure(const Group& g, std::span<const Elem> elems) {
  const auto& cc = g.classes();
  std::vector<char> used(cc.size());
  std::vector<Elem> candidates;
  for (Elem e : elems) {
    auto c = cc.class_of[e];
    if (used[c]) continue;
    used[c] = 1;
    candidates.insert(candidates.end(), cc.classes[c].begin(), cc.classes[c].end());
  }
  return closure_impl(g, candidates);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  require_same_group(a, b);
  if (a <= b) return a;
  if (b <= a) return b;
  return subgroup_closure(a.group(), a.bits() & b.bits());
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_group(a, b);
  if (b <= a) return a;
  if (a <= b) return b;
  std::vector<Elem> cand(a.generators().begin(), a.generators().end());
  cand.insert(cand.end(), b.generators().begin(), b.generators().end());
  if (cand.empty()) {
    auto m = a.members();
    cand.assign(m.begin(), m.end());
    cand.insert(cand.end(), b.members().begin(), b.members().end());
  }
  return closure_impl(a.group(), cand);
}

Subgroup product(const Subgroup& a, const Subgroup& b) {
  require_same_group(a, b);
  if (b <= a) return a;
  if (a <= b) return b;
  const Group& g = a.group();
  ElemSet res(g.order());
  for (Elem x : a.members()) {
    if (res.test(x)) continue;
    for (Elem y : b.members()) res.set(g.mul(x, y));
  }
  std::vector<Elem> gens(a.generators().begin(), a.generators().end());
  for (Elem y : b.generators())
    if (!subgroup_closure(g, gens).contains(y)) gens.push_back(y);
  return Subgroup(g, std::move(res), std::move(gens));
}

bool is_normal(const Subgroup& h) {
  const Group& g = h.group();
  std::span<const Elem> hs = h.generators();
  if (hs.empty() && !h.is_trivial()) hs = h.members();
  for (Elem x : g.generators())
    for (Elem s : hs)
      if (!h.contains(g.conj(s, x))) return false;
  return true;
}

const ConjClasses& conjugacy_classes(const Group& g) { return g.classes(); }

Subgroup center(const Group& g) {
  ElemSet bits(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Elem x : g.generators())
      if (g.mul(static_cast<Elem>(a), x) != g.mul(x, static_cast<Elem>(a))) {
        central = false;
        break;
      }
    if (central) bits.set(a);
  }
  return subgroup_closure(g, bits);
}

Subgroup centralizer(const Group& g, Elem x) {
  ElemSet bits(g.order());
  for (std::size_t a = 0; a < g.order(); ++a)
    if (g.mul(static_cast<Elem>(a), x) == g.mul(x, static_cast<Elem>(a))) bits.set(a);
  return subgroup_closure(g, bits);
}

ElemSet gamma_set(const Group& g, Elem x) { return g.gamma(x); }

Subgroup bracket(Elem x, const Subgroup& t) {
  const Group& g = t.group();
  std::vector<Elem> comms;
  comms.reserve(t.order());
  for (Elem y : t.members()) comms.push_back(g.comm(x, y));
  return closure_impl(g, comms);
}

Subgroup bracket(const Subgroup& s, const Subgroup& t) {
  require_same_group(s, t);
  const Group& g = s.group();
  if (s.is_trivial() || t.is_trivial()) return trivial_subgroup(g);
  if (is_normal(s) && is_normal(t)) {
    std::span<const Elem> sg = s.generators();
    std::span<const Elem> tg = t.generators();
    if (sg.empty()) sg = s.members();
    if (tg.empty()) tg = t.members();
    std::vector<Elem> comms;
    for (Elem a : sg)
      for (Elem b : tg) comms.push_back(g.comm(a, b));
    return normal_closure(g, comms);
  }
  std::vector<Elem> comms;
  for (Elem a : s.members())
    for (Elem b : t.members()) comms.push_back(g.comm(a, b));
  return closure_impl(g, comms);
}

Subgroup derived_subgroup(const Group& g) {
  Subgroup whole = whole_group(g);
  return bracket(whole, whole);
}

Subgroup z_over(const Subgroup& n) {
  if (!is_normal(n)) throw Error(ErrorKind::NotNormal, "z_over: subgroup is not normal");
  const Group& g = n.group();
  ElemSet bits(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (Elem x : g.generators())
      if (!n.contains(g.comm(static_cast<Elem>(a), x))) {
        ok = false;
        break;
      }
    if (ok) bits.set(a);
  }
  return subgroup_closure(g, bits);
}

SeriesReport upper_central_series(const Group& g) {
  SeriesReport s;
  s.kind = SeriesKind::UpperCentral;
  Subgroup cur = trivial_subgroup(g);
  while (extend_series(s, cur)) cur = z_over(s.terms.back());
  s.notes.push_back(s.terminal().is_whole() ? "nilpotent" : "not nilpotent");
  return s;
}

SeriesReport lower_central_series(const Group& g) {
  SeriesReport s;
  s.kind = SeriesKind::LowerCentral;
  Subgroup whole = whole_group(g);
  Subgroup cur = whole;
  while (extend_series(s, cur)) cur = bracket(s.terms.back(), whole);
  return s;
}

bool is_nilpotent(const Group& g) { return upper_central_series(g).terminal().is_whole(); }

std::vector<Subgroup> normal_subgroups(const Group& g, std::size_t limit) {
  const auto& cc = g.classes();
  std::map<ElemSet, std::size_t> index;
  std::vector<Subgroup> found;
  auto add = [&](Subgroup h) {
    if (index.count(h.bits())) return;
    if (found.size() >= limit)
      throw Error(ErrorKind::LatticeTooLarge, "normal subgroup lattice exceeds " + std::to_string(limit));
    index.emplace(h.bits(), found.size());
    found.push_back(std::move(h));
  };
  add(trivial_subgroup(g));
  std::vector<Subgroup> atoms;
  for (Elem rep : cc.representatives) {
    if (rep == 0) continue;
    Elem one[] = {rep};
    Subgroup h = normal_closure(g, one);
    if (std::none_of(atoms.begin(), atoms.end(), [&](const Subgroup& a) { return a == h; })) atoms.push_back(h);
  }
  for (const auto& a : atoms) add(a);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& a : atoms) {
      if (a <= found[i]) continue;
      Subgroup j = product(found[i], a);
      add(std::move(j));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return std::lexicographical_compare(a.members().begin(), a.members().end(), b.members().begin(),
                                        b.members().end());
  });
  return found;
}

bool is_quasi_simple(const Group& g) {
  if (g.is_abelian()) return false;
  if (!derived_subgroup(g).is_whole()) return false;
  QuotientMap q = quotient(g, center(g));
  const Group& t = *q.target;
  if (t.is_abelian()) return false;
  for (Elem rep : t.classes().representatives) {
    if (rep == 0) continue;
    Elem one[] = {rep};
    if (!normal_closure(t, one).is_whole()) return false;
  }
  return true;
}

std::optional<unsigned> prime_power_base(std::size_t n) {
  if (n < 2) return std::nullopt;
  for (std::size_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    if (n == 1) return static_cast<unsigned>(p);
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<unsigned> prime_divisors(std::size_t n) {
  std::vector<unsigned> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(static_cast<unsigned>(p));
    while (n % p == 0) n /= p;
  }
  if (n > 1 && is_prime(n)) out.push_back(static_cast<unsigned>(n));
  return out;
}

bool is_p_section(const Subgroup& a, const Subgroup& b, unsigned p) {
  std::size_t idx = a.order() / b.order();
  while (idx % p == 0) idx /= p;
  return idx == 1;
}

bool is_elementary_abelian_section(const Subgroup& a, const Subgroup& b, unsigned p) {
  const Group& g = a.group();
  if (!(b <= a) || !is_p_section(a, b, p)) return false;
  std::span<const Elem> gens = a.generators();
  if (gens.empty()) gens = a.members();
  for (Elem x : gens)
    for (Elem y : gens)
      if (!b.contains(g.comm(x, y))) return false;
  for (Elem x : a.members())
    if (!b.contains(g.pow(x, p))) return false;
  return true;
}

unsigned section_exponent(const Subgroup& a, const Subgroup& b) {
  const Group& g = a.group();
  unsigned e = 1;
  for (Elem x : a.members()) {
    unsigned m = 1;
    Elem y = x;
    while (!b.contains(y)) {
      y = g.mul(y, x);
      ++m;
    }
    e = std::lcm(e, m);
  }
  return e;
}

std::vector<std::string> member_labels(const Subgroup& h) {
  std::vector<std::string> out;
  for (Elem e : h.members()) out.push_back(h.group().label(e));
  return out;
}

}  // namespace nestkit
