#include "oracles.hpp"

#include <algorithm>

namespace oracle {

std::vector<unsigned> perm(unsigned degree, const std::vector<std::vector<unsigned>>& cycles) {
  std::vector<unsigned> im(degree);
  for (unsigned i = 0; i < degree; ++i) im[i] = i;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) im[c[i] - 1] = c[(i + 1) % c.size()] - 1;
  return im;
}

nestkit::GroupPtr perm_group(unsigned degree, const std::vector<std::vector<std::vector<unsigned>>>& gens) {
  nestkit::PermGenerators spec{degree, {}};
  for (const auto& g : gens) spec.generators.push_back(perm(degree, g));
  return nestkit::build_group(spec);
}

nestkit::GroupPtr s3() { return perm_group(3, {{{1, 2, 3}}, {{1, 2}}}); }
nestkit::GroupPtr d8() { return perm_group(4, {{{1, 2, 3, 4}}, {{1, 3}}}); }
nestkit::GroupPtr q8() { return perm_group(8, {{{1, 2, 4, 7}, {3, 6, 8, 5}}, {{1, 3, 4, 8}, {2, 5, 7, 6}}}); }
nestkit::GroupPtr a4() { return perm_group(4, {{{1, 2, 3}}, {{1, 2}, {3, 4}}}); }
nestkit::GroupPtr a5() { return perm_group(5, {{{1, 2, 3, 4, 5}}, {{1, 2, 3}}}); }
nestkit::GroupPtr cyclic(unsigned n) {
  std::vector<unsigned> c(n);
  for (unsigned i = 0; i < n; ++i) c[i] = i + 1;
  return perm_group(n, {{c}});
}

ElemList closure(const Group& g, const ElemList& gens) {
  std::set<Elem> s{0};
  s.insert(gens.begin(), gens.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur(s.begin(), s.end());
    for (Elem a : cur)
      for (Elem b : cur)
        if (s.insert(g.mul(a, b)).second) grew = true;
  }
  return {s.begin(), s.end()};
}

ElemList center(const Group& g) {
  ElemList out;
  for (std::size_t a = 0; a < g.order(); ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < g.order() && ok; ++b)
      ok = g.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == g.mul(static_cast<Elem>(b), static_cast<Elem>(a));
    if (ok) out.push_back(static_cast<Elem>(a));
  }
  return out;
}

ElemList commutator_set(const Group& g, Elem x) {
  std::set<Elem> s;
  for (std::size_t y = 0; y < g.order(); ++y) {
    Elem xy = g.mul(x, static_cast<Elem>(y));
    Elem yx = g.mul(static_cast<Elem>(y), x);
    // [x,y] = (yx)^-1 (xy)
    for (std::size_t c = 0; c < g.order(); ++c)
      if (g.mul(yx, static_cast<Elem>(c)) == xy) {
        s.insert(static_cast<Elem>(c));
        break;
      }
  }
  return {s.begin(), s.end()};
}

bool is_normal(const Group& g, const ElemList& h) {
  for (std::size_t x = 0; x < g.order(); ++x)
    for (Elem a : h) {
      Elem c = g.mul(g.mul(g.inv(static_cast<Elem>(x)), a), static_cast<Elem>(x));
      if (!std::binary_search(h.begin(), h.end(), c)) return false;
    }
  return true;
}

std::vector<ElemList> classes(const Group& g) {
  std::vector<ElemList> out;
  std::vector<char> seen(g.order());
  for (std::size_t a = 0; a < g.order(); ++a) {
    if (seen[a]) continue;
    std::set<Elem> cls;
    for (std::size_t x = 0; x < g.order(); ++x)
      cls.insert(g.mul(g.mul(g.inv(static_cast<Elem>(x)), static_cast<Elem>(a)), static_cast<Elem>(x)));
    for (Elem c : cls) seen[c] = 1;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

std::set<ElemList> all_subgroups(const Group& g) {
  std::set<ElemList> subs;
  const auto n = static_cast<Elem>(g.order());
  std::vector<ElemList> cyclic;
  for (Elem a = 0; a < n; ++a) cyclic.push_back(closure(g, {a}));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) subs.insert(closure(g, {a, b}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<ElemList> cur(subs.begin(), subs.end());
    for (const auto& h : cur)
      for (const auto& k : cur) {
        ElemList gens = h;
        gens.insert(gens.end(), k.begin(), k.end());
        if (subs.insert(closure(g, gens)).second) grew = true;
      }
  }
  return subs;
}

std::set<ElemList> normal_subgroups(const Group& g) {
  std::set<ElemList> out;
  for (const auto& h : all_subgroups(g))
    if (is_normal(g, h)) out.insert(h);
  return out;
}

ElemList intersect(const ElemList& a, const ElemList& b) {
  ElemList out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool subset(const ElemList& a, const ElemList& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

ElemList k_brute(const Group& g) {
  ElemList all(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) all[i] = static_cast<Elem>(i);
  ElemList z = center(g);
  if (z.size() == g.order()) return all;
  ElemList acc = all;
  for (Elem x : all)
    if (!std::binary_search(z.begin(), z.end(), x)) acc = intersect(acc, closure(g, commutator_set(g, x)));
  return acc;
}

ElemList v_brute(const Group& g, const ElemList& m) {
  ElemList gens = m;
  for (std::size_t a = 0; a < g.order(); ++a) {
    auto x = static_cast<Elem>(a);
    if (std::binary_search(m.begin(), m.end(), x)) continue;
    std::set<Elem> cl;
    for (std::size_t y = 0; y < g.order(); ++y) cl.insert(g.mul(g.mul(g.inv(static_cast<Elem>(y)), x), static_cast<Elem>(y)));
    bool all = true;
    for (Elem k : m) all = all && cl.count(g.mul(x, k));
    if (!all) gens.push_back(x);
  }
  return closure(g, gens);
}

ElemList u_brute(const Group& g, const ElemList& n) {
  ElemList gens{0};
  for (const auto& h : normal_subgroups(g))
    if (subset(v_brute(g, h), n)) gens.insert(gens.end(), h.begin(), h.end());
  return closure(g, gens);
}

ElemList normal_closure(const Group& g, const ElemList& s) {
  ElemList gens;
  for (Elem x : s)
    for (std::size_t y = 0; y < g.order(); ++y) gens.push_back(g.mul(g.mul(g.inv(static_cast<Elem>(y)), x), static_cast<Elem>(y)));
  return closure(g, gens);
}

}  // namespace oracle

namespace oracle {

bool isomorphic_brute(const Group& a, const Group& b) {
  if (a.order() != b.order()) return false;
  std::vector<Elem> img(a.order());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<Elem>(i);
  do {
    bool ok = true;
    for (Elem x = 0; x < a.order() && ok; ++x)
      for (Elem y = 0; y < a.order() && ok; ++y) ok = img[a.mul(x, y)] == b.mul(img[x], img[y]);
    if (ok) return true;
  } while (std::next_permutation(img.begin() + 1, img.end()));
  return false;
}

}  // namespace oracle
