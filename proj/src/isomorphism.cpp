#include "nestkit/isomorphism.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "nestkit/quotient.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

namespace {

// Orders of the primary cyclic factors of an abelian group.
std::vector<std::size_t> primary_factors(const Group& a) {
  std::vector<std::size_t> out;
  for (unsigned p : prime_divisors(a.order())) {
    // n[k] = #{x : x^(p^k) = 1}
    std::vector<std::size_t> n(1, 1);
    for (std::size_t pk = p;; pk *= p) {
      std::size_t c = 0;
      for (Elem x = 0; x < a.order(); ++x)
        if (pk % a.elem_order(x) == 0) ++c;
      if (c == n.back()) break;
      n.push_back(c);
    }
    // r[k] = number of factors of order >= p^k
    std::vector<std::size_t> r;
    for (std::size_t k = 1; k < n.size(); ++k) {
      std::size_t q = n[k] / n[k - 1], e = 0;
      while (q > 1) q /= p, ++e;
      r.push_back(e);
    }
    for (std::size_t k = 0; k < r.size(); ++k) {
      std::size_t exact = r[k] - (k + 1 < r.size() ? r[k + 1] : 0);
      std::size_t pk = 1;
      for (std::size_t i = 0; i <= k; ++i) pk *= p;
      out.insert(out.end(), exact, pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> small_generating_set(const Group& g) {
  std::vector<Elem> order(g.order());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Elem>(i);
  std::stable_sort(order.begin(), order.end(), [&](Elem x, Elem y) { return g.elem_order(x) > g.elem_order(y); });
  std::vector<Elem> gens;
  ElemSet have(g.order());
  have.set(0);
  for (Elem x : order) {
    if (have.test(x)) continue;
    gens.push_back(x);
    have = subgroup_closure(g, gens).bits();
    if (have.count() == g.order()) break;
  }
  return gens;
}

// Extends phi along the Cayley graph of <gens[0..k)>; false on a clash or
// a non-injective assignment.
bool consistent(const Group& a, const Group& b, const std::vector<Elem>& gens, const std::vector<Elem>& images,
                std::size_t k, std::vector<int>& phi) {
  std::fill(phi.begin(), phi.end(), -1);
  std::vector<char> used(b.order(), 0);
  std::vector<Elem> queue{0};
  phi[0] = 0;
  used[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Elem x = queue[head];
    for (std::size_t i = 0; i < k; ++i) {
      Elem y = a.mul(x, gens[i]);
      Elem fy = b.mul(static_cast<Elem>(phi[x]), images[i]);
      if (phi[y] < 0) {
        if (used[fy]) return false;
        phi[y] = fy;
        used[fy] = 1;
        queue.push_back(y);
      } else if (phi[y] != fy) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::pair<unsigned, std::size_t>> element_profile(const Group& g) {
  const auto& cc = g.classes();
  std::vector<std::pair<unsigned, std::size_t>> out(g.order());
  for (Elem x = 0; x < g.order(); ++x) out[x] = {g.elem_order(x), cc.classes[cc.class_of[x]].size()};
  return out;
}

}  // namespace

std::vector<std::size_t> abelian_invariants(const Group& g) {
  if (g.is_abelian()) return primary_factors(g);
  QuotientMap q = quotient(g, derived_subgroup(g));
  return primary_factors(*q.target);
}

std::string structure_key(const Group& g) {
  auto prof = element_profile(g);
  std::sort(prof.begin(), prof.end());
  std::ostringstream os;
  os << g.order() << ';' << center(g).order() << ';' << derived_subgroup(g).order() << ';';
  for (std::size_t i = 0; i < prof.size();) {
    std::size_t j = i;
    while (j < prof.size() && prof[j] == prof[i]) ++j;
    os << prof[i].first << 'x' << prof[i].second << '*' << (j - i) << ',';
    i = j;
  }
  os << ';';
  for (std::size_t f : abelian_invariants(g)) os << f << ',';
  return os.str();
}

bool are_isomorphic(const Group& a, const Group& b) {
  if (a.order() != b.order() || a.is_abelian() != b.is_abelian()) return false;
  if (structure_key(a) != structure_key(b)) return false;
  // abelian groups are determined by their element orders
  if (a.is_abelian()) return true;
  auto pa = element_profile(a), pb = element_profile(b);
  std::vector<Elem> gens = small_generating_set(a);
  std::vector<std::vector<Elem>> cand(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y = 0; y < b.order(); ++y)
      if (pb[y] == pa[gens[i]]) cand[i].push_back(y);
  std::vector<Elem> images(gens.size());
  std::vector<int> phi(a.order());
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == gens.size()) return true;
    for (Elem y : cand[k]) {
      images[k] = y;
      if (consistent(a, b, gens, images, k + 1, phi) && self(self, k + 1)) return true;
    }
    return false;
  };
  return search(search, 0);
}

}  // namespace nestkit
