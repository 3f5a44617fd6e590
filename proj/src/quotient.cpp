#include "nestkit/quotient.hpp"

#include "nestkit/error.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

QuotientMap quotient(const Group& g, const Subgroup& n) {
  if (&n.group() != &g) throw Error(ErrorKind::PreconditionViolated, "quotient: subgroup of another group");
  if (!is_normal(n)) throw Error(ErrorKind::NotNormal, "quotient: subgroup is not normal");
  const std::size_t order = g.order();
  constexpr Elem kUnset = 0xFFFF;
  std::vector<Elem> proj(order, kUnset);
  std::vector<Elem> reps;
  for (std::size_t a = 0; a < order; ++a) {
    if (proj[a] != kUnset) continue;
    auto t = static_cast<Elem>(reps.size());
    reps.push_back(static_cast<Elem>(a));
    for (Elem x : n.members()) proj[g.mul(static_cast<Elem>(a), x)] = t;
  }
  const std::size_t m = reps.size();
  std::vector<Elem> table(m * m);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) table[s * m + t] = proj[g.mul(reps[s], reps[t])];
  std::vector<std::string> labels(m);
  for (std::size_t s = 0; s < m; ++s) labels[s] = n.is_trivial() ? g.label(reps[s]) : "[" + g.label(reps[s]) + "]";
  std::vector<Elem> gens;
  for (Elem x : g.generators())
    if (proj[x] != 0) gens.push_back(proj[x]);

  Provenance src;
  src.kind = "quotient";
  src.description = g.source().description + " / N(" + std::to_string(n.order()) + ")";
  auto target = std::make_shared<const Group>(std::move(table), std::move(labels), std::move(gens), std::move(src));
  return QuotientMap{&g, n, std::move(target), std::move(proj), std::move(reps)};
}

Subgroup QuotientMap::image(const Subgroup& h) const {
  ElemSet bits(target->order());
  for (Elem x : h.members()) bits.set(projection[x]);
  std::vector<Elem> gens;
  for (Elem x : h.generators())
    if (projection[x] != 0) gens.push_back(projection[x]);
  if (gens.empty() && bits.count() > 1) return subgroup_closure(*target, bits);
  return Subgroup(*target, std::move(bits), std::move(gens));
}

Subgroup QuotientMap::preimage(const Subgroup& h) const {
  ElemSet bits(source->order());
  for (std::size_t a = 0; a < source->order(); ++a)
    if (h.contains(projection[a])) bits.set(a);
  std::vector<Elem> gens;
  for (Elem x : h.generators()) gens.push_back(representative[x]);
  if (gens.empty() && h.order() > 1) return subgroup_closure(*source, bits);
  gens.insert(gens.end(), kernel.generators().begin(), kernel.generators().end());
  return Subgroup(*source, std::move(bits), std::move(gens));
}

}  // namespace nestkit
