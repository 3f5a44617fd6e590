#include "nestkit/theorems.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nestkit/error.hpp"
#include "nestkit/invariants.hpp"
#include "nestkit/quotient.hpp"
#include "nestkit/series.hpp"

namespace nestkit {

namespace {

std::string S(const Subgroup& h) {
  std::string out = "{";
  for (std::size_t i = 0; i < h.order(); ++i) {
    if (i) out += ",";
    out += std::to_string(h.members()[i]);
  }
  return out + "}";
}

std::string E(const Group& g, Elem x) { return std::to_string(x) + " (" + g.label(x) + ")"; }

using RowSet = std::vector<bool>;

// Per normal subgroup data, filled by one pass over the lattice that builds
// each quotient once.
struct NormalData {
  Subgroup zn, v, u, kq, uq;
  // |C_{G/N}(gN)| for every class of G.
  std::vector<std::size_t> qcent;
  std::string uquot_failure;
  bool uquot_applicable = false;
};

class Ctx {
 public:
  Ctx(const Group& g, const CharacterTable* t, const SuiteOptions& opts)
      : g(g), t(t), opts(opts), whole(whole_group(g)), triv(trivial_subgroup(g)), Z(center(g)),
        Gp(derived_subgroup(g)), Z2(z_over(Z)), K(k_subgroup(g)), U(u_subgroup(g, t)), ZK(z_over(K)),
        ZU(z_over(U)), abelian(g.is_abelian()), p(prime_power_base(g.order())) {}

  const Group& g;
  const CharacterTable* t;
  const SuiteOptions& opts;
  Subgroup whole, triv, Z, Gp, Z2, K, U, ZK, ZU;
  bool abelian;
  std::optional<unsigned> p;

  Subgroup br(const Subgroup& s) { return bracket(s, whole); }

  const Subgroup& br(Elem x) {
    const auto& cc = g.classes();
    if (brc_.empty()) brc_.resize(cc.size());
    auto c = cc.class_of[x];
    if (!brc_[c]) brc_[c] = bracket(cc.representatives[c], whole);
    return *brc_[c];
  }

  const Subgroup& zn(const Subgroup& n) {
    auto it = zn_.find(n.bits());
    if (it == zn_.end()) it = zn_.emplace(n.bits(), z_over(n)).first;
    return it->second;
  }

  const SeriesBundle& series() {
    if (!series_) series_ = all_series(g, t);
    return *series_;
  }

  // Chain of centers from the table; null when not nested or no table.
  const SeriesReport* chain() {
    if (!chain_done_) {
      chain_done_ = true;
      if (t) chain_ = is_nested_direct(*t).second;
    }
    return chain_ ? &*chain_ : nullptr;
  }
  bool nested() { return chain() != nullptr; }
  bool gvz() { return t && is_gvz(*t); }

  // Z(chi) read off the values.
  const Subgroup& zval(std::size_t i) {
    if (zval_.empty()) {
      zval_.reserve(t->size());
      for (std::size_t j = 0; j < t->size(); ++j) zval_.push_back(center_from_values(*t, j));
    }
    return zval_[i];
  }


  const std::vector<Subgroup>* lattice() {
    if (!lat_tried_) {
      lat_tried_ = true;
      try {
        lat_ = normal_subgroups(g, opts.lattice_limit);
        for (std::size_t i = 0; i < lat_->size(); ++i) lat_index_.emplace((*lat_)[i].bits(), i);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::LatticeTooLarge) throw;
      }
    }
    return lat_ ? &*lat_ : nullptr;
  }

  std::size_t index_of(const Subgroup& n) {
    auto it = lat_index_.find(n.bits());
    if (it == lat_index_.end()) throw Error(ErrorKind::Internal, "subgroup missing from the normal lattice: " + S(n));
    return it->second;
  }

  const NormalData& nd(const Subgroup& n) {
    sweep();
    return nd_[index_of(n)];
  }

  // Bitset over rows of Irr(G|N).
  const RowSet& irr_over_rows(const Subgroup& n) {
    auto it = irr_over_.find(n.bits());
    if (it == irr_over_.end()) {
      RowSet r(t->size());
      for (std::size_t i = 0; i < t->size(); ++i) r[i] = !(n <= t->kernel(i));
      it = irr_over_.emplace(n.bits(), std::move(r)).first;
    }
    return it->second;
  }

  // The (1)-(4) conditions of the coset lemma for every class outside M.
  struct Basics {
    std::vector<bool> conj_coset, commutators, centralizers, vanish;
  };
  const Basics& basics(const Subgroup& m) {
    auto it = basics_.find(m.bits());
    if (it != basics_.end()) return it->second;
    const auto& cc = g.classes();
    const NormalData& d = nd(m);
    Basics b;
    const std::size_t nc = cc.size();
    b.conj_coset.assign(nc, true);
    b.commutators.assign(nc, true);
    b.centralizers.assign(nc, true);
    b.vanish.assign(nc, true);
    const RowSet* over = t ? &irr_over_rows(m) : nullptr;
    for (std::size_t c = 0; c < nc; ++c) {
      Elem x = cc.representatives[c];
      if (m.contains(x)) continue;
      for (Elem y : m.members())
        if (cc.class_of[g.mul(x, y)] != c) {
          b.conj_coset[c] = false;
          break;
        }
      b.commutators[c] = m.bits().is_subset_of(g.gamma(x));
      b.centralizers[c] = g.order() / cc.classes[c].size() == d.qcent[c];
      if (over)
        for (std::size_t i = 0; i < t->size(); ++i)
          if ((*over)[i] && !t->row(i).values[c].is_zero()) {
            b.vanish[c] = false;
            break;
          }
    }
    return basics_.emplace(m.bits(), std::move(b)).first->second;
  }

 private:
  void sweep() {
    if (swept_) return;
    swept_ = true;
    const auto& lat = *lattice();
    const auto& cc = g.classes();
    nd_.reserve(lat.size());
    for (const auto& n : lat) {
      nd_.push_back(NormalData{zn(n), v_rel(n), u_rel(n), K, U, {}, {}, false});
    }
    for (std::size_t i = 0; i < lat.size(); ++i) {
      const Subgroup& n = lat[i];
      NormalData& d = nd_[i];
      d.qcent.resize(cc.size());
      if (n.is_trivial()) {
        for (std::size_t c = 0; c < cc.size(); ++c) d.qcent[c] = g.order() / cc.classes[c].size();
        continue;
      }
      QuotientMap q = quotient(g, n);
      const Group& h = *q.target;
      d.kq = q.preimage(k_subgroup(h));
      d.uq = q.preimage(u_subgroup(h));
      const auto& qc = h.classes();
      for (std::size_t c = 0; c < cc.size(); ++c)
        d.qcent[c] = h.order() / qc.classes[qc.class_of[q.project(cc.representatives[c])]].size();
      for (std::size_t j = 0; j < lat.size(); ++j) {
        const Subgroup& hh = lat[j];
        if (!(d.v <= hh)) continue;
        d.uquot_applicable = true;
        Subgroup lhs = q.preimage(u_rel(q.image(hh)));
        if (!(lhs == nd_[j].u) && d.uquot_failure.empty())
          d.uquot_failure = "N = " + S(n) + ", H = " + S(hh) + ": U(G/N|H/N) lifts to " + S(lhs) + " but U(G|H) = " +
                            S(nd_[j].u);
      }
    }
  }

  std::vector<std::optional<Subgroup>> brc_;
  std::map<ElemSet, Subgroup> zn_;
  std::optional<SeriesBundle> series_;
  bool chain_done_ = false;
  std::optional<SeriesReport> chain_;
  std::vector<Subgroup> zval_;
  bool lat_tried_ = false;
  std::optional<std::vector<Subgroup>> lat_;
  std::map<ElemSet, std::size_t> lat_index_;
  bool swept_ = false;
  std::vector<NormalData> nd_;
  std::map<ElemSet, RowSet> irr_over_;
  std::map<ElemSet, Basics> basics_;
};

struct Out {
  bool applicable = false;
  bool holds = true;
  bool skipped = false;
  std::string witness;

  void fail(const std::string& w) {
    if (holds) {
      holds = false;
      witness = w;
    }
  }
  // Marks the check applicable and returns true when the requirements are
  // available; otherwise marks it skipped.
  bool need(bool available) {
    if (!available) {
      skipped = true;
      return false;
    }
    applicable = true;
    return true;
  }
};

std::string yn(bool b) { return b ? "true" : "false"; }

// Minimal members among the normal closures of nontrivial elements.
std::vector<Subgroup> minimal_normals(const Group& h) {
  std::vector<Subgroup> all;
  const auto& cc = h.classes();
  for (std::size_t c = 0; c < cc.size(); ++c) {
    Elem x = cc.representatives[c];
    if (x == 0) continue;
    Elem one[] = {x};
    Subgroup n = normal_closure(h, one);
    if (std::none_of(all.begin(), all.end(), [&](const Subgroup& m) { return m == n; })) all.push_back(n);
  }
  std::vector<Subgroup> out;
  for (const auto& n : all)
    if (std::none_of(all.begin(), all.end(), [&](const Subgroup& m) { return m < n; })) out.push_back(n);
  return out;
}

Subgroup intersection_of(const Group& g, const std::vector<Subgroup>& xs) {
  ElemSet acc(g.order());
  acc.set();
  for (const auto& x : xs) acc &= x.bits();
  return subgroup_closure(g, acc);
}

std::optional<unsigned> prime_of(const Subgroup& h) { return prime_power_base(h.order()); }

bool elementary_p(const Subgroup& a, const Subgroup& b, unsigned p) {
  return is_p_section(a, b, p) && is_elementary_abelian_section(a, b, p);
}

// The group as a direct product: (factor, other factor, position 0 or 1).
struct Factors {
  GroupPtr m, n;
};
std::optional<Factors> product_factors(const Group& g) {
  const auto& src = g.source();
  if (src.kind != "product" || src.factors.size() != 2) return std::nullopt;
  return Factors{src.factors[0], src.factors[1]};
}

// Image of a subgroup of one factor inside the product.
Subgroup embed(const Group& g, const Factors& f, const Subgroup& h, bool first) {
  ElemSet bits(g.order());
  const std::size_t nn = f.n->order();
  for (Elem x : h.members()) bits.set(first ? static_cast<std::size_t>(x) * nn : x);
  return Subgroup(g, std::move(bits));
}

using Check = std::function<void(Ctx&, Out&)>;

// Hypothesis "G is nested": needs the table, otherwise the check is skipped.
bool nested_hyp(Ctx& c, Out& o) {
  if (!c.t) return o.need(false);
  if (!c.nested()) return false;
  return o.need(true);
}

// Windows 1 <= j < k inside the K-series on which every step satisfies
// Z_{K_i} > Z_{K_{i-1}} and [K_i,G] <= K_{i-1}.
std::vector<std::pair<std::size_t, std::size_t>> factor_windows(Ctx& c) {
  const auto& k = c.series().k;
  const std::size_t m = k.terms.size() - 1;
  std::vector<bool> cond(m + 1, false);
  for (std::size_t i = 1; i <= m; ++i)
    cond[i] = c.zn(k.terms[i - 1]) < c.zn(k.terms[i]) && c.br(k.terms[i]) <= k.terms[i - 1];
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t kk = j; kk <= m && cond[kk]; ++kk)
      if (kk > j && cond[j]) out.emplace_back(j, kk);
  return out;
}

// Shared by the two witness-search theorems. `target` selects the set of
// rows of Irr(G/N) to be matched.
struct WitnessResult {
  bool all_g = true, all_l = true;
  std::string missing_g, missing_l, found;
};

WitnessResult witness_search(Ctx& c, const std::function<bool(std::size_t, const Subgroup&, const Subgroup&)>& target) {
  const auto& lat = *c.lattice();
  const auto& cc = c.g.classes();
  const CharacterTable& t = *c.t;
  std::vector<std::size_t> order(cc.size());
  for (std::size_t i = 0; i < cc.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return cc.representatives[a] < cc.representatives[b]; });
  WitnessResult r;
  auto& [all_g, all_l, missing_g, missing_l, found] = r;
  for (const auto& n : lat) {
    if (c.Gp <= n) continue;
    const Subgroup& zn = c.zn(n);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (n <= t.kernel(i)) rows.push_back(i);
    RowSet want(t.size());
    for (std::size_t i : rows) want[i] = target(i, n, zn);
    std::optional<Elem> gn;
    for (std::size_t cl : order) {
      Elem x = cc.representatives[cl];
      if (n.contains(x)) continue;
      bool same = true;
      for (std::size_t i : rows)
        if (want[i] != !c.zval(i).contains(x)) {
          same = false;
          break;
        }
      if (same) {
        gn = x;
        break;
      }
    }
    std::optional<std::size_t> ln;
    for (std::size_t j = 0; j < lat.size() && !ln; ++j) {
      if (!(n < lat[j])) continue;
      bool same = true;
      for (std::size_t i : rows)
        if (want[i] != !(lat[j] <= t.kernel(i))) {
          same = false;
          break;
        }
      if (same) ln = j;
    }
    if (!gn && all_g) {
      all_g = false;
      missing_g = "no g_N for N = " + S(n);
    }
    if (!ln && all_l) {
      all_l = false;
      missing_l = "no L_N for N = " + S(n);
    }
    if (gn && ln && found.empty()) found = "N = " + S(n) + ": g_N = " + E(c.g, *gn) + ", L_N = " + S(lat[*ln]);
  }
  return r;
}

std::string describe(bool claim, const WitnessResult& r) {
  return "(1) = " + yn(claim) + ", (2) = " + yn(r.all_g) + ", (3) = " + yn(r.all_l) + "; " + r.missing_g + " " + r.missing_l;
}

// (1) => (2), (1) => (3) and (3) => (1).
void witness_verdict(Out& o, bool claim, const WitnessResult& r) {
  if ((claim && (!r.all_g || !r.all_l)) || (r.all_l && !claim))
    o.fail(describe(claim, r));
  else
    o.witness = r.all_g ? r.found : r.missing_g;
}

// (2) => (1).
void witness_converse(Out& o, bool claim, const WitnessResult& r) {
  if (r.all_g && !claim)
    o.fail(describe(claim, r));
  else
    o.witness = r.all_g ? r.found : r.missing_g;
}

bool sect4_target(Ctx& c, std::size_t i, const Subgroup& zn) { return c.zval(i) == zn; }
bool gvz3_target(Ctx& c, std::size_t i, const Subgroup& zn) { return c.zval(i) == zn && c.t->vanishing_off(i) == zn; }

const std::vector<std::pair<std::string, Check>>& registry() {
  static const std::vector<std::pair<std::string, Check>> checks = [] {
    std::vector<std::pair<std::string, Check>> r;
    auto add = [&](std::string id, Check f) { r.emplace_back(std::move(id), std::move(f)); };

    add("Conv-abelian", [](Ctx& c, Out& o) {
      if (!c.abelian) return;
      o.need(true);
      if (!c.K.is_whole() || !c.U.is_whole()) o.fail("K = " + S(c.K) + ", U = " + S(c.U));
    });
    add("Lem-Gprime", [](Ctx& c, Out& o) {
      if (c.abelian) return;
      o.need(true);
      if (!(c.K <= c.Gp)) o.fail("K = " + S(c.K) + " not inside G' = " + S(c.Gp));
    });
    add("Lem-K-eq-G", [](Ctx& c, Out& o) {
      o.need(true);
      bool rhs = c.abelian || is_quasi_simple(c.g);
      if (c.K.is_whole() != rhs) o.fail("K = G is " + yn(c.K.is_whole()) + ", abelian or quasi-simple is " + yn(rhs));
    });
    add("Lem-center-kernel", [](Ctx& c, Out& o) {
      if (!o.need(c.t)) return;
      std::vector<Subgroup> hs = {c.Z, c.Gp, c.Z2, c.whole, c.K, c.U};
      if (const auto* lat = c.lattice()) hs.insert(hs.end(), lat->begin(), lat->end());
      for (std::size_t i = 0; i < c.t->size(); ++i)
        for (const auto& h : hs)
          if ((c.br(h) <= c.t->kernel(i)) != (h <= c.zval(i))) o.fail("chi = " + std::to_string(i) + ", H = " + S(h));
    });
    add("Lem-cen-cond", [](Ctx& c, Out& o) {
      if (!o.need(c.t)) return;
      for (std::size_t i = 0; i < c.t->size(); ++i)
        for (Elem x : c.g.classes().representatives)
          if (c.zval(i).contains(x) != (c.br(x) <= c.t->kernel(i)))
            o.fail("chi = " + std::to_string(i) + ", g = " + E(c.g, x));
    });
    add("Lem-K-intersection", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t)) return;
      for (std::size_t i = 0; i < c.t->size(); ++i) {
        bool in_x = c.Z < c.zval(i);
        bool some = false;
        for (Elem x : c.g.classes().representatives)
          if (!c.Z.contains(x) && c.br(x) <= c.t->kernel(i)) some = true;
        if (in_x != some) o.fail("chi = " + std::to_string(i) + " is in X: " + yn(in_x));
      }
      Subgroup kc = k_via_characters(*c.t);
      if (!(kc == c.K)) o.fail("characters give " + S(kc) + ", commutators give " + S(c.K));
    });

    // --- K(G) and normal subgroups
    add("Thm-Kprops-1", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!(c.K <= n) && !(n <= c.Z)) o.fail("N = " + S(n));
    });
    add("Thm-Kprops-2", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!(c.K <= n) && !(c.zn(n) == c.Z && n <= c.Z)) o.fail("N = " + S(n) + ", Z_N = " + S(c.zn(n)));
    });
    add("Thm-Kprops-3", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!(c.K <= n) && !(product(c.K, n) <= c.nd(n).kq)) o.fail("N = " + S(n) + ", K(G/N) lifts to " + S(c.nd(n).kq));
    });
    add("Thm-Kprops-4", [](Ctx& c, Out& o) {
      if (c.abelian || !(c.ZK == c.Z)) return;
      o.need(true);
      Subgroup kq = k_of_quotient(c.K);
      if (!(kq == c.K)) o.fail("K(G/K) lifts to " + S(kq));
    });
    auto direct = [](bool want_k, int part) {
      return [want_k, part](Ctx& c, Out& o) {
        auto f = product_factors(c.g);
        if (!f) return;
        bool ma = f->m->is_abelian(), na = f->n->is_abelian();
        Subgroup got = want_k ? c.K : c.U;
        if (part == 1) {
          if (ma || na) return;
          o.need(true);
          if (!got.is_trivial()) o.fail("got " + S(got));
          return;
        }
        if (ma == na) return;
        o.need(true);
        const Group& nonab = ma ? *f->n : *f->m;
        Subgroup fac = want_k ? k_subgroup(nonab) : u_subgroup(nonab);
        Subgroup expect = embed(c.g, *f, fac, !ma);
        if (!(got == expect)) o.fail("got " + S(got) + ", factor gives " + S(expect));
      };
    };
    add("Lem-direct-prods-1", direct(true, 1));
    add("Lem-direct-prods-2", direct(true, 2));
    add("Thm-Z2eqZ-1", [](Ctx& c, Out& o) {
      if (c.abelian || !(c.Z2 == c.Z)) return;
      o.need(true);
      Subgroup viamin = intersection_of(c.g, minimal_noncentral_normals(c.g));
      if (!(viamin == c.K)) o.fail("intersection of minimal noncentral normals = " + S(viamin));
      if (const auto* lat = c.lattice()) {
        std::vector<Subgroup> nc;
        for (const auto& n : *lat)
          if (!(n <= c.Z)) nc.push_back(n);
        Subgroup all = intersection_of(c.g, nc);
        if (!(all == c.K)) o.fail("intersection of noncentral normals = " + S(all));
      }
    });
    add("Thm-Z2eqZ-2", [](Ctx& c, Out& o) {
      if (c.abelian || !(c.Z2 == c.Z)) return;
      o.need(true);
      auto mins = minimal_noncentral_normals(c.g);
      bool noncentral = !(c.K <= c.Z);
      if (noncentral != (mins.size() == 1)) {
        o.fail("K not central: " + yn(noncentral) + ", minimal noncentral normals: " + std::to_string(mins.size()));
        return;
      }
      if (!noncentral) return;
      if (!(mins[0] == c.K)) o.fail("unique minimal noncentral normal " + S(mins[0]) + " differs from K");
      QuotientMap q = quotient(c.g, c.Z);
      auto mq = minimal_normals(*q.target);
      if (mq.size() != 1 || !(mq[0] == q.image(c.K))) o.fail("KZ/Z is not the unique minimal normal subgroup of G/Z");
      bool found = false;
      for (Elem x : c.g.classes().representatives)
        if (!c.Z.contains(x) && c.br(x) == c.K) {
          found = true;
          o.witness = "n = " + E(c.g, x);
          break;
        }
      if (!found) o.fail("no noncentral n with [n,G] = K");
    });
    add("Lem-K-central-minimal", [](Ctx& c, Out& o) {
      if (c.abelian || c.K.is_trivial() || !(c.K <= c.Z)) return;
      o.need(true);
      for (const auto& m : minimal_normals(c.g))
        if (!(m <= c.Z)) o.fail("minimal normal " + S(m) + " is not central");
    });
    add("Thm-Z2gtZ-1", [](Ctx& c, Out& o) {
      if (!(c.Z < c.Z2)) return;
      o.need(true);
      if (!(c.K <= c.Z)) o.fail("K = " + S(c.K) + " is not central");
      auto p = prime_of(c.K);
      if (!c.K.is_trivial() && !(p && elementary_p(c.K, c.triv, *p))) o.fail("K = " + S(c.K) + " is not elementary abelian");
    });
    add("Thm-Z2gtZ-2", [](Ctx& c, Out& o) {
      if (!(c.Z < c.Z2) || c.K.is_trivial()) return;
      o.need(true);
      auto p = prime_of(c.K);
      if (!p || !is_p_section(c.Z2, c.Z, *p)) o.fail("|Z_2 : Z| = " + std::to_string(c.Z2.order() / c.Z.order()));
    });
    add("Thm-Z2gtZ-3", [](Ctx& c, Out& o) {
      if (!(c.ZK <= c.Z2 && c.Z < c.ZK)) return;
      o.need(true);
      auto p = prime_of(c.K);
      if (!p || !elementary_p(c.K, c.triv, *p) || !elementary_p(c.ZK, c.Z, *p)) o.fail("K or Z_K/Z is not elementary abelian for one prime");
      for (Elem x : c.g.classes().representatives)
        if (c.ZK.contains(x) && !c.Z.contains(x) && !(c.br(x) == c.K)) o.fail("[g,G] = " + S(c.br(x)) + " for g = " + E(c.g, x));
    });
    add("Lem-K-equiv-conditions", [](Ctx& c, Out& o) {
      if (c.K.is_trivial() || !(c.Z < c.Z2)) return;
      o.need(true);
      bool c1 = c.Z < c.ZK;
      bool c2 = false;
      for (Elem x : c.g.classes().representatives)
        if (c.br(x) == c.K) {
          c2 = true;
          o.witness = "g = " + E(c.g, x);
          break;
        }
      bool c3 = c.br(c.ZK) == c.K;
      if (c1 != c2 || c1 != c3) o.fail("(1) " + yn(c1) + ", (2) " + yn(c2) + ", (3) " + yn(c3));
    });
    add("Lem-K-equiv-cond-2", [](Ctx& c, Out& o) {
      if (c.K.is_trivial() || !(c.Z < c.Z2)) return;
      if (!o.need(c.t && c.lattice())) return;
      bool c1 = c.Z < c.ZK;
      bool c2 = true;
      for (const auto& n : *c.lattice())
        if (!(c.K <= n) && !(c.nd(n).kq == product(c.K, n))) c2 = false;
      bool c3 = true;
      for (std::size_t i = 0; i < c.t->size(); ++i)
        if (c.K <= c.t->kernel(i) && !(c.Z < c.zval(i))) c3 = false;
      if (c1 != c2 || c1 != c3) o.fail("(1) " + yn(c1) + ", (2) " + yn(c2) + ", (3) " + yn(c3));
    });
    add("Lem-cen-int", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      const auto& lat = *c.lattice();
      std::vector<const Subgroup*> zs;
      for (const auto& n : lat) zs.push_back(&c.nd(n).zn);
      for (std::size_t i = 0; i < lat.size(); ++i)
        for (std::size_t j = i + 1; j < lat.size(); ++j) {
          const Subgroup& meet = c.nd(intersect(lat[i], lat[j])).zn;
          if (meet.bits() != (zs[i]->bits() & zs[j]->bits())) o.fail("N = " + S(lat[i]) + ", M = " + S(lat[j]));
        }
    });
    add("Lem-Z-K", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t)) return;
      std::vector<Subgroup> zs;
      for (std::size_t i = 0; i < c.t->size(); ++i)
        if (c.Z < c.zval(i)) zs.push_back(c.zval(i));
      Subgroup meet = intersection_of(c.g, zs);
      if (!(meet == c.ZK)) o.fail("intersection = " + S(meet) + ", Z_K = " + S(c.ZK));
    });

    // --- nested groups and the K-series
    add("Lem-lewisgvz-1", [](Ctx& c, Out& o) {
      if (!nested_hyp(c, o)) return;
      if (!(c.chain()->terminal() == c.Z)) o.fail("X_n = " + S(c.chain()->terminal()));
    });
    add("Lem-lewisgvz-2", [](Ctx& c, Out& o) {
      if (!nested_hyp(c, o)) return;
      const auto& x = c.chain()->terms;
      for (std::size_t i = 1; i < x.size(); ++i)
        if (!(c.br(x[i]) < c.br(x[i - 1]))) o.fail("i = " + std::to_string(i));
    });
    add("Lem-lewisgvz-3", [](Ctx& c, Out& o) {
      if (!nested_hyp(c, o)) return;
      const auto& x = c.chain()->terms;
      for (std::size_t r = 0; r < c.t->size(); ++r)
        for (std::size_t i = 1; i < x.size(); ++i) {
          bool lhs = c.zval(r) == x[i];
          bool rhs = c.br(x[i]) <= c.t->kernel(r) && !(c.br(x[i - 1]) <= c.t->kernel(r));
          if (lhs != rhs) o.fail("chi = " + std::to_string(r) + ", i = " + std::to_string(i));
        }
    });
    add("Lem-nested-K", [](Ctx& c, Out& o) {
      if (c.abelian || !nested_hyp(c, o)) return;
      const auto& x = c.chain()->terms;
      Subgroup b = c.br(x[x.size() - 2]);
      if (!(b == c.K)) o.fail("[X_{n-1},G] = " + S(b));
    });
    add("Thm-kappa-series", [](Ctx& c, Out& o) {
      if (!o.need(c.t)) return;
      const auto& k = c.series().k;
      if (k.terminal().is_whole() != c.nested()) {
        o.fail("K_inf = G is " + yn(k.terminal().is_whole()) + ", nested is " + yn(c.nested()));
        return;
      }
      if (!c.nested()) return;
      const auto& x = c.chain()->terms;
      const std::size_t n = x.size() - 1;
      for (std::size_t i = 0; i <= n; ++i)
        if (!(k.at(i) == c.br(x[n - i]))) o.fail("K_" + std::to_string(i) + " = " + S(k.at(i)));
    });
    add("Cor-nested-cor", [](Ctx& c, Out& o) {
      if (!o.need(c.t && c.lattice())) return;
      bool all = true;
      std::string w;
      for (const auto& n : *c.lattice())
        if (!n.is_whole() && c.nd(n).kq == n && all) {
          all = false;
          w = "K(G/N) = 1 for N = " + S(n);
        }
      if (all != c.nested()) o.fail("nested " + yn(c.nested()) + "; " + w);
      else o.witness = w;
    });
    add("Lem-Z-K-i", [](Ctx& c, Out& o) {
      const auto& k = c.series().k;
      for (std::size_t i = 1; i < k.terms.size(); ++i) {
        const Subgroup& prev = k.terms[i - 1];
        if (!(c.zn(prev) < c.zn(k.terms[i]) && c.br(k.terms[i]) <= prev)) continue;
        o.need(true);
        const Subgroup& z1 = c.zn(prev);
        if (!(z1 < c.zn(z1))) o.fail("i = " + std::to_string(i));
      }
    });
    add("Thm-factor-p", [](Ctx& c, Out& o) {
      const auto& k = c.series().k;
      for (auto [j, kk] : factor_windows(c)) {
        o.need(true);
        auto p = prime_power_base(k.terms[kk].order() / k.terms[j - 1].order());
        std::string at = "j = " + std::to_string(j) + ", k = " + std::to_string(kk);
        if (!p || !is_p_section(c.zn(k.terms[kk]), c.zn(k.terms[j - 1]), *p)) {
          o.fail(at + ": no common prime");
          continue;
        }
        for (std::size_t i = j; i <= kk; ++i)
          if (!elementary_p(k.terms[i], k.terms[i - 1], *p) || !elementary_p(c.zn(k.terms[i]), c.zn(k.terms[i - 1]), *p))
            o.fail(at + ": step " + std::to_string(i) + " is not elementary abelian");
      }
    });
    add("Lem-factor-exp-1", [](Ctx& c, Out& o) {
      const auto& k = c.series().k;
      for (auto [j, kk] : factor_windows(c)) {
        o.need(true);
        for (std::size_t i = j; i <= kk; ++i)
          if (!(product(c.br(c.zn(k.terms[i])), k.terms[j - 1]) == k.terms[i]))
            o.fail("j = " + std::to_string(j) + ", i = " + std::to_string(i));
      }
    });
    add("Lem-factor-exp-2", [](Ctx& c, Out& o) {
      const auto& k = c.series().k;
      for (auto [j, kk] : factor_windows(c)) {
        o.need(true);
        bool lhs = c.br(c.zn(k.terms[kk])) <= c.zn(k.terms[j - 1]);
        bool rhs = c.br(k.terms[kk]) <= k.terms[j - 1];
        if (lhs != rhs) o.fail("j = " + std::to_string(j) + ", k = " + std::to_string(kk));
      }
    });
    auto exponents = [](bool conditional) {
      return [conditional](Ctx& c, Out& o) {
        const auto& k = c.series().k;
        for (auto [j, kk] : factor_windows(c)) {
          bool hyp = c.br(k.terms[kk]) <= k.terms[j - 1];
          if (hyp != conditional) continue;
          o.need(true);
          unsigned ez = section_exponent(c.zn(k.terms[kk]), c.zn(k.terms[j - 1]));
          unsigned ek = section_exponent(k.terms[kk], k.terms[j - 1]);
          if (ez != ek)
            o.fail("j = " + std::to_string(j) + ", k = " + std::to_string(kk) + ": exponents " + std::to_string(ez) +
                   " and " + std::to_string(ek));
        }
      };
    };
    add("Lem-factor-exp-3", exponents(true));
    add("Lem-factor-exp-3-unconditional", exponents(false));
    add("Lem-lower-central", [](Ctx& c, Out& o) {
      if (c.t && !c.nested()) return;
      if (!o.need(c.t && c.lattice())) return;
      std::vector<Subgroup> bs;
      for (const auto& x : c.chain()->terms) bs.push_back(c.br(x));
      auto listed = [&](const Subgroup& h) { return std::any_of(bs.begin(), bs.end(), [&](const Subgroup& b) { return b == h; }); };
      for (const auto& n : *c.lattice())
        if (!listed(c.br(n))) o.fail("[N,G] = " + S(c.br(n)) + " for N = " + S(n));
      auto lc = lower_central_series(c.g);
      for (std::size_t i = 1; i < lc.terms.size(); ++i)
        if (!listed(lc.terms[i])) o.fail("G_" + std::to_string(i + 1) + " = " + S(lc.terms[i]));
    });
    add("Lem-min-breadth", [](Ctx& c, Out& o) {
      if (!c.p || c.abelian) return;
      if (c.t && !c.nested()) return;
      if (!o.need(c.t)) return;
      const auto& x = c.chain()->terms;
      std::size_t want = c.br(x[x.size() - 2]).order();
      std::size_t got = minimal_class_size(c.g);
      if (got != want) o.fail("minimal class size " + std::to_string(got) + ", |[X_{n-1},G]| = " + std::to_string(want));
    });
    add("Thm-last-sect4", [](Ctx& c, Out& o) {
      if (!c.p || c.abelian) return;
      if (!o.need(c.t && c.lattice())) return;
      witness_verdict(o, c.nested(), witness_search(c, [&c](std::size_t i, const Subgroup&, const Subgroup& zn) {
                        return sect4_target(c, i, zn);
                      }));
    });
    add("Thm-last-sect4-2-implies-1", [](Ctx& c, Out& o) {
      if (!c.p || c.abelian) return;
      if (!o.need(c.t && c.lattice())) return;
      witness_converse(o, c.nested(), witness_search(c, [&c](std::size_t i, const Subgroup&, const Subgroup& zn) {
                         return sect4_target(c, i, zn);
                       }));
    });

    // --- V(G|N), U(G|N)
    add("Lem-irr-sets", [](Ctx& c, Out& o) {
      if (!o.need(c.t && c.lattice())) return;
      const auto& lat = *c.lattice();
      for (const auto& m : lat)
        for (const auto& n : lat) {
          const RowSet& a = c.irr_over_rows(m);
          const RowSet& b = c.irr_over_rows(n);
          bool sub = true;
          for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] && !b[i]) sub = false;
          if ((m <= n) != sub) o.fail("M = " + S(m) + ", N = " + S(n));
        }
    });
    add("Lem-Vprops-1", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!(n <= c.nd(n).v)) o.fail("N = " + S(n));
    });
    add("Lem-Vprops-2", [](Ctx& c, Out& o) {
      if (!o.need(c.t && c.lattice())) return;
      for (const auto& n : *c.lattice()) {
        Subgroup vc = v_rel_characters(*c.t, n);
        if (!(vc == c.nd(n).v)) o.fail("N = " + S(n) + ": product of V(chi) = " + S(vc) + ", V(G|N) = " + S(c.nd(n).v));
      }
    });
    add("Lem-Vprops-3", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      const auto& lat = *c.lattice();
      for (std::size_t i = 0; i < lat.size(); ++i)
        for (std::size_t j = i; j < lat.size(); ++j) {
          const Subgroup& lhs = c.nd(product(lat[i], lat[j])).v;
          if (!(lhs == product(c.nd(lat[i]).v, c.nd(lat[j]).v))) o.fail("H = " + S(lat[i]) + ", N = " + S(lat[j]));
        }
    });
    add("Lem-Vprops-4", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        for (const auto& h : *c.lattice())
          if (n <= h && !(c.nd(n).v <= c.nd(h).v)) o.fail("N = " + S(n) + ", H = " + S(h));
    });
    add("Lem-uiff", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      for (const auto& h : *c.lattice())
        for (const auto& n : *c.lattice())
          if ((h <= c.nd(n).u) != (c.nd(h).v <= n)) o.fail("H = " + S(h) + ", N = " + S(n));
    });
    add("Lem-uproperties-1", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t && c.lattice())) return;
      for (const auto& n : *c.lattice()) {
        const Subgroup& u = c.nd(n).u;
        auto vanish_off_n = [&](const Subgroup& h) {
          const RowSet& rows = c.irr_over_rows(h);
          for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i] && !(c.t->vanishing_off(i) <= n)) return false;
          return true;
        };
        if (!vanish_off_n(u)) o.fail("Irr(G|U(G|N)) does not vanish off N = " + S(n));
        for (const auto& h : *c.lattice())
          if (!(h <= u) && vanish_off_n(h)) o.fail("N = " + S(n) + ": larger candidate " + S(h));
      }
    });
    add("Lem-uproperties-2", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t && c.lattice())) return;
      for (const auto& n : *c.lattice()) {
        const Subgroup& u = c.nd(n).u;
        for (Elem x : c.g.classes().representatives) {
          bool rhs = true;
          for (std::size_t i = 0; i < c.t->size() && rhs; ++i)
            if (!c.t->kernel(i).contains(x) && !(c.t->vanishing_off(i) <= n)) rhs = false;
          if (u.contains(x) != rhs) o.fail("N = " + S(n) + ", g = " + E(c.g, x));
        }
      }
    });
    add("Lem-uproperties-3", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!n.is_whole() && !(c.nd(n).u <= intersect(n, c.Gp))) o.fail("N = " + S(n));
    });
    add("Lem-uquotients", [](Ctx& c, Out& o) {
      if (!c.lattice()) return o.need(false), void();
      for (const auto& n : *c.lattice()) {
        const NormalData& d = c.nd(n);
        if (n.is_trivial()) continue;
        if (d.uquot_applicable) o.need(true);
        if (!d.uquot_failure.empty()) o.fail(d.uquot_failure);
      }
    });
    add("Lem-basics", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      const auto& cc = c.g.classes();
      for (const auto& m : *c.lattice()) {
        const auto& b = c.basics(m);
        for (std::size_t k = 0; k < cc.size(); ++k) {
          if (m.contains(cc.representatives[k])) continue;
          bool b1 = b.conj_coset[k];
          if (b.commutators[k] != b1 || b.centralizers[k] != b1 || (c.t && b.vanish[k] != b1))
            o.fail("M = " + S(m) + ", g = " + E(c.g, cc.representatives[k]));
        }
      }
    });
    add("Lem-equiv", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      const auto& cc = c.g.classes();
      for (const auto& m : *c.lattice()) {
        const auto& b = c.basics(m);
        for (const auto& n : *c.lattice()) {
          if (!(m <= n)) continue;
          bool e1 = true, e2 = true, e3 = true, e5 = true;
          for (std::size_t k = 0; k < cc.size(); ++k) {
            if (n.contains(cc.representatives[k])) continue;
            e1 = e1 && b.conj_coset[k];
            e2 = e2 && b.commutators[k];
            e3 = e3 && b.centralizers[k];
            e5 = e5 && b.vanish[k];
          }
          bool e4 = c.nd(m).v <= n;
          if (e2 != e1 || e3 != e1 || e4 != e1 || (c.t && e5 != e1)) o.fail("M = " + S(m) + ", N = " + S(n));
        }
      }
    });
    add("Lem-U-camina", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      const auto& cc = c.g.classes();
      for (const auto& m : *c.lattice()) {
        const auto& b = c.basics(m);
        for (const auto& n : *c.lattice()) {
          if (!(m <= n)) continue;
          bool triple = true;
          for (std::size_t k = 0; k < cc.size(); ++k)
            if (!n.contains(cc.representatives[k])) triple = triple && b.conj_coset[k];
          if (triple != (m <= c.nd(n).u)) o.fail("M = " + S(m) + ", N = " + S(n));
          if (m == n && triple != (c.nd(n).u == n)) o.fail("pair N = " + S(n));
        }
      }
    });
    add("Lem-Ukernels", [](Ctx& c, Out& o) {
      if (!o.need(c.t && c.lattice())) return;
      for (const auto& n : *c.lattice()) {
        if (n.is_whole()) continue;
        Subgroup uc = u_rel_characters(*c.t, n);
        if (!(uc == c.nd(n).u)) o.fail("N = " + S(n) + ": kernels give " + S(uc));
      }
    });

    // --- U(G)
    add("Lem-VZ", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t)) return;
      bool vz = is_vz(*c.t);
      bool zv = c.Z == v_rel(c.Gp);
      bool ug = c.U == c.Gp;
      if (vz != zv || vz != ug) o.fail("VZ " + yn(vz) + ", Z = V(G) " + yn(zv) + ", U = G' " + yn(ug));
    });
    add("Lem-properties", [](Ctx& c, Out& o) {
      if (c.abelian) return;
      o.need(true);
      Subgroup meet = intersect(c.Gp, c.Z);
      Subgroup prod = product(c.Gp, c.Z);
      if (!(c.U <= meet && meet <= prod && prod <= v_rel(c.Gp))) o.fail("U = " + S(c.U) + ", V(G) = " + S(v_rel(c.Gp)));
    });
    add("Lem-semi-extraspecial", [](Ctx& c, Out& o) {
      if (c.g.order() == 1) return;
      o.need(true);
      bool lhs = c.U == v_rel(c.Gp);
      if (lhs != is_semi_extraspecial(c.g)) o.fail("U = V(G) is " + yn(lhs));
    });
    auto udg = [](int part) {
      return [part](Ctx& c, Out& o) {
        if (part == 3 && !o.need(c.t)) return;
        o.need(true);
        URoutes r = u_routes(c.g, c.t);
        const Subgroup& got = part == 1 ? r.via_d : part == 2 ? r.via_gamma : *r.via_kernels;
        if (!(got == r.definition)) o.fail("route gives " + S(got) + ", U = " + S(r.definition));
      };
    };
    add("Lem-UDg-1", udg(1));
    add("Lem-UDg-2", udg(2));
    add("Lem-UDg-3", udg(3));
    add("Lem-U-le-K", [](Ctx& c, Out& o) {
      o.need(true);
      if (!(c.U <= c.K)) o.fail("U = " + S(c.U) + ", K = " + S(c.K));
    });
    add("Cor-U-eq-K", [](Ctx& c, Out& o) {
      if (!(c.Z < c.ZU)) return;
      o.need(true);
      if (!(c.U == c.K)) o.fail("U = " + S(c.U) + ", K = " + S(c.K));
    });
    add("Lem-U-direct-prods-1", direct(false, 1));
    add("Lem-U-direct-prods-2", direct(false, 2));
    add("Lem-nontrivueqpq-1", [](Ctx& c, Out& o) {
      if (c.abelian || c.U.is_trivial()) return;
      o.need(true);
      if (!is_camina_triple(c.Z, c.U)) o.fail("(G, Z, U) is not a Camina triple");
    });
    add("Lem-nontrivueqpq-2", [](Ctx& c, Out& o) {
      if (c.abelian || c.U.is_trivial()) return;
      o.need(true);
      auto p = prime_of(c.U);
      if (!p || !is_nilpotent(c.g)) return o.fail("G is not nilpotent or U is not a p-group");
      std::vector<Elem> pe, qe;
      for (std::size_t x = 0; x < c.g.order(); ++x) {
        unsigned ord = c.g.elem_order(static_cast<Elem>(x));
        if (ord == 1 || prime_power_base(ord) == p) pe.push_back(static_cast<Elem>(x));
        if (ord % *p != 0) qe.push_back(static_cast<Elem>(x));
      }
      Subgroup q = subgroup_closure(c.g, qe);
      if (q.order() != qe.size() || q.order() * pe.size() != c.g.order())
        return o.fail("p'-elements do not form a complement");
      for (Elem a : q.generators())
        for (Elem b : q.generators())
          if (c.g.comm(a, b) != 0) return o.fail("Q is not abelian");
    });
    add("Lem-nontrivueqpq-3", [](Ctx& c, Out& o) {
      if (c.abelian || c.U.is_trivial()) return;
      o.need(true);
      auto p = prime_of(c.U);
      if (!p || !elementary_p(c.U, c.triv, *p)) o.fail("U = " + S(c.U));
    });
    add("Lem-centerproperty-1", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!(c.U <= n) && !(n <= c.Z)) o.fail("N = " + S(n));
    });
    add("Lem-centerproperty-2", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      for (const auto& n : *c.lattice())
        if (!(c.U <= n) && !(c.zn(n) == c.Z)) o.fail("N = " + S(n));
    });
    add("Lem-centerproperty-3", [](Ctx& c, Out& o) {
      if (!o.need(c.lattice())) return;
      for (const auto& n : *c.lattice()) {
        if (c.U <= n) continue;
        const Subgroup& uq = c.nd(n).uq;
        if (!(product(c.U, n) <= uq) || !(n < uq)) o.fail("N = " + S(n) + ", U(G/N) lifts to " + S(uq));
      }
    });
    add("Lem-centerproperty-4", [](Ctx& c, Out& o) {
      if (!(c.ZU == c.Z)) return;
      o.need(true);
      Subgroup uq = u_of_quotient(c.U);
      if (!(uq == c.U)) o.fail("U(G/U) lifts to " + S(uq));
    });
    add("Lem-equivconjs", [](Ctx& c, Out& o) {
      if (!c.p || c.abelian || c.U.is_trivial()) return;
      o.need(true);
      bool c1 = c.Z < c.ZU;
      bool c2 = false;
      for (Elem x : c.g.classes().representatives)
        if (c.br(x) == c.U) {
          c2 = true;
          o.witness = "g = " + E(c.g, x);
          break;
        }
      bool c3 = c.br(c.ZU) == c.U;
      if (c1 != c2 || c1 != c3) o.fail("(1) " + yn(c1) + ", (2) " + yn(c2) + ", (3) " + yn(c3));
    });
    add("Lem-mann-sub", [](Ctx& c, Out& o) {
      if (!c.p || !(c.Z < c.ZU)) return;
      o.need(true);
      const auto& cc = c.g.classes();
      std::size_t m = minimal_class_size(c.g);
      if (m != c.U.order()) o.fail("minimal class size " + std::to_string(m) + ", |U| = " + std::to_string(c.U.order()));
      for (std::size_t k = 0; k < cc.size(); ++k) {
        const auto& cls = cc.classes[k];
        Elem x = cls.front();
        if (cls.size() == m && !c.Z2.contains(x)) o.fail("minimal class of " + E(c.g, x) + " is outside Z_2");
        bool small = cls.size() <= c.U.order();
        std::vector<Elem> coset;
        for (Elem u : c.U.members()) coset.push_back(c.g.mul(x, u));
        std::sort(coset.begin(), coset.end());
        bool is_coset = coset == cls;
        bool in_zu = c.ZU.contains(x);
        if (in_zu != small || in_zu != (c.Z.contains(x) || is_coset)) o.fail("g = " + E(c.g, x));
      }
    });
    add("Lem-U-equiv", [](Ctx& c, Out& o) {
      if (!c.p || c.abelian || c.U.is_trivial()) return;
      if (!o.need(c.t && c.lattice())) return;
      bool c1 = c.Z < c.ZU;
      bool c2 = true;
      for (const auto& n : *c.lattice())
        if (!(c.U <= n) && !(c.nd(n).uq == product(c.U, n))) c2 = false;
      bool c3 = true;
      for (std::size_t i = 0; i < c.t->size(); ++i)
        if ((c.t->vanishing_off(i) <= c.Z) != !(c.U <= c.t->kernel(i))) c3 = false;
      if (c1 != c2 || c1 != c3) o.fail("(1) " + yn(c1) + ", (2) " + yn(c2) + ", (3) " + yn(c3));
    });
    add("Lem-U-eq-K", [](Ctx& c, Out& o) {
      auto uc = upper_central_series(c.g);
      bool class2 = !c.abelian && uc.terminal().is_whole() && uc.terms.size() == 3;
      if (!class2 && !(c.t && c.gvz())) return;
      o.need(true);
      if (!(c.U == c.K)) o.fail("U = " + S(c.U) + ", K = " + S(c.K));
    });
    add("Lem-U-series", [](Ctx& c, Out& o) {
      o.need(true);
      const auto& s = c.series();
      for (std::size_t i = 0; i < std::max(s.u.terms.size(), s.k.terms.size()); ++i) {
        if (!(s.u.at(i) <= s.k.at(i))) o.fail("U_" + std::to_string(i) + " is not inside K_" + std::to_string(i));
        if (s.u.at(i) < s.k.at(i) && !(s.u.at(i + 1) == s.u.at(i))) o.fail("U moves on after U_" + std::to_string(i) + " < K_" + std::to_string(i));
      }
    });
    add("Thm-nested-gvz-U", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t)) return;
      bool ng = c.nested() && c.gvz();
      const auto& u = c.series().u;
      if (ng != u.terminal().is_whole()) return o.fail("nested GVZ " + yn(ng) + ", U_inf = G " + yn(u.terminal().is_whole()));
      if (!ng) return;
      const auto& x = c.chain()->terms;
      const std::size_t n = x.size() - 1;
      for (std::size_t i = 0; i <= n; ++i)
        if (!(u.at(i) == c.br(x[n - i]))) o.fail("U_" + std::to_string(i) + " = " + S(u.at(i)));
    });
    add("Cor-nested-gvz-quotients", [](Ctx& c, Out& o) {
      if (!o.need(c.t && c.lattice())) return;
      bool all = true;
      for (const auto& n : *c.lattice())
        if (!n.is_whole() && c.nd(n).uq == n && all) {
          all = false;
          o.witness = "U(G/N) = 1 for N = " + S(n);
        }
      bool ng = c.nested() && c.gvz();
      if (all != ng) o.fail("nested GVZ " + yn(ng) + "; " + o.witness);
    });
    add("Thm-nested-gvz-3", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t && c.lattice())) return;
      witness_verdict(o, c.nested() && c.gvz(), witness_search(c, [&c](std::size_t i, const Subgroup&, const Subgroup& zn) {
                        return gvz3_target(c, i, zn);
                      }));
    });
    add("Thm-nested-gvz-3-2-implies-1", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t && c.lattice())) return;
      witness_converse(o, c.nested() && c.gvz(), witness_search(c, [&c](std::size_t i, const Subgroup&, const Subgroup& zn) {
                         return gvz3_target(c, i, zn);
                       }));
    });

    // --- delta and epsilon series
    add("Lem-contain", [](Ctx& c, Out& o) {
      o.need(true);
      const auto& d = c.series().delta;
      for (std::size_t i = 1; i < d.terms.size(); ++i)
        if (!(d.terms[i] <= d.terms[i - 1])) o.fail("delta_" + std::to_string(i + 1));
    });
    auto nb = [](int part) {
      return [part](Ctx& c, Out& o) {
        if ((part <= 3 && !o.need(c.lattice())) || (part == 5 && !o.need(c.t))) return;
        const auto& d = c.series().delta;
        // i runs over 1 .. one past the last stored term.
        for (std::size_t i = 1; i <= d.terms.size(); ++i) {
          const Subgroup& di = d.at(i - 1);
          const Subgroup& next = d.at(i);
          Subgroup D = c.br(di);
          std::string at = "i = " + std::to_string(i);
          if (part == 1) {
            ElemSet acc(c.g.order());
            acc.set(0);
            for (const auto& n : *c.lattice())
              if (!(D <= n)) acc |= c.zn(n).bits();
            Subgroup prod = subgroup_closure(c.g, acc);
            if (!(prod == next)) o.fail(at + ": product of Z_N = " + S(prod));
          } else if (part == 2) {
            for (const auto& n : *c.lattice())
              if (!((n <= c.zn(n) && c.zn(n) <= next) || D <= n)) o.fail(at + ", N = " + S(n));
          } else if (part == 3) {
            if (i < 2) continue;
            Subgroup Dp = c.br(d.at(i - 2));
            for (const auto& n : *c.lattice())
              if (D <= n && !(Dp <= n) && !(c.zn(n) == di)) o.fail(at + ", N = " + S(n));
          } else if (part == 4) {
            if (i < 2) continue;
            Subgroup Dp = c.br(d.at(i - 2));
            if (!(D < Dp)) continue;
            o.need(true);
            if (!(c.zn(D) == di)) o.fail(at);
          } else {
            if (!is_nested_over(*c.t, D).first) o.fail(at + ": G/[delta_i,G] is not nested");
          }
        }
      };
    };
    add("Lem-nested-basics-1", nb(1));
    add("Lem-nested-basics-2", nb(2));
    add("Lem-nested-basics-3", nb(3));
    add("Lem-nested-basics-4", nb(4));
    add("Lem-nested-basics-5", nb(5));
    add("Thm-delta-series", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t)) return;
      const auto& d = c.series().delta;
      if (c.nested() != d.terminal().is_trivial()) return o.fail("nested " + yn(c.nested()));
      if (!c.nested()) return;
      const auto& x = c.chain()->terms;
      for (std::size_t i = 1; i <= x.size(); ++i)
        if (!(d.at(i - 1) == x[i - 1])) o.fail("delta_" + std::to_string(i) + " = " + S(d.at(i - 1)));
    });
    add("Lem-containment", [](Ctx& c, Out& o) {
      o.need(true);
      const auto& s = c.series();
      std::size_t len = std::max(s.delta.terms.size(), s.epsilon.terms.size()) + 1;
      for (std::size_t i = 1; i < len; ++i)
        if (!(s.delta.at(i) <= s.epsilon.at(i) && s.epsilon.at(i) <= s.epsilon.at(i - 1))) o.fail("i = " + std::to_string(i));
    });
    add("Lem-Z-chi-eq-V-chi", [](Ctx& c, Out& o) {
      if (!o.need(c.t)) return;
      const Subgroup& uinf = c.series().u.terminal();
      for (std::size_t i = 0; i < c.t->size(); ++i) {
        bool over = !(c.U <= c.t->kernel(i)) || !(uinf <= c.t->kernel(i));
        if (over && !(c.zval(i) == c.t->vanishing_off(i))) o.fail("chi = " + std::to_string(i));
      }
    });
    add("Lem-ind-cond", [](Ctx& c, Out& o) {
      const auto& s = c.series();
      for (std::size_t i = 1; i < s.epsilon.terms.size(); ++i) {
        Subgroup lower = c.br(s.epsilon.at(i));
        Subgroup upper = c.br(s.epsilon.at(i - 1));
        if (!(lower < upper)) continue;
        o.need(true);
        if (!(s.delta.at(i) == s.epsilon.at(i))) o.fail("delta_" + std::to_string(i + 1) + " differs from epsilon_" + std::to_string(i + 1));
        if (!(upper <= u_of_quotient(lower))) o.fail("i = " + std::to_string(i));
      }
    });
    add("Lem-nested-gvz-quo", [](Ctx& c, Out& o) {
      const auto& s = c.series();
      for (std::size_t i = 1; i < s.epsilon.terms.size(); ++i) {
        Subgroup lower = c.br(s.epsilon.at(i));
        if (!(lower < c.br(s.epsilon.at(i - 1)))) continue;
        if (!o.need(c.t)) return;
        if (!is_nested_over(*c.t, lower).first || !is_gvz_over(*c.t, lower)) o.fail("i = " + std::to_string(i));
      }
    });
    add("Thm-epsilon-series", [](Ctx& c, Out& o) {
      if (c.abelian || !o.need(c.t)) return;
      bool ng = c.nested() && c.gvz();
      const auto& e = c.series().epsilon;
      if (ng != e.terminal().is_trivial()) return o.fail("nested GVZ " + yn(ng));
      if (!ng) return;
      const auto& x = c.chain()->terms;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (!(e.at(i) == x[i])) o.fail("epsilon_" + std::to_string(i + 1) + " = " + S(e.at(i)));
    });
    return r;
  }();
  return checks;
}

const std::set<std::string>& exploratory_ids() {
  static const std::set<std::string> ids = {"Lem-factor-exp-3-unconditional", "Thm-last-sect4-2-implies-1",
                                            "Thm-nested-gvz-3-2-implies-1"};
  return ids;
}

}  // namespace

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, f] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

bool is_theorem_id(std::string_view id) {
  const auto& ids = theorem_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<TheoremVerdict> verify_theorem_suite(const Group& g, const CharacterTable* t, const SuiteOptions& options) {
  if (options.only && !is_theorem_id(*options.only))
    throw Error(ErrorKind::PreconditionViolated, "unknown theorem id " + *options.only);
  Ctx ctx(g, t, options);
  std::vector<TheoremVerdict> out;
  for (const auto& [id, check] : registry()) {
    if (options.only && *options.only != id) continue;
    Out o;
    check(ctx, o);
    TheoremVerdict v;
    v.theorem_id = id;
    v.skipped = o.skipped && !o.applicable;
    v.applicable = o.applicable && !v.skipped;
    v.holds = v.applicable && o.holds;
    v.exploratory = exploratory_ids().count(id) > 0;
    v.witness = std::move(o.witness);
    out.push_back(std::move(v));
    if (out.back().applicable && !out.back().holds && !out.back().exploratory) break;
  }
  return out;
}

const TheoremVerdict* first_failure(const std::vector<TheoremVerdict>& verdicts) {
  for (const auto& v : verdicts)
    if (v.applicable && !v.holds && !v.exploratory) return &v;
  return nullptr;
}

}  // namespace nestkit
