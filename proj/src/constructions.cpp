#include "nestkit/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <boost/uuid/detail/sha1.hpp>

#include "nestkit/build.hpp"
#include "nestkit/error.hpp"
#include "nestkit/invariants.hpp"
#include "nestkit/quotient.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

namespace {

Provenance family_source(std::string description) {
  Provenance s;
  s.kind = "family";
  s.description = std::move(description);
  return s;
}

int mod(long long a, long long m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string join_ints(const Tuple& t, std::size_t from, std::size_t to) {
  std::string s;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) s += ",";
    s += std::to_string(t[i]);
  }
  return s;
}

// Multiplication and addition tables of F_q for the supported q.
struct SmallField {
  unsigned p = 0;
  unsigned degree = 1;
  unsigned q = 0;
  std::vector<int> add, mul;

  static SmallField make(unsigned q) {
    SmallField f;
    f.q = q;
    std::vector<int> modulus;  // monic, low to high
    if (is_prime(q)) {
      f.p = q;
    } else if (q == 4) {
      f.p = 2, f.degree = 2, modulus = {1, 1, 1};
    } else if (q == 8) {
      f.p = 2, f.degree = 3, modulus = {1, 1, 0, 1};
    } else if (q == 9) {
      f.p = 3, f.degree = 2, modulus = {2, 1, 1};
    } else {
      throw Error(ErrorKind::UnsupportedField, "no field arithmetic for q = " + std::to_string(q));
    }
    auto digits = [&](unsigned x) {
      std::vector<int> d(f.degree);
      for (unsigned i = 0; i < f.degree; ++i, x /= f.p) d[i] = static_cast<int>(x % f.p);
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int x = 0;
      for (unsigned i = f.degree; i-- > 0;) x = x * static_cast<int>(f.p) + d[i];
      return x;
    };
    f.add.resize(q * q);
    f.mul.resize(q * q);
    const int p = static_cast<int>(f.p);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        auto da = digits(a), db = digits(b);
        std::vector<int> s(f.degree);
        for (unsigned i = 0; i < f.degree; ++i) s[i] = (da[i] + db[i]) % p;
        f.add[a * q + b] = encode(s);
        std::vector<int> prod(2 * f.degree, 0);
        for (unsigned i = 0; i < f.degree; ++i)
          for (unsigned j = 0; j < f.degree; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (unsigned k = 2 * f.degree; k-- > f.degree;) {
          int c = prod[k];
          if (c == 0) continue;
          for (unsigned i = 0; i <= f.degree; ++i) prod[k - f.degree + i] = mod(prod[k - f.degree + i] - c * modulus[i], p);
        }
        prod.resize(f.degree);
        f.mul[a * q + b] = encode(prod);
      }
    return f;
  }

  int plus(int a, int b) const { return add[static_cast<std::size_t>(a) * q + b]; }
  int times(int a, int b) const { return mul[static_cast<std::size_t>(a) * q + b]; }
};

unsigned primitive_root(unsigned p) {
  for (unsigned g = 1; g < p; ++g) {
    unsigned x = 1, k = 0;
    do {
      x = x * g % p;
      ++k;
    } while (x != 1);
    if (k == p - 1) return g;
  }
  return 1;
}

std::vector<unsigned> cycle_images(unsigned degree, const std::vector<std::vector<unsigned>>& cycles) {
  std::vector<unsigned> im(degree);
  std::iota(im.begin(), im.end(), 0u);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) im[c[i]] = c[(i + 1) % c.size()];
  return im;
}

unsigned parse_uint(std::string_view s, std::string_view what) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::UnknownFamily, "bad parameter '" + std::string(s) + "' for " + std::string(what));
  return v;
}

}  // namespace

GroupPtr cyclic(unsigned n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::UnknownFamily, "cyclic: order must be positive");
  const int m = static_cast<int>(n);
  std::vector<Tuple> gens;
  if (n > 1) gens.push_back({1});
  return enumerate_group({0}, gens, [m](const Tuple& a, const Tuple& b) { return Tuple{(a[0] + b[0]) % m}; },
                         [](const Tuple& a) { return a[0] == 0 ? std::string("1") : "a^" + std::to_string(a[0]); },
                         cap, family_source("cyclic(" + std::to_string(n) + ")"));
}

GroupPtr abelian(const std::vector<unsigned>& orders, std::size_t cap) {
  const std::size_t k = orders.size();
  std::vector<Tuple> gens;
  for (std::size_t i = 0; i < k; ++i) {
    if (orders[i] == 0) throw Error(ErrorKind::UnknownFamily, "abelian: orders must be positive");
    if (orders[i] == 1) continue;
    Tuple g(k, 0);
    g[i] = 1;
    gens.push_back(std::move(g));
  }
  std::string desc = "abelian(";
  for (std::size_t i = 0; i < k; ++i) desc += (i ? "," : "") + std::to_string(orders[i]);
  desc += ")";
  return enumerate_group(
      Tuple(k, 0), gens,
      [orders](const Tuple& a, const Tuple& b) {
        Tuple r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % static_cast<int>(orders[i]);
        return r;
      },
      [k](const Tuple& a) { return "(" + join_ints(a, 0, k) + ")"; }, cap, family_source(desc));
}

GroupPtr elementary_abelian(unsigned p, unsigned rank, std::size_t cap) {
  if (!is_prime(p)) throw Error(ErrorKind::UnknownFamily, "elementary_abelian: p must be prime");
  return abelian(std::vector<unsigned>(rank, p), cap);
}

GroupPtr dihedral(unsigned n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::UnknownFamily, "dihedral: n must be positive");
  const int m = static_cast<int>(n);
  std::vector<Tuple> gens;
  if (n > 1) gens.push_back({1, 0});
  gens.push_back({0, 1});
  return enumerate_group(
      {0, 0}, gens,
      [m](const Tuple& a, const Tuple& b) { return Tuple{mod(a[0] + (a[1] ? -b[0] : b[0]), m), (a[1] + b[1]) % 2}; },
      [](const Tuple& a) {
        std::string s = a[0] ? "r^" + std::to_string(a[0]) : "";
        if (a[1]) s += s.empty() ? "s" : " s";
        return s.empty() ? std::string("1") : s;
      },
      cap, family_source("dihedral(" + std::to_string(n) + ")"));
}

GroupPtr dicyclic(unsigned n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::UnknownFamily, "dicyclic: n must be positive");
  const int m = static_cast<int>(2 * n), h = static_cast<int>(n);
  // x^i y^a with x^(2n) = 1, y^2 = x^n, y^-1 x y = x^-1.
  auto mul = [m, h](const Tuple& a, const Tuple& b) {
    if (!a[1]) return Tuple{mod(a[0] + b[0], m), b[1]};
    if (!b[1]) return Tuple{mod(a[0] - b[0], m), 1};
    return Tuple{mod(a[0] - b[0] + h, m), 0};
  };
  return enumerate_group({0, 0}, {{1, 0}, {0, 1}}, mul,
                         [](const Tuple& a) {
                           std::string s = a[0] ? "x^" + std::to_string(a[0]) : "";
                           if (a[1]) s += s.empty() ? "y" : " y";
                           return s.empty() ? std::string("1") : s;
                         },
                         cap, family_source("dicyclic(" + std::to_string(n) + ")"));
}

GroupPtr quaternion(unsigned order, std::size_t cap) {
  if (order < 8 || (order & (order - 1)) != 0)
    throw Error(ErrorKind::UnknownFamily, "quaternion: order must be a power of 2, at least 8");
  return dicyclic(order / 4, cap);
}

GroupPtr semidihedral(unsigned order, std::size_t cap) {
  if (order < 16 || (order & (order - 1)) != 0)
    throw Error(ErrorKind::UnknownFamily, "semidihedral: order must be a power of 2, at least 16");
  const int m = static_cast<int>(order / 2);
  const int twist = m / 2 - 1;  // s r s = r^(2^(k-2) - 1)
  auto mul = [m, twist](const Tuple& a, const Tuple& b) {
    return Tuple{mod(a[0] + (a[1] ? twist * b[0] : b[0]), m), (a[1] + b[1]) % 2};
  };
  return enumerate_group({0, 0}, {{1, 0}, {0, 1}}, mul,
                         [](const Tuple& a) {
                           std::string s = a[0] ? "r^" + std::to_string(a[0]) : "";
                           if (a[1]) s += s.empty() ? "s" : " s";
                           return s.empty() ? std::string("1") : s;
                         },
                         cap, family_source("semidihedral(" + std::to_string(order) + ")"));
}

GroupPtr symmetric(unsigned n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::UnknownFamily, "symmetric: n must be positive");
  PermGenerators spec{n, {}};
  if (n >= 2) {
    std::vector<unsigned> all(n);
    std::iota(all.begin(), all.end(), 0u);
    if (n > 2) spec.generators.push_back(cycle_images(n, {all}));
    spec.generators.push_back(cycle_images(n, {{0, 1}}));
  }
  return build_group(spec, cap, family_source("symmetric(" + std::to_string(n) + ")"));
}

GroupPtr alternating(unsigned n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::UnknownFamily, "alternating: n must be positive");
  PermGenerators spec{n, {}};
  if (n >= 3) {
    spec.generators.push_back(cycle_images(n, {{0, 1, 2}}));
    if (n >= 4) {
      std::vector<unsigned> c;
      for (unsigned i = (n % 2 ? 0 : 1); i < n; ++i) c.push_back(i);
      spec.generators.push_back(cycle_images(n, {c}));
    }
  }
  return build_group(spec, cap, family_source("alternating(" + std::to_string(n) + ")"));
}

GroupPtr extraspecial(unsigned p, unsigned n, ExtraspecialType type, std::size_t cap) {
  if (!is_prime(p) || n == 0) throw Error(ErrorKind::UnknownFamily, "extraspecial: need a prime p and n >= 1");
  const bool minus = type == ExtraspecialType::Minus;
  const std::string desc = "extraspecial(" + std::to_string(p) + "," + std::to_string(n) + "," +
                           (minus ? "minus" : "plus") + ")";
  const int P = static_cast<int>(p);
  const std::size_t N = n;
  std::vector<Tuple> gens;
  TupleMul mul;
  Tuple id;
  if (p == 2) {
    // (x, c) with x in F_2^(2n) and the cocycle sum x_{2i} y_{2i+1}; the
    // minus type adds x_0 y_0 + x_1 y_1 so that the first pair spans Q8.
    id.assign(2 * N + 1, 0);
    for (std::size_t j = 0; j < 2 * N; ++j) {
      Tuple g(2 * N + 1, 0);
      g[j] = 1;
      gens.push_back(std::move(g));
    }
    mul = [N, minus](const Tuple& a, const Tuple& b) {
      Tuple r(a.size());
      int c = a[2 * N] ^ b[2 * N];
      for (std::size_t i = 0; i < N; ++i) c ^= a[2 * i] & b[2 * i + 1];
      if (minus) c ^= (a[0] & b[0]) ^ (a[1] & b[1]);
      for (std::size_t j = 0; j < 2 * N; ++j) r[j] = a[j] ^ b[j];
      r[2 * N] = c;
      return r;
    };
  } else if (!minus) {
    // (a, b, c) with a, b in F_p^n and c + c' + a.b'.
    id.assign(2 * N + 1, 0);
    for (std::size_t j = 0; j < 2 * N; ++j) {
      Tuple g(2 * N + 1, 0);
      g[j] = 1;
      gens.push_back(std::move(g));
    }
    mul = [N, P](const Tuple& a, const Tuple& b) {
      Tuple r(a.size());
      long long c = a[2 * N] + b[2 * N];
      for (std::size_t i = 0; i < N; ++i) c += static_cast<long long>(a[i]) * b[N + i];
      for (std::size_t j = 0; j < 2 * N; ++j) r[j] = (a[j] + b[j]) % P;
      r[2 * N] = mod(c, P);
      return r;
    };
  } else {
    // (i, j, a, b): i mod p^2 and j mod p form M(p) with
    // (i,j)(i',j') = (i + i'(1+p)^j, j + j'); a, b in F_p^(n-1) contribute
    // p * a.b' to the central part.
    const std::size_t m = N - 1;
    const int P2 = P * P;
    id.assign(2 + 2 * m, 0);
    for (std::size_t j = 0; j < 2 + 2 * m; ++j) {
      Tuple g(2 + 2 * m, 0);
      g[j] = 1;
      gens.push_back(std::move(g));
    }
    mul = [m, P, P2](const Tuple& a, const Tuple& b) {
      Tuple r(a.size());
      long long twist = 1;
      for (int k = 0; k < a[1]; ++k) twist = twist * (1 + P) % P2;
      long long i = a[0] + b[0] * twist;
      for (std::size_t k = 0; k < m; ++k) i += static_cast<long long>(P) * a[2 + k] * b[2 + m + k];
      r[0] = mod(i, P2);
      r[1] = (a[1] + b[1]) % P;
      for (std::size_t k = 2; k < a.size(); ++k) r[k] = (a[k] + b[k]) % P;
      return r;
    };
  }
  return enumerate_group(id, gens, mul, [](const Tuple& a) { return "(" + join_ints(a, 0, a.size()) + ")"; },
                         cap, family_source(desc));
}

GroupPtr heisenberg(unsigned q, std::size_t cap) {
  const SmallField f = SmallField::make(q);
  const std::size_t q3 = static_cast<std::size_t>(q) * q * q;
  if (q3 > cap) throw Error(ErrorKind::OrderCapExceeded, "heisenberg: q^3 exceeds cap " + std::to_string(cap));
  std::vector<Tuple> gens;
  int e = 1;
  for (unsigned i = 0; i < f.degree; ++i, e *= static_cast<int>(f.p)) {
    gens.push_back({e, 0, 0});
    gens.push_back({0, e, 0});
  }
  // [[1,a,c],[0,1,b],[0,0,1]] stored as (a, b, c).
  auto mul = [f](const Tuple& x, const Tuple& y) {
    return Tuple{f.plus(x[0], y[0]), f.plus(x[1], y[1]), f.plus(f.plus(x[2], y[2]), f.times(x[0], y[1]))};
  };
  return enumerate_group({0, 0, 0}, gens, mul, [](const Tuple& a) { return "[" + join_ints(a, 0, 3) + "]"; }, cap,
                         family_source("heisenberg(" + std::to_string(q) + ")"));
}

GroupPtr wreath_cpcp(unsigned p, std::size_t cap) {
  if (!is_prime(p)) throw Error(ErrorKind::UnknownFamily, "wreath_cpcp: p must be prime");
  const unsigned d = p * p;
  std::vector<unsigned> base(d), top(d);
  std::iota(base.begin(), base.end(), 0u);
  for (unsigned j = 0; j < p; ++j) base[j] = (j + 1) % p;
  for (unsigned b = 0; b < p; ++b)
    for (unsigned j = 0; j < p; ++j) top[b * p + j] = ((b + 1) % p) * p + j;
  return build_group(PermGenerators{d, {base, top}}, cap, family_source("wreath(" + std::to_string(p) + ")"));
}

GroupPtr sl2(unsigned p, std::size_t cap) {
  if (!is_prime(p)) throw Error(ErrorKind::UnknownFamily, "sl2: p must be prime");
  MatrixGenerators spec{p, 2, {{1, 1, 0, 1}, {0, p - 1, 1, 0}}};
  return build_group(spec, cap, family_source("sl2(" + std::to_string(p) + ")"));
}

GroupPtr gl2(unsigned p, std::size_t cap) {
  if (!is_prime(p)) throw Error(ErrorKind::UnknownFamily, "gl2: p must be prime");
  MatrixGenerators spec{p, 2, {{1, 1, 0, 1}, {0, p - 1, 1, 0}, {primitive_root(p), 0, 0, 1}}};
  return build_group(spec, cap, family_source("gl2(" + std::to_string(p) + ")"));
}

GroupPtr psl2(unsigned p, std::size_t cap) {
  GroupPtr s = sl2(p, cap);
  QuotientMap q = quotient(*s, center(*s));
  const Group& t = *q.target;
  std::vector<Elem> table(t.table().begin(), t.table().end());
  std::vector<std::string> labels(t.labels().begin(), t.labels().end());
  std::vector<Elem> gens(t.generators().begin(), t.generators().end());
  return std::make_shared<const Group>(std::move(table), std::move(labels), std::move(gens),
                                       family_source("psl2(" + std::to_string(p) + ")"));
}

GroupPtr standard_family(std::string_view name, const std::vector<std::string>& params, std::size_t cap) {
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw Error(ErrorKind::UnknownFamily,
                  std::string(name) + " takes " + std::to_string(k) + " parameter" + (k == 1 ? "" : "s"));
  };
  auto arg = [&](std::size_t i) { return parse_uint(params[i], name); };
  if (name == "cyclic") return need(1), cyclic(arg(0), cap);
  if (name == "elementary_abelian") return need(2), elementary_abelian(arg(0), arg(1), cap);
  if (name == "abelian") {
    std::vector<unsigned> orders;
    for (std::size_t i = 0; i < params.size(); ++i) orders.push_back(arg(i));
    return abelian(orders, cap);
  }
  if (name == "dihedral") return need(1), dihedral(arg(0), cap);
  if (name == "dicyclic") return need(1), dicyclic(arg(0), cap);
  if (name == "quaternion") return need(1), quaternion(arg(0), cap);
  if (name == "semidihedral") return need(1), semidihedral(arg(0), cap);
  if (name == "symmetric") return need(1), symmetric(arg(0), cap);
  if (name == "alternating") return need(1), alternating(arg(0), cap);
  if (name == "extraspecial") {
    need(3);
    ExtraspecialType t;
    if (params[2] == "plus" || params[2] == "+") t = ExtraspecialType::Plus;
    else if (params[2] == "minus" || params[2] == "-") t = ExtraspecialType::Minus;
    else throw Error(ErrorKind::UnknownFamily, "extraspecial: type must be plus or minus");
    return extraspecial(arg(0), arg(1), t, cap);
  }
  if (name == "heisenberg") return need(1), heisenberg(arg(0), cap);
  if (name == "wreath") return need(1), wreath_cpcp(arg(0), cap);
  if (name == "sl2") return need(1), sl2(arg(0), cap);
  if (name == "gl2") return need(1), gl2(arg(0), cap);
  if (name == "psl2") return need(1), psl2(arg(0), cap);
  throw Error(ErrorKind::UnknownFamily, "unknown family '" + std::string(name) + "'");
}

Section8Group section8_quotient(const GroupPtr& h, const GroupPtr& k, const std::vector<Elem>& xs,
                                const std::vector<Elem>& ys, std::optional<std::pair<Elem, Elem>> extension,
                                std::size_t cap) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::HypothesisViolated, what); };
  auto ph = prime_power_base(h->order());
  auto pk = prime_power_base(k->order());
  if (!ph || !pk || *ph != *pk) fail("H and K are not p-groups for one prime p");
  const unsigned p = *ph;
  if (xs.size() != ys.size()) fail("xs and ys have different lengths");
  const auto l = static_cast<unsigned>(xs.size());
  std::size_t pl = 1;
  for (unsigned i = 0; i < l; ++i) pl *= p;

  const Subgroup uh = u_subgroup(*h), uk = u_subgroup(*k);
  const Subgroup zh = center(*h), zk = center(*k);
  const Subgroup dh = derived_subgroup(*h), dk = derived_subgroup(*k);
  for (Elem x : xs)
    if (x >= h->order() || !uh.contains(x)) fail("x_i is not in U(H)");
  for (Elem y : ys)
    if (y >= k->order() || !uk.contains(y)) fail("y_i is not in U(K)");
  const Subgroup xsub = subgroup_closure(*h, xs), ysub = subgroup_closure(*k, ys);
  if (xsub.order() != pl) fail("|<x_1..x_l>| != p^l");
  if (ysub.order() != pl) fail("|<y_1..y_l>| != p^l");
  if (pl > uh.order()) fail("p^l > |U(H)|");
  if (pl > uk.order()) fail("p^l > |U(K)|");
  if (pl >= zh.order()) fail("p^l >= |Z(H)|");
  if (pl >= dh.order()) fail("p^l >= |H'|");
  if (pl >= zk.order()) fail("p^l >= |Z(K)|");
  if (pl >= dk.order()) fail("p^l >= |K'|");
  if (extension) {
    auto [u, v] = *extension;
    if (u >= h->order() || !uh.contains(u) || xsub.contains(u)) fail("u is not in U(H) \\ <xs>");
    if (v >= k->order() || !uk.contains(v) || ysub.contains(v)) fail("v is not in U(K) \\ <ys>");
  }
  const std::size_t full = h->order() * k->order();
  if (full / pl > cap) throw Error(ErrorKind::OrderCapExceeded, "section8_quotient: |H||K|/p^l exceeds cap");
  if (full > kMaxOrderCap) throw Error(ErrorKind::OrderCapExceeded, "section8_quotient: |H||K| exceeds index width");

  GroupPtr prod = direct_product(h, k, full);
  const std::size_t kn = k->order();
  auto pair = [kn](Elem a, Elem b) { return static_cast<Elem>(a * kn + b); };
  std::vector<Elem> ngens;
  for (unsigned i = 0; i < l; ++i) ngens.push_back(pair(xs[i], ys[i]));
  const Subgroup nsub = subgroup_closure(*prod, ngens);
  QuotientMap q = quotient(*prod, nsub);

  Section8Group out;
  out.product = prod;
  out.p = p;
  out.l = l;
  out.expected_u_order = pl;
  std::string desc = "section8(" + h->source().description + ", " + k->source().description + ", l=" +
                     std::to_string(l) + (extension ? ", extended" : "") + ")";
  const Group& t = *q.target;
  out.group = std::make_shared<const Group>(std::vector<Elem>(t.table().begin(), t.table().end()),
                                            std::vector<std::string>(t.labels().begin(), t.labels().end()),
                                            std::vector<Elem>(t.generators().begin(), t.generators().end()),
                                            Provenance{"section8", desc, {h, k}, {}});
  auto image_of = [&](const std::vector<Elem>& src) {
    ElemSet bits(t.order());
    for (Elem a : src) bits.set(q.project(a));
    std::vector<Elem> out_members;
    for (auto i = bits.find_first(); i != ElemSet::npos; i = bits.find_next(i)) out_members.push_back(static_cast<Elem>(i));
    return out_members;
  };
  std::vector<Elem> xy, zz;
  for (Elem a : xsub.members())
    for (Elem b : ysub.members()) xy.push_back(pair(a, b));
  for (Elem a : zh.members())
    for (Elem b : zk.members()) zz.push_back(pair(a, b));
  out.m_members = image_of(xy);
  out.central_members = image_of(zz);
  if (extension) {
    std::vector<Elem> lg = ngens;
    lg.push_back(pair(extension->first, extension->second));
    const Subgroup lsub = subgroup_closure(*prod, lg);
    out.l_members = image_of(std::vector<Elem>(lsub.members().begin(), lsub.members().end()));
  }
  return out;
}

Section8Group section8_heisenberg(unsigned q, unsigned l, bool extended, std::size_t cap) {
  GroupPtr h = heisenberg(q, cap);
  const Subgroup u = u_subgroup(*h);
  std::vector<Elem> basis;
  for (Elem x : u.members())
    if (!subgroup_closure(*h, basis).contains(x)) basis.push_back(x);
  const std::size_t need = l + (extended ? 1 : 0);
  if (basis.size() < need) throw Error(ErrorKind::HypothesisViolated, "U(H) has too small a rank for l");
  std::vector<Elem> xs(basis.begin(), basis.begin() + l);
  std::optional<std::pair<Elem, Elem>> ext;
  if (extended) ext = std::make_pair(basis[l], basis[l]);
  return section8_quotient(h, h, xs, xs, ext, cap);
}

std::string sha1_hex(std::string_view bytes) {
  boost::uuids::detail::sha1 h;
  h.process_bytes(bytes.data(), bytes.size());
  unsigned int digest[5];
  h.get_digest(digest);
  char buf[41];
  for (int i = 0; i < 5; ++i) std::snprintf(buf + 8 * i, 9, "%08x", digest[i]);
  return std::string(buf, 40);
}

namespace {

struct LineCursor {
  std::string_view text;
  std::size_t line;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, pos + 1, msg); }
  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  unsigned number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) fail("expected a number");
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + start, text.data() + pos, v);
    if (ec != std::errc() || ptr != text.data() + pos) {
      pos = start;
      fail("number out of range");
    }
    return v;
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r') ++pos;
    return std::string(text.substr(start, pos - start));
  }
};

std::vector<unsigned> parse_perm_line(LineCursor& cur, unsigned degree, std::vector<std::vector<unsigned>>& out) {
  // One or more generators separated by commas; each is a product of cycles.
  while (!cur.done()) {
    std::vector<std::vector<unsigned>> cycles;
    std::vector<char> used(degree);
    bool any = false;
    while (cur.peek('(')) {
      any = true;
      const std::size_t open = cur.pos;
      ++cur.pos;
      std::vector<unsigned> cyc;
      while (true) {
        cur.skip_ws();
        if (cur.pos >= cur.text.size()) {
          cur.pos = open;
          cur.fail("unterminated cycle");
        }
        if (cur.text[cur.pos] == ')') {
          ++cur.pos;
          break;
        }
        if (cur.text[cur.pos] == ',') {
          ++cur.pos;
          continue;
        }
        const std::size_t at = cur.pos;
        unsigned x = cur.number();
        if (x < 1 || x > degree) {
          cur.pos = at;
          cur.fail("point " + std::to_string(x) + " outside 1.." + std::to_string(degree));
        }
        if (used[x - 1]) {
          cur.pos = at;
          cur.fail("point " + std::to_string(x) + " repeated");
        }
        used[x - 1] = 1;
        cyc.push_back(x - 1);
      }
      if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    }
    if (!any) cur.fail("expected '('");
    out.push_back(cycle_images(degree, cycles));
    if (cur.done()) break;
    if (!cur.peek(',')) cur.fail("expected ',' between generators");
    ++cur.pos;
  }
  return {};
}

}  // namespace

GroupPtr parse_group_text(std::string_view text, std::size_t cap) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t lineno = 0;
  for (std::size_t start = 0; start <= text.size();) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    std::string_view ln = text.substr(start, end - start);
    if (auto hash = ln.find('#'); hash != std::string_view::npos) ln = ln.substr(0, hash);
    if (ln.find_first_not_of(" \t\r") != std::string_view::npos) lines.emplace_back(lineno, ln);
    start = end + 1;
  }
  if (lines.empty()) throw ParseError(lineno, 1, "missing header line");

  LineCursor head{lines[0].second, lines[0].first};
  const std::string kind = head.word();
  Provenance src;
  src.kind = "file";
  src.file_hash = sha1_hex(text);
  src.description = "group file " + src.file_hash.substr(0, 12);
  GeneratorSpec spec;
  if (kind == "perm") {
    PermGenerators g{head.number(), {}};
    if (!head.done()) head.fail("unexpected text after header");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      LineCursor cur{lines[i].second, lines[i].first};
      parse_perm_line(cur, g.degree, g.generators);
    }
    spec = std::move(g);
  } else if (kind == "matmod") {
    MatrixGenerators g;
    g.p = head.number();
    g.dim = head.number();
    if (!head.done()) head.fail("unexpected text after header");
    if (g.dim == 0) head.fail("dimension must be positive");
    for (std::size_t i = 1; i < lines.size(); ++i) {
      LineCursor cur{lines[i].second, lines[i].first};
      std::vector<unsigned> m;
      while (!cur.done()) {
        const std::size_t at = cur.pos;
        unsigned v = cur.number();
        if (v >= g.p) {
          cur.pos = at;
          cur.fail("entry " + std::to_string(v) + " is not reduced mod " + std::to_string(g.p));
        }
        m.push_back(v);
        if (cur.peek(',')) ++cur.pos;
      }
      if (m.size() != static_cast<std::size_t>(g.dim) * g.dim)
        cur.fail("expected " + std::to_string(g.dim * g.dim) + " entries, got " + std::to_string(m.size()));
      g.generators.push_back(std::move(m));
    }
    spec = std::move(g);
  } else if (kind == "table") {
    const unsigned n = head.number();
    if (!head.done()) head.fail("unexpected text after header");
    CayleyTable g;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      LineCursor cur{lines[i].second, lines[i].first};
      std::vector<unsigned> row;
      while (!cur.done()) {
        const std::size_t at = cur.pos;
        unsigned v = cur.number();
        if (v >= n) {
          cur.pos = at;
          cur.fail("entry " + std::to_string(v) + " out of range");
        }
        row.push_back(v);
        if (cur.peek(',')) ++cur.pos;
      }
      if (row.size() != n) cur.fail("expected " + std::to_string(n) + " entries");
      g.rows.push_back(std::move(row));
    }
    if (g.rows.size() != n)
      throw ParseError(lines.back().first, 1, "expected " + std::to_string(n) + " rows, got " + std::to_string(g.rows.size()));
    spec = std::move(g);
  } else {
    throw ParseError(lines[0].first, 1, "unknown header '" + kind + "' (expected perm, matmod or table)");
  }
  return build_group(spec, cap, std::move(src));
}

GroupPtr parse_group_file(const std::filesystem::path& path, std::size_t cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  GroupPtr g = parse_group_text(ss.str(), cap);
  return g;
}

}  // namespace nestkit
