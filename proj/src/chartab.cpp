#include "nestkit/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nestkit/error.hpp"
#include "nestkit/quotient.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return a * b % p; }
  u64 pow(u64 a, u64 k) const {
    u64 r = 1;
    for (a %= p; k; k >>= 1, a = a * a % p)
      if (k & 1) r = r * a % p;
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 primitive_root(u64 p) {
  std::vector<u64> qs;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      qs.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) qs.push_back(m);
  Fp f{p};
  for (u64 g = 2; g < p; ++g)
    if (std::all_of(qs.begin(), qs.end(), [&](u64 q) { return f.pow(g, (p - 1) / q) != 1; })) return g;
  throw Error(ErrorKind::Internal, "no primitive root");
}

// Row-reduces `rows` (each of length n) in place to reduced echelon form and
// drops zero rows. Returns pivot columns.
std::vector<std::size_t> rref(std::vector<Vec>& rows, const Fp& f) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t n = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    u64 iv = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, iv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      u64 m = rows[i][c];
      for (std::size_t j = c; j < n; ++j)
        if (rows[r][j]) rows[i][j] = f.sub(rows[i][j], f.mul(m, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

struct Hessenberg {
  std::vector<Vec> h;     // upper Hessenberg, similar to the input
  std::vector<Vec> tinv;  // columns map eigenvectors of h back to the input basis
};

Hessenberg to_hessenberg(std::vector<Vec> a, const Fp& f) {
  const std::size_t d = a.size();
  std::vector<Vec> t(d, Vec(d, 0));
  for (std::size_t i = 0; i < d; ++i) t[i][i] = 1;
  for (std::size_t c = 0; c + 2 < d; ++c) {
    std::size_t piv = c + 1;
    while (piv < d && a[piv][c] == 0) ++piv;
    if (piv == d) continue;
    if (piv != c + 1) {
      std::swap(a[piv], a[c + 1]);
      for (std::size_t i = 0; i < d; ++i) std::swap(a[i][piv], a[i][c + 1]);
      for (std::size_t i = 0; i < d; ++i) std::swap(t[i][piv], t[i][c + 1]);
    }
    u64 iv = f.inv(a[c + 1][c]);
    for (std::size_t k = c + 2; k < d; ++k) {
      if (a[k][c] == 0) continue;
      u64 m = f.mul(a[k][c], iv);
      for (std::size_t j = 0; j < d; ++j)
        if (a[c + 1][j]) a[k][j] = f.sub(a[k][j], f.mul(m, a[c + 1][j]));
      for (std::size_t i = 0; i < d; ++i) {
        if (a[i][k]) a[i][c + 1] = f.add(a[i][c + 1], f.mul(m, a[i][k]));
        if (t[i][k]) t[i][c + 1] = f.add(t[i][c + 1], f.mul(m, t[i][k]));
      }
    }
  }
  return {std::move(a), std::move(t)};
}

// Characteristic polynomial det(xI - H), constant term first.
Vec charpoly(const std::vector<Vec>& h, const Fp& f) {
  const std::size_t d = h.size();
  std::vector<Vec> p(d + 1);
  p[0] = Vec{1};
  for (std::size_t k = 1; k <= d; ++k) {
    Vec cur(k + 1, 0);
    // (x - h[k-1][k-1]) p[k-1]
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      cur[i + 1] = f.add(cur[i + 1], p[k - 1][i]);
      cur[i] = f.sub(cur[i], f.mul(h[k - 1][k - 1], p[k - 1][i]));
    }
    u64 prod = 1;
    for (std::size_t i = 1; i < k; ++i) {
      prod = f.mul(prod, h[k - i][k - i - 1]);
      if (prod == 0) break;
      u64 coef = f.mul(prod, h[k - i - 1][k - 1]);
      if (coef == 0) continue;
      for (std::size_t j = 0; j < p[k - i - 1].size(); ++j) cur[j] = f.sub(cur[j], f.mul(coef, p[k - i - 1][j]));
    }
    p[k] = std::move(cur);
  }
  return p[d];
}

// Null space of the upper Hessenberg matrix m. Forward elimination only ever
// combines rows that are still candidates for the current column, which keeps
// the cost quadratic times (1 + nullity).
std::vector<Vec> hessenberg_nullspace(std::vector<Vec> m, const Fp& f) {
  const std::size_t d = m.size();
  std::vector<char> used(d, 0);
  std::vector<std::size_t> pivot_row(d, SIZE_MAX);
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t limit = std::min(d, c + 2);
    std::size_t piv = SIZE_MAX;
    for (std::size_t r = 0; r < limit; ++r)
      if (!used[r] && m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == SIZE_MAX) {
      free_cols.push_back(c);
      continue;
    }
    used[piv] = 1;
    pivot_row[c] = piv;
    u64 iv = f.inv(m[piv][c]);
    for (std::size_t j = c; j < d; ++j) m[piv][j] = f.mul(m[piv][j], iv);
    for (std::size_t r = 0; r < limit; ++r) {
      if (used[r] || m[r][c] == 0) continue;
      u64 k = m[r][c];
      for (std::size_t j = c; j < d; ++j)
        if (m[piv][j]) m[r][j] = f.sub(m[r][j], f.mul(k, m[piv][j]));
    }
  }
  std::vector<Vec> out;
  for (std::size_t fc : free_cols) {
    Vec x(d, 0);
    x[fc] = 1;
    for (std::size_t c = d; c-- > 0;) {
      if (pivot_row[c] == SIZE_MAX) continue;
      const Vec& row = m[pivot_row[c]];
      u64 s = 0;
      for (std::size_t j = c + 1; j < d; ++j)
        if (row[j] && x[j]) s = f.add(s, f.mul(row[j], x[j]));
      x[c] = s == 0 ? 0 : f.sub(0, s);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Reduced-basis products summed without reduction; reduced once at the end.
struct Accumulator {
  const CyclotomicField& field;
  std::vector<std::int64_t> raw;
  explicit Accumulator(const CyclotomicField& fld)
      : field(fld), raw(std::max<std::size_t>(fld.e(), 2 * fld.degree()), 0) {}
  void add_product(const CyclotomicInt& a, const CyclotomicInt& b, std::int64_t scale) {
    const unsigned d = field.degree();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (unsigned i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      std::int64_t xi = x[i] * scale;
      for (unsigned j = 0; j < d; ++j) raw[i + j] += xi * y[j];
    }
  }
  bool equals_integer(std::int64_t v) const {
    const unsigned d = field.degree();
    std::vector<std::int64_t> out(d, 0);
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (raw[j] == 0) continue;
      const auto& pw = field.power(static_cast<unsigned>(j));
      for (unsigned i = 0; i < d; ++i) out[i] += raw[j] * pw[i];
    }
    if (out[0] != v) return false;
    for (unsigned i = 1; i < d; ++i)
      if (out[i] != 0) return false;
    return true;
  }
};

Subgroup union_of_classes(const Group& g, const std::vector<char>& take) {
  const auto& cc = g.classes();
  ElemSet bits(g.order());
  for (std::size_t c = 0; c < cc.size(); ++c)
    if (take[c])
      for (Elem x : cc.classes[c]) bits.set(x);
  return subgroup_closure(g, bits);
}

}  // namespace

std::uint64_t dixon_prime(std::size_t order, unsigned exponent) {
  auto root = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  while (root * root < order) ++root;
  const u64 bound = 2 * root;
  for (u64 p = exponent + 1; p < (u64{1} << 31); p += exponent)
    if (p > bound && is_prime(p)) return p;
  throw Error(ErrorKind::PrimeSearchFailed, "no prime below 2^31 congruent to 1 mod " + std::to_string(exponent));
}

CharacterTable character_table(const Group& g) {
  const auto& cc = g.classes();
  const std::size_t r = cc.size();
  const std::size_t n = g.order();
  const unsigned e = g.exponent();
  const Fp f{dixon_prime(n, e)};

  std::vector<u64> h(r);
  for (std::size_t c = 0; c < r; ++c) h[c] = cc.classes[c].size();
  std::vector<std::size_t> inverse_class(r);
  for (std::size_t c = 0; c < r; ++c) inverse_class[c] = cc.class_of[g.inv(cc.representatives[c])];

  // a_{jkl} = #{x in C_j : x^-1 z_l in C_k}, stored as a[k*r + l].
  auto class_matrix = [&](std::size_t j) {
    std::vector<u64> a(r * r, 0);
    for (Elem x : cc.classes[j]) {
      Elem xi = g.inv(x);
      for (std::size_t l = 0; l < r; ++l) ++a[cc.class_of[g.mul(xi, cc.representatives[l])] * r + l];
    }
    for (auto& v : a) v %= f.p;
    return a;
  };

  // Subspaces as reduced echelon bases of row vectors in F_p^r.
  std::vector<std::vector<Vec>> spaces;
  {
    std::vector<Vec> id(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(std::move(id));
  }
  for (std::size_t j = 1; j < r; ++j) {
    if (std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.size() == 1; })) break;
    const std::vector<u64> a = class_matrix(j);
    std::vector<std::vector<Vec>> next;
    for (auto& basis : spaces) {
      const std::size_t d = basis.size();
      if (d == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::vector<std::size_t> piv(d);
      for (std::size_t m = 0; m < d; ++m) {
        std::size_t c = 0;
        while (basis[m][c] == 0) ++c;
        piv[m] = c;
      }
      // Restriction: b[m][i] = (A_j basis_i)[piv_m].
      std::vector<Vec> b(d, Vec(d, 0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t m = 0; m < d; ++m) {
          const u64* row = &a[piv[m] * r];
          u64 s = 0;
          for (std::size_t l = 0; l < r; ++l)
            if (row[l] && basis[i][l]) s = (s + row[l] * basis[i][l]) % f.p;
          b[m][i] = s;
        }
      Hessenberg hs = to_hessenberg(b, f);
      Vec poly = charpoly(hs.h, f);
      std::vector<u64> roots;
      for (u64 lam = 0; lam < f.p; ++lam) {
        u64 v = 0;
        for (std::size_t k = poly.size(); k-- > 0;) v = f.add(f.mul(v, lam), poly[k]);
        if (v == 0) roots.push_back(lam);
      }
      if (roots.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::size_t total = 0;
      for (u64 lam : roots) {
        std::vector<Vec> m = hs.h;
        for (std::size_t i = 0; i < d; ++i) m[i][i] = f.sub(m[i][i], lam);
        std::vector<Vec> sub;
        for (const Vec& y : hessenberg_nullspace(std::move(m), f)) {
          Vec x(d, 0);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
              if (hs.tinv[i][k] && y[k]) x[i] = f.add(x[i], f.mul(hs.tinv[i][k], y[k]));
          Vec v(r, 0);
          for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t l = 0; l < r; ++l)
              if (basis[i][l]) v[l] = f.add(v[l], f.mul(x[i], basis[i][l]));
          }
          sub.push_back(std::move(v));
        }
        rref(sub, f);
        total += sub.size();
        next.push_back(std::move(sub));
      }
      if (total != d) throw Error(ErrorKind::Internal, "class matrix is not diagonalizable modulo p");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw Error(ErrorKind::Internal, "eigenspaces did not split into lines");

  // Power maps for every k dividing e.
  std::map<unsigned, std::vector<std::uint32_t>> power_maps;
  for (unsigned k = 1; k <= e; ++k) {
    if (e % k) continue;
    std::vector<std::uint32_t> pm(r);
    for (std::size_t c = 0; c < r; ++c) pm[c] = cc.class_of[g.pow(cc.representatives[c], k)];
    power_maps.emplace(k, std::move(pm));
  }

  const u64 zeta_e = f.pow(primitive_root(f.p), (f.p - 1) / e);
  std::vector<Character> rows;
  for (auto& sp : spaces) {
    Vec w = sp[0];
    if (w[0] == 0) throw Error(ErrorKind::Internal, "eigenvector vanishes at the identity class");
    u64 w0 = f.inv(w[0]);
    for (auto& x : w) x = f.mul(x, w0);
    u64 s = 0;
    for (std::size_t l = 0; l < r; ++l) s = f.add(s, f.mul(f.mul(w[l], w[inverse_class[l]]), f.inv(h[l] % f.p)));
    u64 d2 = f.mul(n % f.p, f.inv(s));
    u64 deg = 0;
    for (u64 d = 1; 2 * d < f.p; ++d)
      if (d * d % f.p == d2) {
        deg = d;
        break;
      }
    if (deg == 0) throw Error(ErrorKind::Internal, "no admissible degree");
    Vec chi(r);
    for (std::size_t l = 0; l < r; ++l) chi[l] = f.mul(f.mul(deg, w[l]), f.inv(h[l] % f.p));

    Character ch;
    ch.degree = static_cast<unsigned>(deg);
    ch.values.reserve(r);
    ch.scalar_root.assign(r, -1);
    for (std::size_t l = 0; l < r; ++l) {
      const Elem rep = cc.representatives[l];
      const unsigned o = g.elem_order(rep);
      const u64 zo = f.pow(zeta_e, e / o);
      const u64 oinv = f.inv(o % f.p);
      std::vector<u64> vals(o);
      Elem y = 0;
      for (unsigned s2 = 0; s2 < o; ++s2) {
        vals[s2] = chi[cc.class_of[y]];
        y = g.mul(y, rep);
      }
      std::vector<std::int64_t> raw(e, 0);
      int single = -1;
      unsigned nonzero = 0;
      for (unsigned k = 0; k < o; ++k) {
        const u64 zk = f.pow(zo, (o - k) % o);  // zeta_o^{-k}
        u64 acc = 0, zpow = 1;
        for (unsigned s2 = 0; s2 < o; ++s2) {
          acc = f.add(acc, f.mul(vals[s2], zpow));
          zpow = f.mul(zpow, zk);
        }
        u64 m = f.mul(acc, oinv);
        if (m > deg) throw Error(ErrorKind::Internal, "eigenvalue multiplicity out of range");
        if (m) {
          raw[k * (e / o)] = static_cast<std::int64_t>(m);
          ++nonzero;
          if (m == deg) single = static_cast<int>(k * (e / o));
        }
      }
      if (nonzero == 1 && single >= 0) ch.scalar_root[l] = single;
      ch.values.push_back(CyclotomicInt::from_powers(e, raw));
    }
    rows.push_back(std::move(ch));
  }

  auto principal = [](const Character& c) {
    return std::all_of(c.scalar_root.begin(), c.scalar_root.end(), [](int x) { return x == 0; });
  };
  std::sort(rows.begin(), rows.end(), [&](const Character& a, const Character& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (principal(a) != principal(b)) return principal(a);
    for (std::size_t l = 0; l < r; ++l)
      if (a.values[l].coeffs() != b.values[l].coeffs()) return a.values[l].coeffs() > b.values[l].coeffs();
    return false;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].id = i;

  CharacterTable t;
  t.group_ = &g;
  t.e_ = e;
  t.p_ = f.p;
  t.power_maps_ = std::move(power_maps);
  for (const auto& ch : rows) {
    std::vector<char> ker(r), cen(r), nz(r);
    for (std::size_t l = 0; l < r; ++l) {
      ker[l] = ch.scalar_root[l] == 0;
      cen[l] = ch.scalar_root[l] >= 0;
      nz[l] = !ch.values[l].is_zero();
    }
    t.kernels_.push_back(union_of_classes(g, ker));
    Subgroup z = union_of_classes(g, cen);
    if (!(z == z_over(t.kernels_.back())))
      throw Error(ErrorKind::Internal, "quasi-kernel disagrees with the preimage of the centre");
    t.centers_.push_back(std::move(z));
    t.vanishing_.push_back(union_of_classes(g, nz));
  }
  t.rows_ = std::move(rows);
  return t;
}

Subgroup kernel_of(const CharacterTable& t, std::size_t chi) { return t.kernel(chi); }

Subgroup center_of(const CharacterTable& t, std::size_t chi) { return z_over(t.kernel(chi)); }

Subgroup center_from_values(const CharacterTable& t, std::size_t chi) { return t.center(chi); }

Subgroup vanishing_off_char(const CharacterTable& t, std::size_t chi) { return t.vanishing_off(chi); }

std::vector<std::size_t> irr_over(const CharacterTable& t, const Subgroup& n) {
  if (!is_normal(n)) throw Error(ErrorKind::NotNormal, "irr_over: subgroup is not normal");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!(n <= t.kernel(i))) out.push_back(i);
  return out;
}

std::vector<std::size_t> irr_of_quotient(const CharacterTable& t, const Subgroup& n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (n <= t.kernel(i)) out.push_back(i);
  return out;
}

bool is_fully_ramified(const CharacterTable& t, std::size_t chi, const Subgroup& n) {
  if (!is_normal(n) || !(n <= t.center(chi)))
    throw Error(ErrorKind::PreconditionViolated, "is_fully_ramified requires N normal and N <= Z(chi)");
  const bool result = t.vanishing_off(chi) == t.center(chi) && t.center(chi) == n;
  const Group& g = t.group();
  if (result) {
    Subgroup z = center(g);
    if (n == z) {
      const std::size_t d = t.row(chi).degree;
      if (d * d != z.index()) throw Error(ErrorKind::Internal, "fully ramified character with wrong degree");
    }
  }
  return result;
}

bool is_gvz_over(const CharacterTable& t, const Subgroup& n) {
  for (std::size_t i : irr_of_quotient(t, n))
    if (!(t.vanishing_off(i) == t.center(i))) return false;
  return true;
}

bool is_gvz(const CharacterTable& t) { return is_gvz_over(t, trivial_subgroup(t.group())); }

bool is_vz(const CharacterTable& t) {
  Subgroup z = center(t.group());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t.row(i).degree > 1 && !(t.vanishing_off(i) <= z)) return false;
  return true;
}

std::pair<bool, std::optional<SeriesReport>> is_nested_over(const CharacterTable& t, const Subgroup& n) {
  std::vector<const Subgroup*> centers;
  for (std::size_t i : irr_of_quotient(t, n)) {
    const Subgroup& z = t.center(i);
    if (std::none_of(centers.begin(), centers.end(), [&](const Subgroup* s) { return *s == z; }))
      centers.push_back(&z);
  }
  std::sort(centers.begin(), centers.end(), [](const Subgroup* a, const Subgroup* b) { return a->order() > b->order(); });
  for (std::size_t i = 1; i < centers.size(); ++i)
    if (!(*centers[i] <= *centers[i - 1])) return {false, std::nullopt};
  SeriesReport s;
  s.kind = SeriesKind::ChainOfCenters;
  for (const Subgroup* z : centers) s.terms.push_back(*z);
  s.stabilized_at = s.terms.size() - 1;
  return {true, std::move(s)};
}

std::pair<bool, std::optional<SeriesReport>> is_nested_direct(const CharacterTable& t) {
  return is_nested_over(t, trivial_subgroup(t.group()));
}

bool is_extraspecial(const Group& g) {
  auto p = prime_power_base(g.order());
  if (!p || g.is_abelian()) return false;
  Subgroup z = center(g);
  return z.order() == *p && derived_subgroup(g) == z;
}

bool is_semi_extraspecial(const Group& g) {
  auto p = prime_power_base(g.order());
  if (!p || g.is_abelian()) return false;
  Subgroup z = center(g);
  // Frattini subgroup of the abelian group Z is Z^p.
  std::vector<Elem> pth;
  for (Elem x : z.members()) pth.push_back(g.pow(x, *p));
  Subgroup phi = subgroup_closure(g, pth);
  // Basis of Z / Phi(Z).
  std::vector<Elem> basis;
  Subgroup span = phi;
  for (Elem x : z.members()) {
    if (span.contains(x)) continue;
    basis.push_back(x);
    std::vector<Elem> gens(phi.generators().begin(), phi.generators().end());
    gens.insert(gens.end(), basis.begin(), basis.end());
    span = subgroup_closure(g, gens);
  }
  const std::size_t k = basis.size();
  // Hyperplanes as kernels of functionals with leading coefficient 1 at t.
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t free = k - t - 1;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < free; ++i) combos *= *p;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<Elem> gens(phi.generators().begin(), phi.generators().end());
      for (std::size_t i = 0; i < t; ++i) gens.push_back(basis[i]);
      std::size_t c = code;
      for (std::size_t i = t + 1; i < k; ++i) {
        unsigned fi = static_cast<unsigned>(c % *p);
        c /= *p;
        gens.push_back(g.mul(basis[i], g.pow(basis[t], -static_cast<long long>(fi))));
      }
      Subgroup hyper = subgroup_closure(g, gens);
      QuotientMap q = quotient(g, hyper);
      if (!is_extraspecial(*q.target)) return false;
    }
  }
  return true;
}

OrthogonalityReport check_orthogonality(const CharacterTable& t) {
  OrthogonalityReport rep;
  const Group& g = t.group();
  const auto& cc = t.classes();
  const std::size_t r = cc.size();
  rep.square = t.size() == r;
  std::size_t sumsq = 0;
  for (const auto& ch : t.rows()) sumsq += static_cast<std::size_t>(ch.degree) * ch.degree;
  rep.degrees_ok = sumsq == g.order();
  auto field = CyclotomicField::get(t.exponent());
  std::vector<std::vector<CyclotomicInt>> conj(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (const auto& v : t.row(i).values) conj[i].push_back(v.conj());
  for (std::size_t i = 0; i < t.size() && rep.rows_ok; ++i)
    for (std::size_t j = i; j < t.size(); ++j) {
      Accumulator acc(*field);
      for (std::size_t c = 0; c < r; ++c)
        acc.add_product(t.row(i).values[c], conj[j][c], static_cast<std::int64_t>(cc.classes[c].size()));
      if (!acc.equals_integer(i == j ? static_cast<std::int64_t>(g.order()) : 0)) {
        rep.rows_ok = false;
        break;
      }
    }
  for (std::size_t c = 0; c < r && rep.columns_ok; ++c)
    for (std::size_t d = c; d < r; ++d) {
      Accumulator acc(*field);
      for (std::size_t i = 0; i < t.size(); ++i) acc.add_product(t.row(i).values[c], conj[i][d], 1);
      auto want = c == d ? static_cast<std::int64_t>(g.order() / cc.classes[c].size()) : 0;
      if (!acc.equals_integer(want)) {
        rep.columns_ok = false;
        break;
      }
    }
  return rep;
}

}  // namespace nestkit
