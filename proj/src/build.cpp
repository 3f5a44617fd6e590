#include "nestkit/build.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include <boost/functional/hash.hpp>

#include "nestkit/error.hpp"
#include "nestkit/subgroups.hpp"

namespace nestkit {

namespace {

struct TupleHash {
  std::size_t operator()(const Tuple& t) const { return boost::hash_range(t.begin(), t.end()); }
};

// Breadth-first enumeration over right multiplication by the generators.
// Only the right-regular action on generators is evaluated on the native
// representation; the full table is then filled from BFS words:
// a * b = (a * parent(b)) * gen(b).
GroupPtr enumerate(const Tuple& identity, const std::vector<Tuple>& gens, const TupleMul& mul,
                   const TupleLabel& label, std::size_t cap, Provenance source) {
  if (cap > kMaxOrderCap) cap = kMaxOrderCap;
  std::unordered_map<Tuple, Elem, TupleHash> index;
  std::vector<Tuple> elts{identity};
  index.emplace(identity, 0);
  std::vector<std::uint32_t> parent{0};
  std::vector<std::uint32_t> via{0};
  const std::size_t k = gens.size();
  std::vector<Elem> right;  // right[a*k + i] = a * gens[i]
  for (std::size_t a = 0; a < elts.size(); ++a) {
    for (std::size_t i = 0; i < k; ++i) {
      Tuple y = mul(elts[a], gens[i]);
      auto it = index.find(y);
      Elem id;
      if (it == index.end()) {
        if (elts.size() >= cap)
          throw Error(ErrorKind::OrderCapExceeded, "group order exceeds cap " + std::to_string(cap));
        id = static_cast<Elem>(elts.size());
        index.emplace(y, id);
        elts.push_back(std::move(y));
        parent.push_back(static_cast<std::uint32_t>(a));
        via.push_back(static_cast<std::uint32_t>(i));
      } else {
        id = it->second;
      }
      right.push_back(id);
    }
  }
  const std::size_t n = elts.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Elem>(a);
    for (std::size_t b = 1; b < n; ++b) {
      Elem ap = table[a * n + parent[b]];
      table[a * n + b] = right[static_cast<std::size_t>(ap) * k + via[b]];
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) labels[a] = label(elts[a]);
  std::vector<Elem> gen_ids;
  for (const auto& gtuple : gens) {
    Elem id = index.at(gtuple);
    if (id != 0 && std::find(gen_ids.begin(), gen_ids.end(), id) == gen_ids.end()) gen_ids.push_back(id);
  }
  return std::make_shared<const Group>(std::move(table), std::move(labels), std::move(gen_ids), std::move(source));
}

GroupPtr build_perm(const PermGenerators& spec, std::size_t cap, Provenance source) {
  const unsigned d = spec.degree;
  std::vector<Tuple> gens;
  for (const auto& g : spec.generators) {
    if (g.size() != d) throw Error(ErrorKind::InvalidGenerators, "permutation has wrong degree");
    std::vector<char> seen(d);
    for (unsigned x : g) {
      if (x >= d || seen[x]) throw Error(ErrorKind::InvalidGenerators, "malformed permutation");
      seen[x] = 1;
    }
    gens.emplace_back(g.begin(), g.end());
  }
  Tuple id(d);
  for (unsigned i = 0; i < d; ++i) id[i] = static_cast<int>(i);
  // x*y applies x first, then y.
  auto mul = [](const Tuple& x, const Tuple& y) {
    Tuple r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[static_cast<std::size_t>(x[i])];
    return r;
  };
  auto label = [](const Tuple& x) {
    std::vector<unsigned> im(x.begin(), x.end());
    return cycle_notation(im);
  };
  if (source.kind.empty()) source.kind = "perm";
  return enumerate(id, gens, mul, label, cap, std::move(source));
}

long long det_mod(std::vector<long long> m, unsigned dim, long long p) {
  long long det = 1;
  for (unsigned c = 0; c < dim; ++c) {
    unsigned piv = c;
    while (piv < dim && m[piv * dim + c] % p == 0) ++piv;
    if (piv == dim) return 0;
    if (piv != c) {
      for (unsigned j = 0; j < dim; ++j) std::swap(m[piv * dim + j], m[c * dim + j]);
      det = (p - det) % p;
    }
    long long a = m[c * dim + c] % p;
    det = det * a % p;
    long long ainv = 1;
    for (long long e = p - 2, b = a; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) ainv = ainv * b % p;
    for (unsigned r = c + 1; r < dim; ++r) {
      long long f = m[r * dim + c] % p * ainv % p;
      for (unsigned j = c; j < dim; ++j) m[r * dim + j] = ((m[r * dim + j] - f * m[c * dim + j]) % p + p) % p;
    }
  }
  return det;
}

GroupPtr build_matrix(const MatrixGenerators& spec, std::size_t cap, Provenance source) {
  const unsigned p = spec.p;
  const unsigned dim = spec.dim;
  if (p < 2 || dim == 0) throw Error(ErrorKind::InvalidGenerators, "bad matrix field or dimension");
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorKind::InvalidGenerators, "modulus is not prime");
  std::vector<Tuple> gens;
  for (const auto& g : spec.generators) {
    if (g.size() != static_cast<std::size_t>(dim) * dim)
      throw Error(ErrorKind::InvalidGenerators, "matrix has wrong number of entries");
    std::vector<long long> m(g.begin(), g.end());
    for (auto& x : m) x %= p;
    if (det_mod(m, dim, p) == 0) throw Error(ErrorKind::InvalidGenerators, "singular matrix");
    Tuple t(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) t[i] = static_cast<int>(g[i] % p);
    gens.push_back(std::move(t));
  }
  Tuple id(static_cast<std::size_t>(dim) * dim, 0);
  for (unsigned i = 0; i < dim; ++i) id[i * dim + i] = 1;
  auto mul = [dim, p](const Tuple& x, const Tuple& y) {
    Tuple r(x.size(), 0);
    for (unsigned i = 0; i < dim; ++i)
      for (unsigned j = 0; j < dim; ++j) {
        long long s = 0;
        for (unsigned l = 0; l < dim; ++l) s += static_cast<long long>(x[i * dim + l]) * y[l * dim + j];
        r[i * dim + j] = static_cast<int>(s % p);
      }
    return r;
  };
  auto label = [dim](const Tuple& x) {
    std::string s = "[";
    for (unsigned i = 0; i < dim; ++i) {
      if (i) s += ";";
      for (unsigned j = 0; j < dim; ++j) {
        if (j) s += ",";
        s += std::to_string(x[i * dim + j]);
      }
    }
    return s + "]";
  };
  if (source.kind.empty()) source.kind = "matmod";
  return enumerate(id, gens, mul, label, cap, std::move(source));
}

GroupPtr build_table(const CayleyTable& spec, std::size_t cap, Provenance source) {
  const std::size_t n = spec.rows.size();
  if (n == 0) throw Error(ErrorKind::InvalidTable, "empty table");
  if (n > cap || n > kMaxOrderCap) throw Error(ErrorKind::OrderCapExceeded, "table order exceeds cap");
  std::vector<Elem> table;
  table.reserve(n * n);
  for (const auto& row : spec.rows) {
    if (row.size() != n) throw Error(ErrorKind::InvalidTable, "table is not square");
    for (unsigned x : row) {
      if (x >= n) throw Error(ErrorKind::InvalidTable, "table entry out of range");
      table.push_back(static_cast<Elem>(x));
    }
  }
  if (source.kind.empty()) source.kind = "table";
  std::vector<Elem> all(n > 1 ? n - 1 : 0);
  for (std::size_t i = 1; i < n; ++i) all[i - 1] = static_cast<Elem>(i);
  Group probe(table, {}, all, {}, n <= 256);
  if (n > 256 && !check_group_axioms(probe)) throw Error(ErrorKind::InvalidTable, "table is not associative");
  Subgroup whole = subgroup_closure(probe, std::span<const Elem>(all));
  std::vector<Elem> gens(whole.generators().begin(), whole.generators().end());
  return std::make_shared<const Group>(std::move(table), std::vector<std::string>{}, std::move(gens),
                                       std::move(source));
}

}  // namespace

GroupPtr build_group(const GeneratorSpec& spec, std::size_t cap, Provenance source) {
  return std::visit(
      [&](const auto& s) -> GroupPtr {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PermGenerators>) return build_perm(s, cap, std::move(source));
        else if constexpr (std::is_same_v<T, MatrixGenerators>) return build_matrix(s, cap, std::move(source));
        else return build_table(s, cap, std::move(source));
      },
      spec);
}

GroupPtr enumerate_group(const Tuple& identity, const std::vector<Tuple>& generators, const TupleMul& mul,
                         const TupleLabel& label, std::size_t cap, Provenance source) {
  if (source.kind.empty()) source.kind = "tuple";
  return enumerate(identity, generators, mul, label, cap, std::move(source));
}

GroupPtr direct_product(const GroupPtr& g, const GroupPtr& h, std::size_t cap) {
  const std::size_t m = g->order();
  const std::size_t n = h->order();
  if (m * n > cap || m * n > kMaxOrderCap)
    throw Error(ErrorKind::OrderCapExceeded, "direct product order exceeds cap " + std::to_string(cap));
  const std::size_t o = m * n;
  std::vector<Elem> table(o * o);
  for (std::size_t a = 0; a < o; ++a) {
    const Elem a1 = static_cast<Elem>(a / n), a2 = static_cast<Elem>(a % n);
    for (std::size_t b = 0; b < o; ++b)
      table[a * o + b] = static_cast<Elem>(g->mul(a1, static_cast<Elem>(b / n)) * n + h->mul(a2, static_cast<Elem>(b % n)));
  }
  std::vector<std::string> labels(o);
  for (std::size_t a = 0; a < o; ++a)
    labels[a] = "(" + g->label(static_cast<Elem>(a / n)) + ", " + h->label(static_cast<Elem>(a % n)) + ")";
  std::vector<Elem> gens;
  for (Elem x : g->generators()) gens.push_back(static_cast<Elem>(x * n));
  for (Elem y : h->generators()) gens.push_back(y);
  Provenance src;
  src.kind = "product";
  src.description = g->source().description + " x " + h->source().description;
  src.factors = {g, h};
  return std::make_shared<const Group>(std::move(table), std::move(labels), std::move(gens), std::move(src));
}

std::string cycle_notation(const std::vector<unsigned>& images) {
  std::string out;
  std::vector<char> done(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (done[i] || images[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = images[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

bool check_group_axioms(const Group& g) {
  const std::size_t n = g.order();
  auto ok = [&](Elem a, Elem b, Elem c) { return g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)); };
  for (std::size_t a = 0; a < n; ++a)
    if (g.mul(static_cast<Elem>(a), g.inv(static_cast<Elem>(a))) != 0 ||
        g.mul(g.inv(static_cast<Elem>(a)), static_cast<Elem>(a)) != 0)
      return false;
  if (n <= 256) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (!ok(static_cast<Elem>(a), static_cast<Elem>(b), static_cast<Elem>(c))) return false;
    return true;
  }
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto next = [&] { return static_cast<Elem>(pick(rng)); };
  for (int i = 0; i < 1000000; ++i)
    if (!ok(next(), next(), next())) return false;
  return true;
}

}  // namespace nestkit
