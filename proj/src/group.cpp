#include "nestkit/group.hpp"

#include <algorithm>
#include <numeric>

#include "nestkit/error.hpp"

namespace nestkit {

Group::Group(std::vector<Elem> table, std::vector<std::string> labels, std::vector<Elem> generators,
             Provenance source, bool check_associativity)
    : table_(std::move(table)), labels_(std::move(labels)), generators_(std::move(generators)),
      source_(std::move(source)) {
  std::size_t n = 0;
  while (n * n < table_.size()) ++n;
  if (n == 0 || n * n != table_.size()) throw Error(ErrorKind::InvalidTable, "table is not square");
  if (n > kMaxOrderCap) throw Error(ErrorKind::OrderCapExceeded, "order exceeds index width");
  order_ = n;
  if (labels_.size() != n) {
    labels_.resize(n);
    for (std::size_t i = 0; i < n; ++i) labels_[i] = "g" + std::to_string(i);
  }

  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      Elem c = table_[a * n + b];
      if (c >= n || seen[c]) throw Error(ErrorKind::InvalidTable, "row " + std::to_string(a) + " is not a permutation");
      seen[c] = 1;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t a = 0; a < n; ++a) {
      Elem c = table_[a * n + b];
      if (seen[c]) throw Error(ErrorKind::InvalidTable, "column " + std::to_string(b) + " is not a permutation");
      seen[c] = 1;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a] != a || table_[a * n] != a)
      throw Error(ErrorKind::InvalidTable, "element 0 is not a two-sided identity");
  }
  if (check_associativity) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Elem ab = table_[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table_[ab * n + c] != table_[a * n + table_[b * n + c]])
            throw Error(ErrorKind::InvalidTable, "table is not associative");
      }
  }

  inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a * n + b] == 0) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }

  elem_order_.assign(n, 1);
  exponent_ = 1;
  for (std::size_t a = 0; a < n; ++a) {
    unsigned k = 1;
    Elem x = static_cast<Elem>(a);
    while (x != 0) {
      x = mul(x, static_cast<Elem>(a));
      ++k;
    }
    elem_order_[a] = k;
    exponent_ = std::lcm(exponent_, k);
  }

  for (std::size_t a = 0; a < n && abelian_; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (table_[a * n + b] != table_[b * n + a]) {
        abelian_ = false;
        break;
      }

  generators_.erase(std::remove(generators_.begin(), generators_.end(), Elem{0}), generators_.end());
}

Elem Group::pow(Elem a, long long k) const {
  long long o = elem_order_[a];
  k %= o;
  if (k < 0) k += o;
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

const ConjClasses& Group::classes() const {
  std::call_once(classes_once_, [this] {
    const std::size_t n = order_;
    std::vector<std::uint32_t> raw(n, UINT32_MAX);
    std::vector<std::vector<Elem>> found;
    for (std::size_t a = 0; a < n; ++a) {
      if (raw[a] != UINT32_MAX) continue;
      const auto id = static_cast<std::uint32_t>(found.size());
      std::vector<Elem> cls;
      for (std::size_t x = 0; x < n; ++x) {
        Elem c = conj(static_cast<Elem>(a), static_cast<Elem>(x));
        if (raw[c] == UINT32_MAX) {
          raw[c] = id;
          cls.push_back(c);
        }
      }
      std::sort(cls.begin(), cls.end());
      found.push_back(std::move(cls));
    }
    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (found[x].size() != found[y].size()) return found[x].size() < found[y].size();
      return found[x].front() < found[y].front();
    });
    ConjClasses out;
    out.class_of.assign(n, 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto& cls = found[order[i]];
      for (Elem e : cls) out.class_of[e] = static_cast<std::uint32_t>(i);
      out.representatives.push_back(cls.front());
      out.classes.push_back(std::move(cls));
    }
    classes_ = std::move(out);
  });
  return classes_;
}

const ElemSet& Group::gamma(Elem g) const {
  std::call_once(gamma_once_, [this] {
    const std::size_t n = order_;
    gamma_.assign(n, ElemSet(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x = 0; x < n; ++x) gamma_[a].set(comm(static_cast<Elem>(a), static_cast<Elem>(x)));
  });
  return gamma_[g];
}

Subgroup::Subgroup(const Group& parent, ElemSet bits, std::vector<Elem> generators)
    : group_(&parent), bits_(std::move(bits)), generators_(std::move(generators)) {
  members_.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != ElemSet::npos; i = bits_.find_next(i)) members_.push_back(static_cast<Elem>(i));
}

}  // namespace nestkit
