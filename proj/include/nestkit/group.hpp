#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace nestkit {

/// Element index. Index 0 is always the identity.
using Elem = std::uint16_t;
/// Subset of the element universe of one group.
using ElemSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kDefaultOrderCap = 4096;
inline constexpr std::size_t kMaxOrderCap = 65535;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// How a group came to be. Direct products keep their factors so that
/// statements about M x N can be checked against the factors.
struct Provenance {
  std::string kind;  // perm, matmod, table, tuple, product, quotient, family, file
  std::string description;
  std::vector<GroupPtr> factors;
  std::string file_hash;
};

/// Conjugacy classes ordered by class size, then by least representative.
struct ConjClasses {
  std::vector<std::vector<Elem>> classes;  // each sorted ascending
  std::vector<std::uint32_t> class_of;
  std::vector<Elem> representatives;  // least element of each class

  std::size_t size() const { return classes.size(); }
};

/// A fully enumerated finite group with a dense Cayley table.
///
/// Instances are immutable once constructed. A few derived tables
/// (conjugacy classes, commutator sets) are computed lazily on first use;
/// that computation is guarded, so a Group may be shared across threads.
class Group {
 public:
  /// `table` is row-major, table[a * n + b] = a*b. Validates that element 0
  /// is the identity and that rows and columns are permutations; pass
  /// `check_associativity` to also verify the associative law exhaustively.
  Group(std::vector<Elem> table, std::vector<std::string> labels, std::vector<Elem> generators,
        Provenance source, bool check_associativity = false);

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;

  std::size_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// [a,b] = a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }
  /// a^x = x^-1 a x
  Elem conj(Elem a, Elem x) const { return mul(mul(inv_[x], a), x); }
  Elem pow(Elem a, long long k) const;
  unsigned elem_order(Elem a) const { return elem_order_[a]; }
  unsigned exponent() const { return exponent_; }
  bool is_abelian() const { return abelian_; }

  const std::string& label(Elem a) const { return labels_[a]; }
  std::span<const std::string> labels() const { return labels_; }
  std::span<const Elem> generators() const { return generators_; }
  const Provenance& source() const { return source_; }
  std::span<const Elem> table() const { return table_; }

  const ConjClasses& classes() const;
  /// gamma(g) = { [g,x] : x in G }, as a set.
  const ElemSet& gamma(Elem g) const;

 private:
  std::size_t order_;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<unsigned> elem_order_;
  unsigned exponent_ = 1;
  bool abelian_ = true;
  std::vector<std::string> labels_;
  std::vector<Elem> generators_;
  Provenance source_;

  mutable std::once_flag classes_once_;
  mutable ConjClasses classes_;
  mutable std::once_flag gamma_once_;
  mutable std::vector<ElemSet> gamma_;
};

/// A subgroup of a parent group, stored both as a bitset over the parent's
/// elements and as a sorted member list. Holds a non-owning reference to the
/// parent, which must outlive it.
class Subgroup {
 public:
  /// `bits` must already be closed under the group operation.
  Subgroup(const Group& parent, ElemSet bits, std::vector<Elem> generators = {});

  const Group& group() const { return *group_; }
  std::size_t order() const { return members_.size(); }
  std::size_t index() const { return group_->order() / members_.size(); }
  bool contains(Elem a) const { return bits_.test(a); }
  std::span<const Elem> members() const { return members_; }
  const ElemSet& bits() const { return bits_; }
  /// A generating set; empty for the trivial subgroup.
  std::span<const Elem> generators() const { return generators_; }
  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == group_->order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.bits_ == b.bits_; }
  /// Containment.
  friend bool operator<=(const Subgroup& a, const Subgroup& b) { return a.bits_.is_subset_of(b.bits_); }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    return a.bits_.is_proper_subset_of(b.bits_);
  }

 private:
  const Group* group_;
  ElemSet bits_;
  std::vector<Elem> members_;
  std::vector<Elem> generators_;
};

}  // namespace nestkit
