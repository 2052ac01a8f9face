#pragma once

// Subsets of [n] = {1..n} as bitmasks, and ascending chains of them.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace walklab {

/// A subset of {1, ..., 31}; element j is stored in bit j-1.
class IndexSet {
 public:
  static constexpr int kMaxElement = 31;

  constexpr IndexSet() = default;
  IndexSet(std::initializer_list<int> elements);

  static IndexSet from_bits(std::uint32_t bits) {
    IndexSet s;
    s.bits_ = bits;
    return s;
  }
  static IndexSet from_elements(const std::vector<int>& elements);
  /// {1, ..., n}
  static IndexSet interval(int n);
  /// {lo, ..., hi}; empty when lo > hi.
  static IndexSet range(int lo, int hi);

  std::uint32_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const;
  bool contains(int j) const;
  int min() const;  // requires !empty()
  int max() const;  // requires !empty()
  std::vector<int> elements() const;

  bool subset_of(IndexSet other) const { return (bits_ & ~other.bits_) == 0; }
  bool proper_subset_of(IndexSet other) const {
    return subset_of(other) && bits_ != other.bits_;
  }

  IndexSet with(int j) const;
  IndexSet minus(IndexSet other) const { return from_bits(bits_ & ~other.bits_); }
  IndexSet operator|(IndexSet o) const { return from_bits(bits_ | o.bits_); }
  IndexSet operator&(IndexSet o) const { return from_bits(bits_ & o.bits_); }

  /// Number of elements of this set strictly smaller than j.
  int count_below(int j) const;

  bool operator==(const IndexSet&) const = default;

  /// "{1,3,6}"
  std::string to_string() const;

 private:
  std::uint32_t bits_ = 0;
};

/// Order used for deterministic enumeration: by size, then lexicographically
/// on the ascending element list.
bool canonical_less(IndexSet a, IndexSet b);

/// An ascending chain V_0 ⊊ V_1 ⊊ ... ⊊ V_k of nonempty proper subsets of [n].
/// Vertices of the height-profile quotient. The empty chain is allowed and
/// stands for the empty simplex.
class SubsetFlag {
 public:
  SubsetFlag() = default;
  /// Throws Error(structure) unless the chain is strict, nonempty-membered
  /// and proper in [n].
  SubsetFlag(int n, std::vector<IndexSet> members);

  int ambient() const { return n_; }
  /// Number of members; an i-flag has length i+1.
  int length() const { return static_cast<int>(members_.size()); }
  const std::vector<IndexSet>& members() const { return members_; }
  const IndexSet& operator[](int k) const { return members_[static_cast<std::size_t>(k)]; }

  /// Member k with the implicit V_{-1} = ∅ and V_{length} = [n] adjoined.
  IndexSet extended(int k) const;

  /// This flag with member k removed.
  SubsetFlag without(int k) const;

  /// Sizes |V_0| < ... < |V_k|; this is the simplex type of every preimage.
  std::vector<int> sizes() const;

  bool operator==(const SubsetFlag&) const = default;

  /// "({3} ⊂ {2,3})"
  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<IndexSet> members_;
};

/// Member-wise canonical_less; shorter chains first.
bool canonical_less(const SubsetFlag& a, const SubsetFlag& b);

struct SubsetFlagLess {
  bool operator()(const SubsetFlag& a, const SubsetFlag& b) const {
    return canonical_less(a, b);
  }
};

/// Every chain of `length` members in [n] (no range restriction), in
/// canonical order.
std::vector<SubsetFlag> all_subset_flags(int n, int length);

/// If a and b are distinct flags of equal length L obtained from one
/// (L+1)-member flag V by deleting members k and l, returns {V, k, l}.
struct FlagJoin {
  SubsetFlag joined;
  int k = -1;  // a == joined.without(k)
  int l = -1;  // b == joined.without(l)
};
bool join_flags(const SubsetFlag& a, const SubsetFlag& b, FlagJoin* out);

}  // namespace walklab
