#pragma once

// Finite fields F_q, vectors of F_q^n, and subspaces in height-reduced
// canonical form.
//
// Coordinates are 1-based: a vector v = a_1 e_1 + ... + a_n e_n and
// height(v) is the largest j with a_j != 0. A subspace is stored by its
// canonical basis: one vector per height in its profile, coefficient 1 at its
// own height and 0 at the heights of the other basis vectors. The canonical
// basis is unique, so equality of subspaces is equality of bases.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "walklab/index_set.hpp"

namespace walklab::gfq {

/// Field element. Prime fields use residues 0..p-1; extension fields encode
/// a polynomial sum c_i x^i over F_p as sum c_i p^i.
using Elem = std::uint8_t;

class FiniteField {
 public:
  int order() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return k_; }
  /// Low-to-high coefficients of the defining irreducible polynomial over F_p
  /// (degree k); {0, 1} for prime fields.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  /// Throws Error(domain) on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// The class of x in F_p[x]/(modulus); equals p for extension fields.
  Elem generator() const { return static_cast<Elem>(k_ == 1 ? 1 : p_); }

  bool operator==(const FiniteField& o) const { return q_ == o.q_; }

 private:
  friend FiniteField make_field(int q);
  std::size_t idx(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + b;
  }

  int q_ = 0;
  int p_ = 0;
  int k_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

/// q = p^k with p prime, k >= 1.
bool is_prime_power(long long q, int* p = nullptr, int* k = nullptr);

/// Field orders with a built-in construction.
std::vector<int> supported_orders();

/// Builds F_q and checks the field axioms exhaustively. Supported: primes
/// q <= 13 and q in {4, 8, 9, 16}. Throws Error(config) otherwise.
FiniteField make_field(int q);

/// A vector of F_q^n.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int n) : coords_(static_cast<std::size_t>(n), 0) {}
  Vec(std::initializer_list<int> coords);
  explicit Vec(std::vector<Elem> coords) : coords_(std::move(coords)) {}

  /// e_j in F_q^n.
  static Vec unit(int n, int j);

  int dim() const { return static_cast<int>(coords_.size()); }
  /// Coefficient of e_j, 1 <= j <= n.
  Elem operator[](int j) const { return coords_[static_cast<std::size_t>(j - 1)]; }
  void set(int j, Elem value) { coords_[static_cast<std::size_t>(j - 1)] = value; }
  const std::vector<Elem>& coords() const { return coords_; }
  bool is_zero() const;

  auto operator<=>(const Vec&) const = default;

 private:
  std::vector<Elem> coords_;
};

/// Largest j with v[j] != 0. Throws Error(domain) on the zero vector.
int height(const Vec& v);

Vec scaled(const FiniteField& f, const Vec& v, Elem c);
/// v - c * w
Vec axpy_sub(const FiniteField& f, const Vec& v, Elem c, const Vec& w);

class Subspace {
 public:
  /// Zero subspace of F_q^n.
  static Subspace zero(int q, int n);
  /// span{e_j : j in support}.
  static Subspace coordinate(const FiniteField& f, int n, IndexSet support);

  int field_order() const { return q_; }
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  /// Canonical basis, heights ascending.
  const std::vector<Vec>& basis() const { return basis_; }
  IndexSet profile() const { return profile_; }

  bool operator==(const Subspace& o) const {
    return q_ == o.q_ && n_ == o.n_ && basis_ == o.basis_;
  }
  /// Lexicographic on the canonical basis coordinate tuples.
  bool operator<(const Subspace& o) const;

  std::string to_string() const;

 private:
  friend Subspace normalize_basis(const FiniteField&, int, std::span<const Vec>);
  friend std::vector<Subspace> enumerate_subspaces(const FiniteField&, int, int,
                                                   std::size_t);
  Subspace(int q, int n, std::vector<Vec> basis);

  int q_ = 0;
  int n_ = 0;
  std::vector<Vec> basis_;
  IndexSet profile_;
};

/// Canonical form of span(vectors). Throws Error(rank) when the input is
/// linearly dependent and Error(domain) on a dimension mismatch.
Subspace normalize_basis(const FiniteField& f, int n, std::span<const Vec> vectors);

/// Height profile of the canonical basis.
inline IndexSet profile(const Subspace& s) { return s.profile(); }

/// v in span(s). Throws Error(domain) on dimension mismatch.
bool membership(const FiniteField& f, const Vec& v, const Subspace& s);

/// small ⊆ big
bool contains(const FiniteField& f, const Subspace& big, const Subspace& small);

/// All d-dimensional subspaces of F_q^n in canonical form, sorted. Throws
/// Error(resource) when their number exceeds `budget`.
std::vector<Subspace> enumerate_subspaces(const FiniteField& f, int n, int d,
                                          std::size_t budget = 5'000'000);

/// A strict chain x_0 ⊂ ... ⊂ x_i of subspaces together with a nested
/// basis: vectors with level <= j span x_j, all heights distinct, and every
/// vector has coefficient 1 at its own height and 0 at the heights of all
/// vectors of lower levels.
class FlagFq {
 public:
  const std::vector<Subspace>& chain() const { return chain_; }
  const std::vector<Vec>& nested_basis() const { return nested_; }
  /// Level (chain index) at which nested_basis()[m] first appears.
  const std::vector<int>& nested_level() const { return level_; }
  int length() const { return static_cast<int>(chain_.size()); }

 private:
  friend FlagFq flag_normalize(const FiniteField&, int,
                               const std::vector<std::vector<Vec>>&);
  std::vector<Subspace> chain_;
  std::vector<Vec> nested_;
  std::vector<int> level_;
};

/// Builds a FlagFq from spanning sets of each chain member. Throws
/// Error(rank) on dependent member bases and Error(structure) if the members
/// do not form a strict chain of proper nonzero subspaces.
FlagFq flag_normalize(const FiniteField& f, int n,
                      const std::vector<std::vector<Vec>>& member_bases);

/// Ascending chain of the members' height profiles.
SubsetFlag flag_profile(const FlagFq& flag);

/// Height profile flag of a chain of canonical subspaces (must be strict).
SubsetFlag flag_profile(std::span<const Subspace> chain);

/// Dense n x n matrix over F_q acting on column vectors.
class FqMatrix {
 public:
  FqMatrix() = default;
  explicit FqMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n * n), 0) {}
  static FqMatrix identity(int n);

  int dim() const { return n_; }
  /// 1-based (row, col).
  Elem at(int r, int c) const { return data_[pos(r, c)]; }
  void set(int r, int c, Elem v) { data_[pos(r, c)] = v; }
  bool upper_triangular_invertible() const;

 private:
  std::size_t pos(int r, int c) const {
    return static_cast<std::size_t>((r - 1) * n_ + (c - 1));
  }
  int n_ = 0;
  std::vector<Elem> data_;
};

Vec apply(const FiniteField& f, const FqMatrix& g, const Vec& v);
Subspace apply(const FiniteField& f, const FqMatrix& g, const Subspace& s);
FqMatrix multiply(const FiniteField& f, const FqMatrix& a, const FqMatrix& b);
/// Inverse of an invertible upper-triangular matrix. Throws Error(domain)
/// otherwise.
FqMatrix inverse_upper(const FiniteField& f, const FqMatrix& g);

/// Upper-triangular h with h v = e_{height(v)} for every canonical basis
/// vector v of s; it maps s onto span{e_j : j in profile(s)}.
FqMatrix transitivity_witness(const FiniteField& f, const Subspace& s);
/// Upper-triangular h sending each member of the flag onto the coordinate
/// subspace of its profile.
FqMatrix transitivity_witness(const FiniteField& f, const FlagFq& flag);

}  // namespace walklab::gfq
