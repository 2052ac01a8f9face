#pragma once

// Pure colored simplicial complexes with exact simplex weights: the type-A
// spherical building over F_q (vertices are the nontrivial proper subspaces
// of F_q^n, simplices are flags) and the complete complex Z_m.
//
// Vertices are numbered by (color, canonical basis), so within every simplex
// the vertex order is the color order. Simplices are vertex-id tuples in
// ascending order; each level is stored lexicographically sorted.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "walklab/exact.hpp"
#include "walklab/gfq.hpp"
#include "walklab/index_set.hpp"

namespace walklab {

using VertexId = std::uint32_t;
using SimplexView = std::span<const VertexId>;

enum class ComplexKind { building, complete };

struct BuildOptions {
  /// Cap on the total number of materialized simplices.
  std::size_t simplex_budget = 20'000'000;
  /// Cap on full-flag enumeration when weights are computed by brute force.
  std::size_t top_simplex_budget = 2'000'000;
  /// Compute weights by counting top simplices instead of the closed formula.
  bool bruteforce_weights = false;
};

class Complex {
 public:
  ComplexKind kind() const { return kind_; }
  /// Ambient dimension n for buildings; m+1 vertices for Z_m.
  int ambient() const { return n_; }
  /// Field order for buildings, 0 for complete complexes.
  int field_order() const { return q_; }
  /// Simplicial dimension: n-2 for buildings, m for Z_m.
  int dimension() const { return dim_; }
  /// Highest materialized level.
  int max_level() const { return static_cast<int>(levels_.size()) - 1; }

  std::size_t vertex_count() const { return colors_.size(); }
  int color(VertexId v) const { return colors_[v]; }
  /// Buildings only.
  const gfq::FiniteField& field() const { return *field_; }
  const gfq::Subspace& subspace(VertexId v) const { return subspaces_[v]; }
  IndexSet vertex_profile(VertexId v) const { return profiles_[v]; }
  /// Vertices of higher color adjacent to v (containing v, for buildings).
  const std::vector<VertexId>& up_neighbors(VertexId v) const { return up_[v]; }

  /// Level -1 holds the single empty simplex.
  std::size_t level_size(int level) const;
  SimplexView simplex(int level, std::size_t index) const;
  std::optional<std::size_t> find(int level, SimplexView vertices) const;
  /// w(s), the number of top simplices containing s. Level -1 gives the
  /// number of top simplices.
  const QInt& weight(int level, std::size_t index) const;
  const std::vector<QInt>& level_weights(int level) const;
  const QInt& top_count() const { return top_count_; }

 private:
  friend Complex build_building(int, int, int, const BuildOptions&);
  friend Complex build_complete(int);

  ComplexKind kind_ = ComplexKind::complete;
  int n_ = 0;
  int q_ = 0;
  int dim_ = 0;
  std::optional<gfq::FiniteField> field_;
  std::vector<int> colors_;
  std::vector<gfq::Subspace> subspaces_;
  std::vector<IndexSet> profiles_;
  std::vector<std::vector<VertexId>> up_;
  std::vector<std::vector<VertexId>> levels_;  // flat, stride level+1
  std::vector<std::vector<QInt>> weights_;
  QInt top_count_;
  std::vector<QInt> empty_weight_;
};

/// X_{n-2,q} with levels 0..max_level materialized (max_level <= n-2).
/// Throws Error(config) for unsupported q, Error(domain) for bad n or
/// max_level, Error(resource) when the simplex budget is exceeded.
Complex build_building(int n, int q, int max_level, const BuildOptions& options = {});

/// Z_m: all nonempty subsets of m+1 vertices, all weights 1.
Complex build_complete(int m);

/// Stored weight of s. Throws Error(domain) if s is not a simplex of c.
QInt weight(const Complex& c, SimplexView s);

/// Literal count of top simplices containing s. Throws Error(resource) if
/// more than `budget` top simplices would be enumerated.
QInt weight_bruteforce(const Complex& c, SimplexView s, std::size_t budget = 2'000'000);

/// Brute-force weights of every simplex at one level, in level order.
std::vector<QInt> weight_bruteforce_level(const Complex& c, int level,
                                          std::size_t budget = 2'000'000);

/// Ascending colors of the vertices of s.
std::vector<int> simplex_type(const Complex& c, SimplexView s);

/// Visits every top simplex of c (materialized or not) in lex order.
/// Throws Error(resource) past `budget` simplices.
void for_each_top_simplex(const Complex& c, std::size_t budget,
                          const std::function<void(SimplexView)>& visit);

/// Header "building n q" or "complete m", then one line per simplex
/// "level v_0 ... v_level weight", levels ascending.
void write_complex(std::ostream& out, const Complex& c);

}  // namespace walklab
