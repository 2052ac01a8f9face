#pragma once

// Weighted graphs, quotients by a vertex labeling, and the height-profile
// quotient of the building's up-down walk.
//
// Quotient weights use the row convention: for labels a, b and any x in a,
//   μ'(a, b) = Σ_{z in b} μ(x, z),
// so that A P = P A' with P the label indicator matrix.

#include <optional>
#include <string>
#include <vector>

#include "walklab/complex.hpp"
#include "walklab/index_set.hpp"
#include "walklab/rat_matrix.hpp"
#include "walklab/spectra.hpp"

namespace walklab::quotient {

/// Directed weights μ(u, v) at the nonzero entries of `adjacency`.
struct WeightedGraph {
  RatMatrix adjacency;
  std::size_t vertex_count() const { return adjacency.rows(); }
};

/// Throws Error(domain) on a non-square operator.
WeightedGraph graph_from_operator(const RatMatrix& op);

struct QuotientGraph {
  WeightedGraph graph;
  std::vector<std::size_t> labeling;
  std::vector<std::size_t> orbit_sizes;
};

/// Labels must be 0..label_count-1, each used. Throws
/// Error(invalid_quotient) when some representative disagrees.
QuotientGraph quotient(const WeightedGraph& g, const std::vector<std::size_t>& labeling,
                       std::size_t label_count);

/// The i-flags of nonempty proper subsets of [n] in canonical order.
std::vector<SubsetFlag> subset_flags(int n, int i);

/// Position of f in a canonically sorted flag list.
std::optional<std::size_t> flag_index(const std::vector<SubsetFlag>& sorted, const SubsetFlag& f);

/// Height-profile flag of an i-simplex of a building.
SubsetFlag simplex_profile(const Complex& c, SimplexView s);

/// Labels level-i simplices by the index of their profile flag.
std::vector<std::size_t> height_profile_labeling(const Complex& c, int i,
                                                 const std::vector<SubsetFlag>& flags);

struct BuildingQuotient {
  int n = 0;
  int q = 0;
  int level = 0;
  std::vector<SubsetFlag> flags;
  QuotientGraph quotient;
};

/// Height-profile quotient of Δ_i⁺ on a building with levels i, i+1.
BuildingQuotient building_quotient(const Complex& c, int i, const RatMatrix& delta);
BuildingQuotient building_quotient(int n, int q, int i, const BuildOptions& options = {});

/// Entry (V̂_k, V̂_l) of the quotient for the extended (i+1)-flag V
/// (i+2 members). Diagonal k == l gives n-2-i. Throws Error(domain) on bad
/// indices.
Rational closed_form_entry(const SubsetFlag& v, int k, int l, long long q);

/// The full quotient matrix from closed-form entries, indexed by
/// subset_flags(n, i).
RatMatrix closed_form_quotient(int n, long long q, int i);

struct Symmetrized {
  spectra::DenseMatrix matrix;
  /// sign(a,b) · a(a,b) a(b,a), exact; the symmetric entry is the signed
  /// square root of its absolute value.
  RatMatrix products;
};

/// Diagonal conjugate. Throws Error(structure) if the sign or support
/// pattern is not symmetric.
Symmetrized symmetrize(const RatMatrix& a);

/// Every eigenvalue of the quotient is within tol of an eigenvalue of g.
bool spectral_containment_check(const WeightedGraph& g, const std::vector<std::size_t>& labeling,
                                std::size_t label_count, double tol = 1e-8);

/// A P == P A' exactly.
bool pullback_identity(const RatMatrix& a, const std::vector<std::size_t>& labeling,
                       const RatMatrix& quotient_matrix);

/// {n, q, level, vertices, matrix, orbit_sizes[, equitable]}; orbit sizes
/// are exact integers rendered as strings.
std::string quotient_json(const BuildingQuotient& bq, int indent = 2);

}  // namespace walklab::quotient
