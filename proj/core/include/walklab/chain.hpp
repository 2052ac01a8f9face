#pragma once

// Cochains on a complex: the coboundary d_i, its weighted adjoint δ_i and the
// signed up-down walk Δ_i⁺ = δ_i d_i.
//
// Matrices act on column vectors indexed by the level's simplex order. For
// t = (x_0 < ... < x_{i+1}) and its k-th face t̂_k:
//   d_i(t, t̂_k) = (-1)^k,    δ_i(t̂_k, t) = (-1)^k w(t) / w(t̂_k).
// Level -1 is the one-dimensional space of the empty simplex.

#include <cstdint>
#include <vector>

#include "walklab/complex.hpp"
#include "walklab/rat_matrix.hpp"
#include "walklab/spectra.hpp"

namespace walklab::chain {

struct LevelBasis {
  const Complex* complex = nullptr;
  int level = 0;
  std::size_t size = 0;
  std::vector<QInt> weights;
};

/// Throws Error(domain) if the level is not materialized.
LevelBasis level_basis(const Complex& c, int level);

/// Optional vertex re-enumeration: rank[v] replaces v when ordering the
/// vertices of a simplex for orientation signs.
using VertexRank = std::vector<std::uint32_t>;

/// Rows: level i+1, columns: level i. Requires -1 <= i < max_level.
RatMatrix coboundary(const Complex& c, int i, const VertexRank* rank = nullptr);
/// Rows: level i, columns: level i+1.
RatMatrix boundary(const Complex& c, int i, const VertexRank* rank = nullptr);
RatMatrix updown(const Complex& c, int i, const VertexRank* rank = nullptr);

/// Σ w(s) f(s) g(s). Throws Error(domain) on a length mismatch.
Rational inner_product(const RatVector& f, const RatVector& g, const LevelBasis& basis);

/// W^{1/2} Δ W^{-1/2}, symmetric; its spectrum is that of Δ.
spectra::DenseMatrix symmetrized_updown(const Complex& c, int i, const RatMatrix& delta);

enum class Reenumeration {
  color_refining,  // permute within each color class
  arbitrary        // any permutation of the vertices
};

/// Compares the spectrum of Δ_i⁺ against `trials` random re-enumerations.
bool enumeration_invariance(const Complex& c, int i, int trials, std::uint64_t seed = 1,
                            Reenumeration mode = Reenumeration::color_refining,
                            double tol = 1e-8);

}  // namespace walklab::chain
