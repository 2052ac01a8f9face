#pragma once

// The q → ∞ limit D_i of the symmetrized height-profile quotient, its block
// structure, and the reference spectra of complete complexes.

#include <string>
#include <vector>

#include "walklab/index_set.hpp"
#include "walklab/rat_matrix.hpp"
#include "walklab/spectra.hpp"

namespace walklab::limit {

/// i-flags of [n] for 0 <= i <= n-3. Throws Error(domain) otherwise.
std::vector<SubsetFlag> enumerate_flags(int n, int i);

/// Every j in V_k \ V_{k-1} exceeds every j' in V_{k+1} \ V_k, with V_{-1} = ∅
/// and V_length = [n]. Requires 0 <= k < v.length().
bool domination(const SubsetFlag& v, int k);

struct LimitMatrix {
  int n = 0;
  int level = 0;
  std::vector<SubsetFlag> flags;
  RatMatrix matrix;
};

LimitMatrix limit_matrix(int n, int i);

/// The members of v at which domination fails.
SubsetFlag characteristic_flag(const SubsetFlag& v);

struct Block {
  SubsetFlag char_flag;
  std::vector<std::size_t> members;  // indices into LimitMatrix::flags
};

struct BlockDecomposition {
  std::vector<Block> blocks;                       // by canonical char flag
  std::vector<std::vector<std::size_t>> components;  // of the off-diagonal support
  bool groups_match_components = false;
};

BlockDecomposition blocks(const LimitMatrix& d);
BlockDecomposition blocks(int n, int i);

/// Spectrum of Δ_j⁺ on Z_m, -1 <= j <= m-1.
spectra::SpectrumReport complete_walk_spectrum(int m, int j);

/// D restricted to the block.
spectra::DenseMatrix block_matrix(const LimitMatrix& d, const Block& block);

/// The block's eigenvalues (with multiplicity) against the walk of level
/// i-k on Z_{n-2-k}, k the char-flag length.
bool block_walk_equiv(const LimitMatrix& d, const Block& block, double tol = 1e-9);

/// {0} ∪ {n-1-j : 0 <= j <= i+1}.
std::vector<double> predicted_spectrum(int n, int i);

/// Candidate limit sets, each with 0 adjoined:
///   corollary  {n-i-2, ..., n-1}
///   abstract   {n-i, ..., n-1}
///   intro      {n+1-i, ..., n+1}
struct LimitStatement {
  std::string name;
  std::vector<double> values;
};
std::vector<LimitStatement> limit_statements(int n, int i);

/// {n, level, blocks: [{char_flag, size, spectrum}], predicted_spectrum}.
std::string block_report_json(const LimitMatrix& d, const BlockDecomposition& b, int indent = 2);

}  // namespace walklab::limit
