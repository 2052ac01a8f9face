#pragma once

// Exact q-analog counts for subspaces and flags of F_q^n. Every function
// accepts an arbitrary integer q >= 2; no field construction is involved.

#include <vector>

#include "walklab/exact.hpp"
#include "walklab/index_set.hpp"

namespace walklab::qcount {

/// Number of k-dimensional subspaces of F_q^n:
/// prod_{i=1..k} (q^{n-i+1} - 1) / (q^i - 1).
QInt gauss_binom(int n, int k, long long q);

/// Number of full flags of F_q^m, prod_{d=2..m} [d choose 1]_q.
QInt full_flag_count(int m, long long q);

/// Subspaces of F_q^n with height profile W:
/// prod_{j in W} q^{#{j' not in W : j' < j}}.
QInt profile_count(int n, IndexSet w, long long q);

/// Subspaces of profile `mid` lying between fixed subspaces of profiles
/// `lo` ⊊ `mid` ⊊ `hi`: prod_{j in mid\lo} q^{#{j' in hi\mid : j' < j}}.
QInt sandwich_count(IndexSet lo, IndexSet mid, IndexSet hi, long long q);

/// Number of i-flags of nonempty proper subsets of [n], i.e. ordered
/// partitions of [n] into i+2 nonempty blocks:
/// sum_{k=0}^{i+1} C(i+2,k) (-1)^k (i+2-k)^n. Requires 0 <= i <= n-3.
QInt quotient_size(int n, int i);

/// Same sum without the range restriction (i >= -1).
QInt ordered_partitions(int n, int blocks);

/// Full flags of F_q^n through a simplex of type c_0 < ... < c_i:
/// prod_j full_flag_count(c_{j+1} - c_j) with c_{-1} = 0, c_{i+1} = n.
/// The empty type gives the total number of full flags.
QInt simplex_weight_formula(const std::vector<int>& type, int n, long long q);

/// w(s) / w(s minus its k-th vertex) for s of the given type:
/// 1 / [c_{k+1} - c_{k-1} choose c_k - c_{k-1}]_q.
Rational edge_weight_ratio(const std::vector<int>& type, int k, int n, long long q);

/// Number of flags of subspaces of F_q^n whose height-profile flag is V.
QInt orbit_size(const SubsetFlag& v, long long q);

}  // namespace walklab::qcount
