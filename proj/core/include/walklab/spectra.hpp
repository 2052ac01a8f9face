#pragma once

// Symmetric eigensolving, exact minimal polynomials and spectrum-set
// comparisons.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "walklab/exact.hpp"
#include "walklab/rat_matrix.hpp"

namespace walklab::spectra {

/// Row-major dense real matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  static DenseMatrix from(const RatMatrix& m);
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);

struct SpectrumReport {
  /// All eigenvalues, ascending, with repetition.
  std::vector<double> eigenvalues;
  /// Deduplicated values and their multiplicities.
  std::vector<double> values;
  std::vector<std::size_t> multiplicities;
  std::size_t distinct_count_float = 0;
  std::optional<std::size_t> distinct_count_exact;
  double tol = 1e-7;
  /// ||V^T V - I||_max for the Jacobi path.
  std::optional<double> orthogonality_residual;
  std::string method;
};

/// Groups sorted eigenvalues whose consecutive gaps are <= dedup_tol.
SpectrumReport make_report(std::vector<double> eigenvalues, double dedup_tol = 1e-7);

struct EigOptions {
  /// Jacobi stops once the off-diagonal Frobenius mass is below
  /// stop_tol * ||M||_F.
  double stop_tol = 1e-12;
  double dedup_tol = 1e-7;
  /// Larger matrices go to a tridiagonal QR solver.
  std::size_t jacobi_limit = 256;
};

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  DenseMatrix eigenvectors;         // columns, matching eigenvalues
  int sweeps = 0;
  double orthogonality_residual = 0.0;
};

/// Cyclic Jacobi rotations. Throws Error(domain) on non-symmetric input.
JacobiResult jacobi(const DenseMatrix& m, double stop_tol = 1e-12);

/// Throws Error(domain) unless m is symmetric within 1e-12 relative.
SpectrumReport sym_eig(const DenseMatrix& m, const EigOptions& options = {});

/// Eigenvalues of a general real square matrix.
std::vector<std::complex<double>> general_eigenvalues(const DenseMatrix& m);

/// Polynomials over Q, coefficients from the constant term up.
using Polynomial = std::vector<Rational>;

int degree(const Polynomial& p);
Polynomial poly_gcd(Polynomial a, Polynomial b);
Polynomial poly_lcm(const Polynomial& a, const Polynomial& b);
/// p(m) x
RatVector poly_apply(const RatMatrix& m, const Polynomial& p, const RatVector& x);

/// Monic minimal polynomial of x under m, by exact Krylov elimination.
Polynomial krylov_minpoly(const RatMatrix& m, const RatVector& x);

/// Degrees of the Krylov minimal polynomials of `trials` random vectors.
std::vector<int> krylov_degrees(const RatMatrix& m, int trials = 5, std::uint64_t seed = 1);

/// Minimal polynomial of m: lcm of random Krylov minimal polynomials,
/// confirmed by p(m) e_j = 0 for every unit vector e_j.
Polynomial minimal_polynomial(const RatMatrix& m, int trials = 5, std::uint64_t seed = 1);

/// Number of distinct eigenvalues of a diagonalizable m.
std::size_t minpoly_distinct_count(const RatMatrix& m, int trials = 5, std::uint64_t seed = 1);

/// Checks p(m) x = 0 for `trials` random x modulo two 60-bit primes. A false
/// result is a proof that p(m) != 0; a true result fails to hold with
/// probability below trials * 2^-59.
bool annihilates(const RatMatrix& m, const Polynomial& p, int trials = 3,
                 std::uint64_t seed = 1);

/// Hausdorff distance between finite sets. Throws Error(domain) on empty
/// input.
double set_distance(const std::vector<double>& a, const std::vector<double>& b);

bool spectrum_set_equal(const SpectrumReport& a, const SpectrumReport& b, double tol = 1e-8);

/// "eigenvalue,multiplicity" header, then one row per distinct value with
/// 17 significant digits.
void write_spectrum_csv(std::ostream& out, const SpectrumReport& r);

}  // namespace walklab::spectra
