#pragma once

// Sparse matrices with exact rational entries. Rows are stored as sorted
// (column, value) lists with no explicit zeros.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "walklab/exact.hpp"

namespace walklab {

using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  struct Entry {
    std::uint32_t col;
    Rational value;
    bool operator==(const Entry&) const = default;
  };
  using Row = std::vector<Entry>;

  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);
  static RatMatrix from_dense(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  const Row& row(std::size_t r) const { return data_[r]; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);
  /// Replaces row r; entries must have strictly increasing columns.
  void set_row(std::size_t r, Row entries);

  bool operator==(const RatMatrix&) const = default;

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

/// Throws Error(domain) on a shape mismatch.
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatMatrix transpose(const RatMatrix& a);
RatMatrix add(const RatMatrix& a, const RatMatrix& b);
RatMatrix subtract(const RatMatrix& a, const RatMatrix& b);
RatMatrix scale(const RatMatrix& a, const Rational& c);
/// diag(d) * a
RatMatrix scale_rows(const RatVector& d, const RatMatrix& a);
/// a * diag(d)
RatMatrix scale_cols(const RatMatrix& a, const RatVector& d);
RatVector apply(const RatMatrix& a, const RatVector& x);
bool is_symmetric(const RatMatrix& a);
bool is_zero(const RatMatrix& a);

/// Row-major doubles.
std::vector<double> to_dense_double(const RatMatrix& a);

/// "rows cols nonzeros" header, then "row col numerator denominator" per
/// nonzero, 0-based, row-major.
void write_triplets(std::ostream& out, const RatMatrix& a);
/// Exact entries as "p/q" strings, comma separated, one line per row.
void write_dense_csv(std::ostream& out, const RatMatrix& a);

}  // namespace walklab
