#include "walklab/rat_matrix.hpp"

#include <algorithm>
#include <ostream>

#include "walklab/errors.hpp"

namespace walklab {

namespace {

auto col_less = [](const RatMatrix::Entry& e, std::uint32_t c) { return e.col < c; };

void same_shape(const RatMatrix& a, const RatMatrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::domain,
          "matrix shapes differ");
}

// Merges two sorted rows with coefficient sb on b.
RatMatrix::Row merge(const RatMatrix::Row& a, const RatMatrix::Row& b, int sb) {
  RatMatrix::Row out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      out.push_back({b[j].col, sb > 0 ? b[j].value : Rational(-b[j].value)});
      ++j;
    } else {
      Rational v = sb > 0 ? Rational(a[i].value + b[j].value) : Rational(a[i].value - b[j].value);
      if (v != 0) out.push_back({a[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {
  require(cols <= UINT32_MAX, ErrorKind::domain, "too many columns");
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({static_cast<std::uint32_t>(i), 1});
  return m;
}

RatMatrix RatMatrix::from_dense(const std::vector<RatVector>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  RatMatrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == nc, ErrorKind::domain, "ragged dense matrix");
    for (std::size_t c = 0; c < nc; ++c)
      if (rows[r][c] != 0) {
        Rational v = rows[r][c];
        v.canonicalize();
        m.data_[r].push_back({static_cast<std::uint32_t>(c), std::move(v)});
      }
  }
  return m;
}

std::size_t RatMatrix::nonzeros() const {
  std::size_t out = 0;
  for (const auto& r : data_) out += r.size();
  return out;
}

void RatMatrix::check(std::size_t r, std::size_t c) const {
  require(r < rows_ && c < cols_, ErrorKind::domain, "matrix index out of range");
}

Rational RatMatrix::at(std::size_t r, std::size_t c) const {
  check(r, c);
  const Row& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c), col_less);
  if (it != row.end() && it->col == c) return it->value;
  return 0;
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  check(r, c);
  Row& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(c), col_less);
  const bool present = it != row.end() && it->col == c;
  if (v == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->value = v;
  } else {
    row.insert(it, {static_cast<std::uint32_t>(c), v});
  }
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  set(r, c, at(r, c) + v);
}

void RatMatrix::set_row(std::size_t r, Row entries) {
  require(r < rows_, ErrorKind::domain, "row index out of range");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    require(entries[k].col < cols_, ErrorKind::domain, "column index out of range");
    if (k) require(entries[k - 1].col < entries[k].col, ErrorKind::structure,
                   "row entries must have increasing columns");
  }
  std::erase_if(entries, [](const Entry& e) { return e.value == 0; });
  data_[r] = std::move(entries);
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  require(a.cols() == b.rows(), ErrorKind::domain, "matrix product shape mismatch");
  RatMatrix out(a.rows(), b.cols());
  std::vector<Rational> acc(b.cols());
  std::vector<char> used(b.cols(), 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    touched.clear();
    for (const auto& ea : a.row(r)) {
      for (const auto& eb : b.row(ea.col)) {
        if (!used[eb.col]) {
          used[eb.col] = 1;
          acc[eb.col] = 0;
          touched.push_back(eb.col);
        }
        acc[eb.col] += ea.value * eb.value;
      }
    }
    std::sort(touched.begin(), touched.end());
    RatMatrix::Row row;
    row.reserve(touched.size());
    for (std::uint32_t c : touched) {
      used[c] = 0;
      if (acc[c] != 0) row.push_back({c, acc[c]});
    }
    out.set_row(r, std::move(row));
  }
  return out;
}

RatMatrix transpose(const RatMatrix& a) {
  std::vector<RatMatrix::Row> rows(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& e : a.row(r)) rows[e.col].push_back({static_cast<std::uint32_t>(r), e.value});
  RatMatrix out(a.cols(), a.rows());
  for (std::size_t c = 0; c < a.cols(); ++c) out.set_row(c, std::move(rows[c]));
  return out;
}

RatMatrix add(const RatMatrix& a, const RatMatrix& b) {
  same_shape(a, b);
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.set_row(r, merge(a.row(r), b.row(r), 1));
  return out;
}

RatMatrix subtract(const RatMatrix& a, const RatMatrix& b) {
  same_shape(a, b);
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.set_row(r, merge(a.row(r), b.row(r), -1));
  return out;
}

RatMatrix scale(const RatMatrix& a, const Rational& c) {
  RatMatrix out(a.rows(), a.cols());
  if (c == 0) return out;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    RatMatrix::Row row = a.row(r);
    for (auto& e : row) e.value *= c;
    out.set_row(r, std::move(row));
  }
  return out;
}

RatMatrix scale_rows(const RatVector& d, const RatMatrix& a) {
  require(d.size() == a.rows(), ErrorKind::domain, "row scaling length mismatch");
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    RatMatrix::Row row = a.row(r);
    for (auto& e : row) e.value *= d[r];
    out.set_row(r, std::move(row));
  }
  return out;
}

RatMatrix scale_cols(const RatMatrix& a, const RatVector& d) {
  require(d.size() == a.cols(), ErrorKind::domain, "column scaling length mismatch");
  RatMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    RatMatrix::Row row = a.row(r);
    for (auto& e : row) e.value *= d[e.col];
    out.set_row(r, std::move(row));
  }
  return out;
}

RatVector apply(const RatMatrix& a, const RatVector& x) {
  require(x.size() == a.cols(), ErrorKind::domain, "vector length mismatch");
  RatVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Rational s = 0;
    for (const auto& e : a.row(r)) s += e.value * x[e.col];
    out[r] = std::move(s);
  }
  return out;
}

bool is_symmetric(const RatMatrix& a) {
  return a.rows() == a.cols() && a == transpose(a);
}

bool is_zero(const RatMatrix& a) { return a.nonzeros() == 0; }

std::vector<double> to_dense_double(const RatMatrix& a) {
  std::vector<double> out(a.rows() * a.cols(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& e : a.row(r)) out[r * a.cols() + e.col] = e.value.get_d();
  return out;
}

void write_triplets(std::ostream& out, const RatMatrix& a) {
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonzeros() << '\n';
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& e : a.row(r))
      out << r << ' ' << e.col << ' ' << e.value.get_num().get_str() << ' '
          << e.value.get_den().get_str() << '\n';
}

void write_dense_csv(std::ostream& out, const RatMatrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (c) out << ',';
      out << to_string(a.at(r, c));
    }
    out << '\n';
  }
}

}  // namespace walklab
