#include "walklab/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "walklab/errors.hpp"

namespace walklab::spectra {

namespace {

__extension__ typedef unsigned __int128 u128;

void check_square(const DenseMatrix& m) {
  require(m.rows() == m.cols(), ErrorKind::domain, "matrix is not square");
}

void check_symmetric(const DenseMatrix& m) {
  check_square(m);
  const double scale = std::max(1.0, max_abs(m));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      require(std::abs(m(i, j) - m(j, i)) <= 1e-12 * scale, ErrorKind::domain,
              "matrix is not symmetric");
}

Eigen::MatrixXd to_eigen(const DenseMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return out;
}

void trim(Polynomial& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_monic(Polynomial& p) {
  trim(p);
  if (p.empty()) return;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
}

// a mod b for nonzero b.
Polynomial poly_mod(Polynomial a, const Polynomial& b) {
  trim(a);
  const int db = degree(b);
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Rational f = a.back() / b.back();
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= f * b[static_cast<std::size_t>(k)];
    trim(a);
  }
  return a;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

// Exact quotient of a by b (b divides a).
Polynomial poly_div(Polynomial a, const Polynomial& b) {
  trim(a);
  const int db = degree(b);
  if (degree(a) < db) return {};
  Polynomial q(static_cast<std::size_t>(degree(a) - db + 1), Rational(0));
  while (degree(a) >= db) {
    const int shift = degree(a) - db;
    const Rational f = a.back() / b.back();
    q[static_cast<std::size_t>(shift)] = f;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(k + shift)] -= f * b[static_cast<std::size_t>(k)];
    trim(a);
  }
  return q;
}

RatVector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-50, 50);
  RatVector v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

bool all_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_of(const QInt& x, std::uint64_t p) {
  static_assert(sizeof(unsigned long) == 8);
  return mpz_fdiv_ui(x.get_mpz_t(), p);
}

// Reduction of a rational modulo p; false when p divides the denominator.
bool rational_mod(const Rational& x, std::uint64_t p, std::uint64_t* out) {
  const std::uint64_t den = mod_of(x.get_den(), p);
  if (den == 0) return false;
  *out = mulmod(mod_of(x.get_num(), p), powmod(den, p - 2, p), p);
  return true;
}

}  // namespace

DenseMatrix DenseMatrix::from(const RatMatrix& m) {
  DenseMatrix out(m.rows(), m.cols());
  out.data_ = to_dense_double(m);
  return out;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  DenseMatrix out(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == nc, ErrorKind::domain, "ragged dense matrix");
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = rows[r][c];
  }
  return out;
}

double frobenius_norm(const DenseMatrix& m) {
  double s = 0;
  for (double x : m.data()) s += x * x;
  return std::sqrt(s);
}

double max_abs(const DenseMatrix& m) {
  double s = 0;
  for (double x : m.data()) s = std::max(s, std::abs(x));
  return s;
}

SpectrumReport make_report(std::vector<double> eigenvalues, double dedup_tol) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  SpectrumReport r;
  r.tol = dedup_tol;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    if (k > 0 && eigenvalues[k] - eigenvalues[k - 1] <= dedup_tol) {
      // Running mean of the cluster.
      const double cnt = static_cast<double>(++r.multiplicities.back());
      r.values.back() += (eigenvalues[k] - r.values.back()) / cnt;
    } else {
      r.values.push_back(eigenvalues[k]);
      r.multiplicities.push_back(1);
    }
  }
  r.distinct_count_float = r.values.size();
  r.eigenvalues = std::move(eigenvalues);
  return r;
}

JacobiResult jacobi(const DenseMatrix& m, double stop_tol) {
  check_symmetric(m);
  const std::size_t n = m.rows();
  DenseMatrix a = m;
  DenseMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;
  const double norm = frobenius_norm(m);
  JacobiResult res;
  auto off = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  while (norm > 0 && off() >= stop_tol * norm && res.sweeps < 100) {
    ++res.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  res.eigenvectors = DenseMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues.push_back(a(order[k], order[k]));
    for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, k) = v(i, order[k]);
  }
  double resid = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < n; ++k) dot += v(k, i) * v(k, j);
      resid = std::max(resid, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  res.orthogonality_residual = resid;
  return res;
}

SpectrumReport sym_eig(const DenseMatrix& m, const EigOptions& options) {
  check_symmetric(m);
  if (m.rows() <= options.jacobi_limit) {
    JacobiResult j = jacobi(m, options.stop_tol);
    SpectrumReport r = make_report(std::move(j.eigenvalues), options.dedup_tol);
    r.orthogonality_residual = j.orthogonality_residual;
    r.method = "jacobi";
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::resource, "eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  SpectrumReport r = make_report(std::vector<double>(ev.data(), ev.data() + ev.size()),
                                 options.dedup_tol);
  r.method = "tridiagonal-qr";
  return r;
}

std::vector<std::complex<double>> general_eigenvalues(const DenseMatrix& m) {
  check_square(m);
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), false);
  require(solver.info() == Eigen::Success, ErrorKind::resource, "eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

int degree(const Polynomial& p) {
  for (std::size_t k = p.size(); k-- > 0;)
    if (p[k] != 0) return static_cast<int>(k);
  return -1;
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Polynomial r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

Polynomial poly_lcm(const Polynomial& a, const Polynomial& b) {
  if (degree(a) < 0) return b;
  if (degree(b) < 0) return a;
  Polynomial out = poly_div(poly_mul(a, b), poly_gcd(a, b));
  make_monic(out);
  return out;
}

RatVector poly_apply(const RatMatrix& m, const Polynomial& p, const RatVector& x) {
  require(m.rows() == m.cols() && x.size() == m.cols(), ErrorKind::domain,
          "polynomial application shape mismatch");
  RatVector r(x.size(), Rational(0));
  for (int k = degree(p); k >= 0; --k) {
    r = walklab::apply(m, r);
    const Rational& c = p[static_cast<std::size_t>(k)];
    if (c != 0)
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += c * x[i];
  }
  return r;
}

Polynomial krylov_minpoly(const RatMatrix& m, const RatVector& x) {
  require(m.rows() == m.cols() && x.size() == m.cols(), ErrorKind::domain,
          "Krylov shape mismatch");
  if (all_zero(x)) return {Rational(1)};
  // basis[j] is reduced with a unit pivot; coef[j] expresses it as a
  // polynomial in m applied to x.
  std::vector<RatVector> basis;
  std::vector<Polynomial> coef;
  std::vector<std::size_t> pivot;
  RatVector power = x;
  for (std::size_t k = 0;; ++k) {
    RatVector u = power;
    Polynomial c(k + 1, Rational(0));
    c[k] = 1;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Rational f = u[pivot[j]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < u.size(); ++i)
        if (basis[j][i] != 0) u[i] -= f * basis[j][i];
      for (std::size_t i = 0; i < coef[j].size(); ++i) c[i] -= f * coef[j][i];
    }
    const auto it = std::find_if(u.begin(), u.end(), [](const Rational& v) { return v != 0; });
    if (it == u.end()) {
      make_monic(c);
      return c;
    }
    const std::size_t p = static_cast<std::size_t>(it - u.begin());
    const Rational inv = 1 / u[p];
    for (auto& v : u) v *= inv;
    for (auto& v : c) v *= inv;
    basis.push_back(std::move(u));
    coef.push_back(std::move(c));
    pivot.push_back(p);
    power = walklab::apply(m, power);
  }
}

std::vector<int> krylov_degrees(const RatMatrix& m, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> out;
  for (int t = 0; t < trials; ++t)
    out.push_back(degree(krylov_minpoly(m, random_vector(m.cols(), rng))));
  return out;
}

Polynomial minimal_polynomial(const RatMatrix& m, int trials, std::uint64_t seed) {
  require(m.rows() == m.cols(), ErrorKind::domain, "matrix is not square");
  std::mt19937_64 rng(seed);
  Polynomial p = {Rational(1)};
  for (int t = 0; t < trials; ++t) p = poly_lcm(p, krylov_minpoly(m, random_vector(m.cols(), rng)));
  // Any unit vector that p fails to annihilate contributes its own factor.
  for (std::size_t j = 0; j < m.cols(); ++j) {
    RatVector e(m.cols(), Rational(0));
    e[j] = 1;
    if (!all_zero(poly_apply(m, p, e))) p = poly_lcm(p, krylov_minpoly(m, e));
  }
  return p;
}

std::size_t minpoly_distinct_count(const RatMatrix& m, int trials, std::uint64_t seed) {
  return static_cast<std::size_t>(degree(minimal_polynomial(m, trials, seed)));
}

bool annihilates(const RatMatrix& m, const Polynomial& p, int trials, std::uint64_t seed) {
  require(m.rows() == m.cols(), ErrorKind::domain, "matrix is not square");
  static constexpr std::uint64_t kPrimes[] = {2305843009213693951ull, 1000000000000000003ull,
                                              1000000000000000009ull};
  const std::size_t n = m.rows();
  std::mt19937_64 rng(seed);
  int used = 0;
  for (std::uint64_t prime : kPrimes) {
    if (used == 2) break;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(n);
    bool ok = true;
    for (std::size_t r = 0; r < n && ok; ++r) {
      for (const auto& e : m.row(r)) {
        std::uint64_t v = 0;
        ok = ok && rational_mod(e.value, prime, &v);
        rows[r].emplace_back(e.col, v);
      }
    }
    std::vector<std::uint64_t> coeffs;
    for (const auto& c : p) {
      std::uint64_t v = 0;
      ok = ok && rational_mod(c, prime, &v);
      coeffs.push_back(v);
    }
    if (!ok) continue;
    ++used;
    std::uniform_int_distribution<std::uint64_t> dist(0, prime - 1);
    for (int t = 0; t < trials; ++t) {
      std::vector<std::uint64_t> x(n);
      for (auto& v : x) v = dist(rng);
      std::vector<std::uint64_t> r(n, 0);
      std::vector<std::uint64_t> next(n);
      for (int k = degree(p); k >= 0; --k) {
        for (std::size_t i = 0; i < n; ++i) {
          std::uint64_t s = mulmod(coeffs[static_cast<std::size_t>(k)], x[i], prime);
          for (const auto& [c, v] : rows[i]) s = (s + mulmod(v, r[c], prime)) % prime;
          next[i] = s;
        }
        std::swap(r, next);
      }
      if (std::any_of(r.begin(), r.end(), [](std::uint64_t v) { return v != 0; })) return false;
    }
  }
  require(used > 0, ErrorKind::domain, "no usable modulus for the certificate");
  return true;
}

double set_distance(const std::vector<double>& a, const std::vector<double>& b) {
  require(!a.empty() && !b.empty(), ErrorKind::domain, "set_distance of an empty set");
  auto directed = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0;
    for (double u : x) {
      double best = INFINITY;
      for (double v : y) best = std::min(best, std::abs(u - v));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

bool spectrum_set_equal(const SpectrumReport& a, const SpectrumReport& b, double tol) {
  if (a.values.empty() || b.values.empty()) return a.values.empty() && b.values.empty();
  return set_distance(a.values, b.values) <= tol;
}

void write_spectrum_csv(std::ostream& out, const SpectrumReport& r) {
  out << "eigenvalue,multiplicity\n";
  char buf[64];
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", r.values[k]);
    out << buf << ',' << r.multiplicities[k] << '\n';
  }
}

}  // namespace walklab::spectra
