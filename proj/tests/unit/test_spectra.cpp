#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "walklab/chain.hpp"
#include "walklab/complex.hpp"
#include "walklab/errors.hpp"
#include "walklab/quotient.hpp"
#include "walklab/spectra.hpp"

using namespace walklab;
using namespace walklab::spectra;

namespace {

std::vector<RatVector> random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-20, 20);
  std::vector<RatVector> m(n, RatVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) m[r][c] = m[c][r] = make_rational(d(rng), 1 + static_cast<int>(rng() % 4));
  return m;
}

DenseMatrix to_dense(const std::vector<RatVector>& m) { return DenseMatrix::from(RatMatrix::from_dense(m)); }

Polynomial poly(std::initializer_list<int> coeffs) {
  Polynomial p;
  for (int c : coeffs) p.emplace_back(c);
  return p;
}

}  // namespace

TEST_CASE("Jacobi eigenvalues agree with exact inertia counts") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const auto m = random_symmetric(n, rng);
    const auto jr = jacobi(to_dense(m));
    REQUIRE(jr.eigenvalues.size() == n);
    CHECK(std::is_sorted(jr.eigenvalues.begin(), jr.eigenvalues.end()));
    CHECK(jr.orthogonality_residual < 1e-10);
    for (int step = -400; step <= 400; ++step) {
      const Rational x(step, 8);
      const double xd = x.get_d();
      bool near = false;
      for (double e : jr.eigenvalues) near = near || std::abs(e - xd) < 1e-6;
      if (near) continue;
      const auto below = oracle::eigenvalues_below(m, x);
      if (!below) continue;
      const auto count = std::count_if(jr.eigenvalues.begin(), jr.eigenvalues.end(),
                                       [&](double e) { return e < xd; });
      CHECK(count == *below);
    }
  }
}

TEST_CASE("Jacobi eigenvectors") {
  std::mt19937_64 rng(43);
  const auto m = random_symmetric(6, rng);
  const DenseMatrix a = to_dense(m);
  const auto jr = jacobi(a);
  for (std::size_t k = 0; k < 6; ++k) {
    double res = 0.0;
    for (std::size_t r = 0; r < 6; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < 6; ++c) s += a(r, c) * jr.eigenvectors(c, k);
      res = std::max(res, std::abs(s - jr.eigenvalues[k] * jr.eigenvectors(r, k)));
    }
    CHECK(res < 1e-10);
  }
}

TEST_CASE("Jacobi and the tridiagonal path agree") {
  std::mt19937_64 rng(47);
  const auto m = random_symmetric(40, rng);
  const auto a = to_dense(m);
  EigOptions eigen_path;
  eigen_path.jacobi_limit = 0;
  const auto x = sym_eig(a);
  const auto y = sym_eig(a, eigen_path);
  CHECK(x.method != y.method);
  REQUIRE(x.eigenvalues.size() == y.eigenvalues.size());
  for (std::size_t k = 0; k < x.eigenvalues.size(); ++k)
    CHECK(x.eigenvalues[k] == doctest::Approx(y.eigenvalues[k]).epsilon(1e-10));
  CHECK(x.orthogonality_residual.has_value());
}

TEST_CASE("symmetry is enforced") {
  const DenseMatrix a = DenseMatrix::from_rows({{1, 2}, {0, 1}});
  try {
    sym_eig(a);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
  const auto ev = general_eigenvalues(DenseMatrix::from_rows({{0, -1}, {1, 0}}));
  REQUIRE(ev.size() == 2);
  CHECK(std::abs(ev[0].real()) < 1e-12);
  CHECK(std::abs(std::abs(ev[0].imag()) - 1) < 1e-12);
}

TEST_CASE("multiplicity clustering") {
  const auto rep = make_report({0.0, 1.0, 1.0 + 1e-9, 1.0 - 1e-9, 3.0}, 1e-7);
  CHECK(rep.values.size() == 3);
  CHECK(rep.multiplicities == std::vector<std::size_t>{1, 3, 1});
  CHECK(rep.distinct_count_float == 3);
  CHECK(rep.values[1] == doctest::Approx(1.0));
  std::ostringstream out;
  write_spectrum_csv(out, rep);
  CHECK(out.str().rfind("eigenvalue,multiplicity\n0,1\n1,3\n", 0) == 0);
}

TEST_CASE("polynomial helpers") {
  // (x-1)(x-2) and (x-1)(x-3)
  const Polynomial a = poly({2, -3, 1});
  const Polynomial b = poly({3, -4, 1});
  CHECK(degree(a) == 2);
  CHECK(poly_gcd(a, b) == poly({-1, 1}));
  CHECK(poly_lcm(a, b) == poly({-6, 11, -6, 1}));
  CHECK(degree(poly({0})) == -1);
}

TEST_CASE("minimal polynomials") {
  SUBCASE("diagonal with repeats") {
    const RatMatrix m = RatMatrix::from_dense({{1, 0, 0}, {0, 2, 0}, {0, 0, 1}});
    CHECK(minimal_polynomial(m) == poly({2, -3, 1}));
    CHECK(minpoly_distinct_count(m) == 2);
  }
  SUBCASE("nilpotent block") {
    const RatMatrix m = RatMatrix::from_dense({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}});
    CHECK(minimal_polynomial(m) == poly({0, 0, 1}));
  }
  SUBCASE("Krylov sequence of one vector") {
    const RatMatrix m = RatMatrix::from_dense({{2, 0}, {0, 3}});
    CHECK(krylov_minpoly(m, {1, 0}) == poly({-2, 1}));
    CHECK(krylov_minpoly(m, {1, 1}) == poly({6, -5, 1}));
  }
  SUBCASE("Fano walk has four distinct eigenvalues") {
    const Complex c = build_building(3, 2, 1);
    const RatMatrix delta = chain::updown(c, 0);
    const Polynomial p = minimal_polynomial(delta);
    CHECK(degree(p) == 4);
    CHECK(annihilates(delta, p));
    Polynomial partial = poly_gcd(p, poly({0, 1}));  // x
    CHECK(degree(partial) == 1);
    CHECK_FALSE(annihilates(delta, poly({0, 1})));
    for (const auto& deg : krylov_degrees(delta, 4)) CHECK(deg <= 4);
  }
  SUBCASE("random rational matrices") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
      const RatMatrix m = RatMatrix::from_dense(random_symmetric(5, rng));
      const Polynomial p = minimal_polynomial(m);
      for (std::size_t j = 0; j < 5; ++j) {
        RatVector e(5, 0);
        e[j] = 1;
        for (const auto& v : poly_apply(m, p, e)) CHECK(v == 0);
      }
      CHECK(annihilates(m, p));
      CHECK(minpoly_distinct_count(m) == 5);
    }
  }
}

TEST_CASE("set comparisons") {
  CHECK(set_distance({0, 1, 2}, {0, 2, 1}) == 0.0);
  CHECK(set_distance({0, 1}, {0, 1, 1.5}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(set_distance({}, {1.0}), Error);
  SpectrumReport a = make_report({0, 1, 1, 2});
  SpectrumReport b = make_report({0, 1, 2, 2, 2});
  SpectrumReport c = make_report({0, 1, 2 + 1e-6});
  CHECK(spectrum_set_equal(a, b));
  CHECK_FALSE(spectrum_set_equal(a, c));
}

TEST_CASE("Krylov degrees agree on desk-grid quotients") {
  for (int n : {3, 4}) {
    for (int q : {2, 3, 4, 5}) {
      for (int i = 0; i <= n - 3; ++i) {
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(i);
        const RatMatrix qm = quotient::closed_form_quotient(n, q, i);
        const auto count = minpoly_distinct_count(qm);
        for (auto d : krylov_degrees(qm, 5)) CHECK(static_cast<std::size_t>(d) == count);
        CHECK(sym_eig(quotient::symmetrize(qm).matrix).distinct_count_float == count);
      }
    }
  }
}
