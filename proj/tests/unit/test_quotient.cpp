#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "walklab/chain.hpp"
#include "walklab/complex.hpp"
#include "walklab/errors.hpp"
#include "walklab/qcount.hpp"
#include "walklab/quotient.hpp"
#include "walklab/spectra.hpp"
#include "json.hpp"

using namespace walklab;
using namespace walklab::quotient;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::config;
}

SubsetFlag flag(int n, std::vector<IndexSet> members) { return SubsetFlag(n, std::move(members)); }

}  // namespace

TEST_CASE("Fano quotient") {
  const Complex c = build_building(3, 2, 1);
  const RatMatrix delta = chain::updown(c, 0);
  const BuildingQuotient bq = building_quotient(c, 0, delta);
  REQUIRE(bq.flags.size() == 6);
  const RatMatrix& m = bq.quotient.graph.adjacency;
  const auto a = *flag_index(bq.flags, flag(3, {IndexSet{3}}));
  const auto b = *flag_index(bq.flags, flag(3, {IndexSet{2, 3}}));
  const auto e = *flag_index(bq.flags, flag(3, {IndexSet{1, 3}}));
  CHECK(m.at(a, b) == Rational(-2, 3));
  CHECK(m.at(a, e) == Rational(-1, 3));
  CHECK(m.at(a, a) == 1);
  CHECK(bq.quotient.orbit_sizes[a] == 4);
  std::size_t total = 0;
  for (auto s : bq.quotient.orbit_sizes) total += s;
  CHECK(total == 14);

  const auto qs = spectra::sym_eig(symmetrize(m).matrix);
  const auto ds = spectra::sym_eig(chain::symmetrized_updown(c, 0, delta));
  CHECK(spectra::spectrum_set_equal(qs, ds));
  CHECK(qs.values.size() == 4);
}

TEST_CASE("constructed quotient equals the closed form") {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {3, 4}, {3, 5}, {4, 2}, {4, 3}, {5, 2}}) {
    for (int i = 0; i <= n - 3; ++i) {
      CAPTURE(n);
      CAPTURE(q);
      CAPTURE(i);
      const BuildingQuotient bq = building_quotient(n, q, i);
      CHECK(bq.flags.size() == qcount::quotient_size(n, i));
      CHECK(bq.quotient.graph.adjacency == closed_form_quotient(n, q, i));
      for (std::size_t k = 0; k < bq.flags.size(); ++k)
        CHECK(qcount::orbit_size(bq.flags[k], q) == bq.quotient.orbit_sizes[k]);
    }
  }
}

TEST_CASE("closed form at large q stays exact") {
  const RatMatrix m = closed_form_quotient(5, 1'000'003, 2);
  CHECK(m.rows() == qcount::quotient_size(5, 2));
  for (std::size_t r = 0; r < m.rows(); ++r) CHECK(m.at(r, r) == 1);
  const RatMatrix m2 = closed_form_quotient(4, 7, 1);
  CHECK(quotient::symmetrize(m2).matrix.rows() == m2.rows());
}

TEST_CASE("pullback and spectral containment") {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}}) {
    const Complex c = build_building(n, q, n - 2);
    for (int i = 0; i <= n - 3; ++i) {
      const RatMatrix delta = chain::updown(c, i);
      const BuildingQuotient bq = building_quotient(c, i, delta);
      CHECK(pullback_identity(delta, bq.quotient.labeling, bq.quotient.graph.adjacency));
      CHECK(spectral_containment_check(graph_from_operator(delta), bq.quotient.labeling,
                                       bq.flags.size(), 1e-7));
      RatMatrix wrong = bq.quotient.graph.adjacency;
      wrong.add(0, 0, 1);
      CHECK_FALSE(pullback_identity(delta, bq.quotient.labeling, wrong));
    }
  }
}

TEST_CASE("symmetrization") {
  const RatMatrix a = RatMatrix::from_dense({{2, Rational(-1, 3)}, {Rational(-3, 4), 1}});
  const Symmetrized s = symmetrize(a);
  CHECK(s.products.at(0, 1) == Rational(-1, 4));
  CHECK(s.products.at(0, 0) == 4);
  CHECK(s.matrix(0, 1) == doctest::Approx(-0.5));
  CHECK(s.matrix(1, 0) == doctest::Approx(-0.5));
  const auto ev = spectra::sym_eig(s.matrix).eigenvalues;
  const auto gev = spectra::general_eigenvalues(spectra::DenseMatrix::from(a));
  std::vector<double> re;
  for (auto z : gev) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  CHECK(ev[0] == doctest::Approx(re[0]));
  CHECK(ev[1] == doctest::Approx(re[1]));
  CHECK(kind_of([] { symmetrize(RatMatrix::from_dense({{1, 1}, {0, 1}})); }) == ErrorKind::structure);
  CHECK(kind_of([] { symmetrize(RatMatrix::from_dense({{1, 1}, {-1, 1}})); }) == ErrorKind::structure);
}

TEST_CASE("labelings that are not equitable are rejected") {
  const Complex c = build_building(3, 2, 1);
  const RatMatrix delta = chain::updown(c, 0);
  std::vector<std::size_t> parity(14);
  for (std::size_t x = 0; x < 14; ++x) parity[x] = x % 2;
  CHECK(kind_of([&] { walklab::quotient::quotient(graph_from_operator(delta), parity, 2); }) == ErrorKind::invalid_quotient);
  // Color classes are equitable.
  std::vector<std::size_t> colors(14);
  for (std::size_t x = 0; x < 14; ++x) colors[x] = static_cast<std::size_t>(c.color(static_cast<VertexId>(x)) - 1);
  const QuotientGraph g = walklab::quotient::quotient(graph_from_operator(delta), colors, 2);
  CHECK(g.graph.adjacency.at(0, 0) == 1);
  CHECK(g.graph.adjacency.at(0, 1) == -1);
  CHECK(kind_of([&] { walklab::quotient::quotient(graph_from_operator(delta), colors, 3); }) == ErrorKind::domain);
}

TEST_CASE("closed-form entry validation") {
  const SubsetFlag v = flag(3, {IndexSet{3}, IndexSet{2, 3}});
  CHECK(closed_form_entry(v, 0, 1, 2) == Rational(-2, 3));
  CHECK(closed_form_entry(v, 1, 0, 2) == Rational(-2, 3));
  CHECK(closed_form_entry(flag(3, {IndexSet{3}, IndexSet{1, 3}}), 1, 0, 2) == Rational(-1, 3));
  CHECK(closed_form_entry(v, 0, 0, 2) == 1);
  CHECK(kind_of([&] { closed_form_entry(v, 0, 2, 2); }) == ErrorKind::domain);
  CHECK(kind_of([] { closed_form_quotient(3, 2, 1); }) == ErrorKind::domain);
}

TEST_CASE("JSON export") {
  const BuildingQuotient bq = building_quotient(3, 2, 0);
  const auto j = nlohmann::json::parse(quotient_json(bq));
  CHECK(j["n"] == 3);
  CHECK(j["q"] == 2);
  CHECK(j["level"] == 0);
  CHECK(j["vertices"].size() == 6);
  CHECK(j["orbit_sizes"].size() == 6);
  CHECK(j["equitable"] == true);
  bool found = false;
  for (const auto& t : j["matrix"]) found = found || t[2] == "-2/3";
  CHECK(found);
}
