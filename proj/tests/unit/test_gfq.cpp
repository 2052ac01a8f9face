#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "walklab/errors.hpp"
#include "walklab/gfq.hpp"
#include "walklab/qcount.hpp"

using namespace walklab;
using namespace walklab::gfq;

namespace {

Vec random_vec(const FiniteField& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, f.order() - 1);
  Vec v(n);
  for (int j = 1; j <= n; ++j) v.set(j, static_cast<Elem>(d(rng)));
  return v;
}

// Random independent family of size k.
std::vector<Vec> random_basis(const FiniteField& f, int n, int k, std::mt19937_64& rng) {
  while (true) {
    std::vector<Vec> out;
    for (int m = 0; m < k; ++m) out.push_back(random_vec(f, n, rng));
    if (static_cast<int>(oracle::span_of(f, n, out).size()) == static_cast<int>(std::pow(f.order(), k)))
      return out;
  }
}

// Random combination basis of the same span.
std::vector<Vec> rebase(const FiniteField& f, const std::vector<Vec>& basis, std::mt19937_64& rng) {
  const int n = basis.front().dim();
  const int k = static_cast<int>(basis.size());
  while (true) {
    std::vector<Vec> out;
    std::uniform_int_distribution<int> d(0, f.order() - 1);
    for (int m = 0; m < k; ++m) {
      Vec v(n);
      for (const auto& b : basis) {
        const Elem c = static_cast<Elem>(d(rng));
        for (int j = 1; j <= n; ++j) v.set(j, f.add(v[j], f.mul(c, b[j])));
      }
      out.push_back(v);
    }
    if (oracle::span_of(f, n, out) == oracle::span_of(f, n, basis)) return out;
  }
}

FqMatrix random_upper(const FiniteField& f, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> any(0, f.order() - 1);
  std::uniform_int_distribution<int> nonzero(1, f.order() - 1);
  FqMatrix g(n);
  for (int r = 1; r <= n; ++r)
    for (int c = r; c <= n; ++c) g.set(r, c, static_cast<Elem>(r == c ? nonzero(rng) : any(rng)));
  return g;
}

bool is_canonical(const Subspace& s) {
  const auto& b = s.basis();
  for (std::size_t m = 0; m < b.size(); ++m) {
    const int h = height(b[m]);
    if (m > 0 && height(b[m - 1]) >= h) return false;
    if (b[m][h] != 1) return false;
    for (std::size_t o = 0; o < b.size(); ++o)
      if (o != m && b[o][h] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("prime power recognition") {
  int p = 0;
  int k = 0;
  CHECK(is_prime_power(8, &p, &k));
  CHECK(p == 2);
  CHECK(k == 3);
  CHECK(is_prime_power(13));
  CHECK_FALSE(is_prime_power(6));
  CHECK_FALSE(is_prime_power(1));
  CHECK_FALSE(is_prime_power(12));
}

TEST_CASE("field axioms hold exhaustively for every supported order") {
  for (int q : supported_orders()) {
    CAPTURE(q);
    const FiniteField f = make_field(q);
    CHECK(f.order() == q);
    for (int a = 0; a < q; ++a) {
      const Elem x = static_cast<Elem>(a);
      CHECK(f.add(x, 0) == x);
      CHECK(f.mul(x, 1) == x);
      CHECK(f.add(x, f.neg(x)) == 0);
      if (a) CHECK(f.mul(x, f.inv(x)) == 1);
      for (int b = 0; b < q; ++b) {
        const Elem y = static_cast<Elem>(b);
        CHECK(f.add(x, y) == f.add(y, x));
        CHECK(f.mul(x, y) == f.mul(y, x));
        for (int c = 0; c < q; ++c) {
          const Elem z = static_cast<Elem>(c);
          CHECK(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
          CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
          CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        }
      }
    }
  }
}

TEST_CASE("small field examples") {
  const FiniteField f2 = make_field(2);
  CHECK(f2.add(1, 1) == 0);
  const FiniteField f4 = make_field(4);
  const Elem g = f4.generator();
  CHECK(f4.mul(g, g) == f4.add(g, 1));
  CHECK_THROWS_AS(f4.inv(0), Error);
  CHECK_THROWS_AS(make_field(6), Error);
  try {
    make_field(6);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
  try {
    make_field(25);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
}

TEST_CASE("heights") {
  CHECK(height(Vec{1, 0, 1, 0}) == 3);
  CHECK(height(Vec::unit(5, 5)) == 5);
  CHECK(height(Vec{2, 1, 0}) == 2);
  try {
    height(Vec(3));
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("normalize_basis examples") {
  const FiniteField f2 = make_field(2);
  const std::vector<Vec> in = {Vec{1, 1, 0}, Vec{0, 1, 0}};
  const Subspace s = normalize_basis(f2, 3, in);
  REQUIRE(s.dim() == 2);
  CHECK(s.basis()[0] == Vec{1, 0, 0});
  CHECK(s.basis()[1] == Vec{0, 1, 0});
  const std::vector<Vec> e3 = {Vec{0, 0, 1}};
  CHECK(normalize_basis(f2, 3, e3).basis()[0] == Vec{0, 0, 1});
  const std::vector<Vec> dep = {Vec{1, 1, 0}, Vec{1, 1, 0}};
  try {
    normalize_basis(f2, 3, dep);
    FAIL("expected a rank error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::rank);
  }
}

TEST_CASE("canonical form is unique and idempotent on random bases of F_3^4") {
  const FiniteField f = make_field(3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = random_basis(f, 4, 2, rng);
    const auto b2 = rebase(f, b, rng);
    const Subspace s = normalize_basis(f, 4, b);
    CHECK(s == normalize_basis(f, 4, b2));
    CHECK(is_canonical(s));
    CHECK(normalize_basis(f, 4, s.basis()) == s);
    CHECK(oracle::span_of(f, 4, s.basis()) == oracle::span_of(f, 4, b));
  }
}

TEST_CASE("canonical uniqueness exhaustively for n <= 3, q <= 3") {
  for (int q : {2, 3}) {
    const FiniteField f = make_field(q);
    for (int n = 1; n <= 3; ++n) {
      const auto vectors = oracle::all_vectors(f, n);
      for (int d = 1; d <= n; ++d) {
        // Every ordered independent d-tuple; group by span.
        std::map<oracle::SpanSet, Subspace> seen;
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        while (true) {
          std::vector<Vec> tuple;
          for (auto k : idx) tuple.push_back(vectors[k]);
          const auto span = oracle::span_of(f, n, tuple);
          if (static_cast<long>(span.size()) == static_cast<long>(std::pow(q, d))) {
            const Subspace s = normalize_basis(f, n, tuple);
            auto [it, fresh] = seen.emplace(span, s);
            if (!fresh) CHECK(it->second == s);
            CHECK(s.profile() == oracle::heights_of(span));
          }
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == vectors.size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
        CHECK(seen.size() == qcount::gauss_binom(n, d, q).get_ui());
      }
    }
  }
}

TEST_CASE("canonical uniqueness sampled for n = 4, 5") {
  std::mt19937_64 rng(11);
  for (int q : {2, 3}) {
    const FiniteField f = make_field(q);
    for (int n : {4, 5}) {
      for (int trial = 0; trial < 30; ++trial) {
        const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        const auto b = random_basis(f, n, d, rng);
        CHECK(normalize_basis(f, n, b) == normalize_basis(f, n, rebase(f, b, rng)));
      }
    }
  }
}

TEST_CASE("profile examples") {
  const FiniteField f2 = make_field(2);
  const FiniteField f3 = make_field(3);
  CHECK(Subspace::coordinate(f3, 3, {2, 3}).profile() == IndexSet{2, 3});
  const std::vector<Vec> line = {Vec{1, 1, 0}};
  CHECK(normalize_basis(f2, 3, line).profile() == IndexSet{2});
  const std::vector<Vec> plane = {Vec{1, 1, 1}, Vec{0, 1, 0}};
  CHECK(normalize_basis(f2, 3, plane).profile() == IndexSet{2, 3});
}

TEST_CASE("flag normalization") {
  const FiniteField f2 = make_field(2);
  SUBCASE("single member matches normalize_basis") {
    const std::vector<Vec> b = {Vec{1, 1, 0}, Vec{0, 0, 1}};
    const FlagFq flag = flag_normalize(f2, 3, {b});
    CHECK(flag.chain()[0] == normalize_basis(f2, 3, b));
  }
  SUBCASE("span{e1+e2} ⊂ span{e1+e2, e2}") {
    const FlagFq flag = flag_normalize(f2, 3, {{Vec{1, 1, 0}}, {Vec{1, 1, 0}, Vec{0, 1, 0}}});
    CHECK(flag_profile(flag) == SubsetFlag(3, {IndexSet{2}, IndexSet{1, 2}}));
    CHECK(flag.chain()[0].basis()[0] == Vec{1, 1, 0});
    CHECK(flag.chain()[1].basis()[0] == Vec{1, 0, 0});
    CHECK(flag.chain()[1].basis()[1] == Vec{0, 1, 0});
    // Nested basis: the level-1 vector is zero at the level-0 height.
    REQUIRE(flag.nested_basis().size() == 2);
    CHECK(flag.nested_basis()[1][2] == 0);
  }
  SUBCASE("degenerate chains") {
    try {
      flag_normalize(f2, 3, {{Vec{1, 0, 0}}, {Vec{0, 1, 0}}});
      FAIL("expected a structure error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::structure);
    }
    try {
      flag_normalize(f2, 2, {{Vec{1, 0}, Vec{0, 1}}});
      FAIL("expected a structure error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::structure);
    }
  }
  SUBCASE("random full flags of F_2^4 keep their prefix spans") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const auto b = random_basis(f2, 4, 3, rng);
      std::vector<std::vector<Vec>> members;
      for (int k = 1; k <= 3; ++k) members.emplace_back(b.begin(), b.begin() + k);
      const FlagFq flag = flag_normalize(f2, 4, members);
      for (int k = 0; k < 3; ++k) {
        const auto span = oracle::span_of(f2, 4, members[static_cast<std::size_t>(k)]);
        std::vector<Vec> prefix;
        for (std::size_t m = 0; m < flag.nested_basis().size(); ++m)
          if (flag.nested_level()[m] <= k) prefix.push_back(flag.nested_basis()[m]);
        CHECK(oracle::span_of(f2, 4, prefix) == span);
        for (const auto& v : span) CHECK(membership(f2, v, flag.chain()[static_cast<std::size_t>(k)]));
      }
      const auto& nb = flag.nested_basis();
      for (std::size_t m = 0; m < nb.size(); ++m) {
        CHECK(nb[m][height(nb[m])] == 1);
        for (std::size_t o = 0; o < m; ++o) CHECK(nb[m][height(nb[o])] == 0);
      }
    }
  }
}

TEST_CASE("flag_profile examples") {
  const FiniteField f = make_field(3);
  const std::vector<Subspace> chain = {Subspace::coordinate(f, 3, {3}),
                                       Subspace::coordinate(f, 3, {2, 3})};
  CHECK(flag_profile(chain) == SubsetFlag(3, {IndexSet{3}, IndexSet{2, 3}}));
  const int n = 5;
  std::vector<Subspace> standard;
  for (int d = 1; d < n; ++d) standard.push_back(Subspace::coordinate(f, n, IndexSet::interval(d)));
  std::vector<IndexSet> expect;
  for (int d = 1; d < n; ++d) expect.push_back(IndexSet::interval(d));
  CHECK(flag_profile(standard) == SubsetFlag(n, expect));
}

TEST_CASE("profiles are invariant under upper-triangular changes of coordinates") {
  std::mt19937_64 rng(3);
  for (int q : {2, 3, 4}) {
    const FiniteField f = make_field(q);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 4;
      const auto b = random_basis(f, n, 3, rng);
      std::vector<std::vector<Vec>> members = {{b[0]}, {b[0], b[1]}, {b[0], b[1], b[2]}};
      const FlagFq flag = flag_normalize(f, n, members);
      const FqMatrix g = random_upper(f, n, rng);
      std::vector<Subspace> image;
      for (const auto& s : flag.chain()) {
        const Subspace gs = apply(f, g, s);
        CHECK(gs.profile() == s.profile());
        image.push_back(gs);
      }
      CHECK(flag_profile(image) == flag_profile(flag));
      CHECK(flag_profile(flag.chain()) == flag_profile(flag));
    }
  }
}

TEST_CASE("transitivity witness maps onto coordinate subspaces") {
  std::mt19937_64 rng(9);
  for (int q : {2, 3, 5}) {
    const FiniteField f = make_field(q);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 4;
      const auto b = random_basis(f, n, 3, rng);
      const Subspace s = normalize_basis(f, n, std::vector<Vec>(b.begin(), b.begin() + 2));
      const FqMatrix h = transitivity_witness(f, s);
      CHECK(h.upper_triangular_invertible());
      CHECK(apply(f, h, s) == Subspace::coordinate(f, n, s.profile()));
      for (const auto& v : s.basis()) CHECK(apply(f, h, v) == Vec::unit(n, height(v)));

      const FlagFq flag = flag_normalize(f, n, {{b[0]}, {b[0], b[1]}, {b[0], b[1], b[2]}});
      const FqMatrix hf = transitivity_witness(f, flag);
      for (const auto& m : flag.chain())
        CHECK(apply(f, hf, m) == Subspace::coordinate(f, n, m.profile()));
      CHECK(multiply(f, hf, inverse_upper(f, hf)).at(1, 1) == 1);
    }
  }
}

TEST_CASE("enumerate_subspaces matches the span-set oracle") {
  const FiniteField f2 = make_field(2);
  CHECK(enumerate_subspaces(f2, 3, 1).size() == 7);
  CHECK(enumerate_subspaces(make_field(5), 4, 0).size() == 1);
  CHECK(enumerate_subspaces(make_field(3), 4, 2).size() == 130);
  for (int q : {2, 3}) {
    const FiniteField f = make_field(q);
    for (int n = 1; n <= 4; ++n) {
      for (int d = 0; d <= n; ++d) {
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(d);
        const auto subs = enumerate_subspaces(f, n, d);
        const auto brute = oracle::all_subspaces(f, n, d);
        CHECK(subs.size() == brute.size());
        CHECK(subs.size() == qcount::gauss_binom(n, d, q).get_ui());
        std::set<oracle::SpanSet> spans;
        for (const auto& s : subs) {
          CHECK(is_canonical(s));
          spans.insert(oracle::span_of(f, n, s.basis()));
        }
        CHECK(spans.size() == brute.size());
        CHECK(std::is_sorted(subs.begin(), subs.end()));
      }
    }
  }
  try {
    enumerate_subspaces(make_field(3), 6, 3, 100);
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
}

TEST_CASE("membership") {
  const FiniteField f = make_field(3);
  const Subspace s = Subspace::coordinate(f, 3, {1, 2});
  CHECK(membership(f, Vec{1, 1, 0}, s));
  CHECK_FALSE(membership(f, Vec{0, 0, 1}, s));
  CHECK_THROWS_AS(membership(f, Vec{1, 0}, s), Error);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto b = random_basis(f, 4, 2, rng);
    const Subspace sub = normalize_basis(f, 4, b);
    CHECK(membership(f, rebase(f, b, rng)[0], sub));
  }
}
