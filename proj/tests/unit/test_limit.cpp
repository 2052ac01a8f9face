#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "walklab/errors.hpp"
#include "walklab/limit.hpp"
#include "walklab/qcount.hpp"
#include "walklab/quotient.hpp"
#include "walklab/spectra.hpp"
#include "json.hpp"

using namespace walklab;
using namespace walklab::limit;

namespace {

SubsetFlag flag(int n, std::vector<IndexSet> members) { return SubsetFlag(n, std::move(members)); }

long long binom(int n, int k) {
  long long out = 1;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

}  // namespace

TEST_CASE("domination and characteristic flags") {
  const SubsetFlag a = flag(3, {IndexSet{3}, IndexSet{2, 3}});
  CHECK(domination(a, 0));
  CHECK(domination(a, 1));
  CHECK(characteristic_flag(a).length() == 0);
  const SubsetFlag b = flag(3, {IndexSet{1}, IndexSet{1, 2}});
  CHECK_FALSE(domination(b, 0));
  CHECK_FALSE(domination(b, 1));
  CHECK(characteristic_flag(b) == b);
  const SubsetFlag c = flag(4, {IndexSet{4}, IndexSet{1, 4}});
  CHECK(domination(c, 0));
  CHECK_FALSE(domination(c, 1));
  CHECK(characteristic_flag(c) == flag(4, {IndexSet{1, 4}}));
  CHECK_THROWS_AS(domination(c, 2), Error);
}

TEST_CASE("D is the large-q limit of the symmetrized quotient") {
  const std::vector<long long> qs = {2, 3, 4, 5, 7, 8, 9, 16, 64, 1024, 1'000'000'007};
  for (int n = 3; n <= 6; ++n) {
    for (int i = 0; i <= n - 3; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const LimitMatrix d = limit_matrix(n, i);
      CHECK(d.flags.size() == qcount::quotient_size(n, i));
      CHECK(d.flags == quotient::subset_flags(n, i));
      for (std::size_t r = 0; r < d.flags.size(); ++r) {
        CHECK(d.matrix.at(r, r) == n - 2 - i);
        for (const auto& e : d.matrix.row(r)) {
          CHECK((e.value == 1 || e.value == -1 || e.col == r));
          CHECK(d.matrix.at(e.col, r) == e.value);
        }
      }
      double prev = INFINITY;
      for (long long q : qs) {
        const auto s = quotient::symmetrize(quotient::closed_form_quotient(n, q, i)).matrix;
        double gap = 0.0;
        for (std::size_t r = 0; r < s.rows(); ++r)
          for (std::size_t c = 0; c < s.cols(); ++c)
            gap = std::max(gap, std::abs(s(r, c) - d.matrix.at(r, c).get_d()));
        CAPTURE(q);
        CHECK(gap <= 1.0 / std::sqrt(static_cast<double>(q)));
        CHECK(gap < prev);
        prev = gap;
      }
    }
  }
}

TEST_CASE("raw quotient entries need not converge to D") {
  // ({1}) -> ({1,3}) tends to -1 while the reverse entry tends to 0.
  const auto flags = quotient::subset_flags(3, 0);
  const auto a = *quotient::flag_index(flags, SubsetFlag(3, {IndexSet{1}}));
  const auto b = *quotient::flag_index(flags, SubsetFlag(3, {IndexSet{1, 3}}));
  const RatMatrix qm = quotient::closed_form_quotient(3, 1'000'003, 0);
  CHECK(qm.at(a, b).get_d() == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(std::abs(qm.at(b, a).get_d()) < 1e-5);
  CHECK(limit_matrix(3, 0).matrix.at(a, b) == 0);
}

TEST_CASE("walks on complete complexes") {
  for (int m = 0; m <= 6; ++m) {
    for (int j = -1; j <= m - 1; ++j) {
      CAPTURE(m);
      CAPTURE(j);
      const auto rep = complete_walk_spectrum(m, j);
      const long long size = binom(m + 1, j + 1);
      const long long rank = binom(m, j + 1);
      REQUIRE(rep.eigenvalues.size() == static_cast<std::size_t>(size));
      if (rank == size) {
        REQUIRE(rep.values.size() == 1);
      } else {
        REQUIRE(rep.values.size() == 2);
        CHECK(std::abs(rep.values[0]) < 1e-9);
        CHECK(rep.multiplicities[0] == static_cast<std::size_t>(size - rank));
      }
      CHECK(rep.values.back() == doctest::Approx(m + 1));
      CHECK(rep.multiplicities.back() == static_cast<std::size_t>(rank));
    }
  }
  CHECK_THROWS_AS(complete_walk_spectrum(3, 3), Error);
  CHECK_THROWS_AS(complete_walk_spectrum(3, -2), Error);
}

TEST_CASE("block structure") {
  for (int n = 3; n <= 7; ++n) {
    for (int i = 0; i <= n - 3; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const LimitMatrix d = limit_matrix(n, i);
      const BlockDecomposition b = blocks(d);
      CHECK(b.groups_match_components);
      std::size_t covered = 0;
      for (const auto& block : b.blocks) {
        covered += block.members.size();
        CHECK(block.char_flag.length() <= i + 1);
        for (auto r : block.members) CHECK(characteristic_flag(d.flags[r]) == block.char_flag);
        // Support never leaves a block.
        for (auto r : block.members)
          for (const auto& e : d.matrix.row(r))
            CHECK(characteristic_flag(d.flags[e.col]) == block.char_flag);
        if (n <= 6) CHECK(block_walk_equiv(d, block));
      }
      CHECK(covered == d.flags.size());
    }
  }
}

TEST_CASE("limit spectrum is the predicted set") {
  for (int n = 3; n <= 6; ++n) {
    for (int i = 0; i <= n - 3; ++i) {
      CAPTURE(n);
      CAPTURE(i);
      const auto rep = spectra::sym_eig(spectra::DenseMatrix::from(limit_matrix(n, i).matrix));
      const auto expect = predicted_spectrum(n, i);
      CHECK(spectra::set_distance(rep.values, expect) < 1e-8);
      CHECK(rep.values.size() == expect.size());
    }
  }
  CHECK(predicted_spectrum(3, 0) == std::vector<double>{0, 1, 2});
  CHECK(predicted_spectrum(5, 1) == std::vector<double>{0, 2, 3, 4});
}

TEST_CASE("statement variants") {
  const auto s = limit_statements(5, 1);
  REQUIRE(s.size() == 3);
  CHECK(s[0].name == "corollary");
  CHECK(s[0].values == predicted_spectrum(5, 1));
  CHECK(s[1].values == std::vector<double>{0, 4});
  CHECK(s[2].values == std::vector<double>{0, 5, 6});
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(limit_matrix(3, 1), Error);
  CHECK_THROWS_AS(limit_matrix(2, 0), Error);
  CHECK_THROWS_AS(enumerate_flags(4, -1), Error);
  CHECK(enumerate_flags(4, 1).size() == 36);
}

TEST_CASE("block report JSON") {
  const LimitMatrix d = limit_matrix(4, 1);
  const auto j = nlohmann::json::parse(block_report_json(d, blocks(d)));
  CHECK(j["n"] == 4);
  CHECK(j["groups_match_components"] == true);
  std::size_t total = 0;
  for (const auto& b : j["blocks"]) {
    total += b["size"].get<std::size_t>();
    CHECK(b["matches_reference"] == true);
  }
  CHECK(total == 36);
}

TEST_CASE("small block examples") {
  const LimitMatrix d = limit_matrix(3, 0);
  const auto b = blocks(d);
  REQUIRE(b.blocks.size() == 5);
  CHECK(b.blocks.front().char_flag.length() == 0);
  REQUIRE(b.blocks.front().members.size() == 2);
  CHECK(d.flags[b.blocks.front().members[0]] == flag(3, {IndexSet{3}}));
  CHECK(d.flags[b.blocks.front().members[1]] == flag(3, {IndexSet{2, 3}}));
  CHECK(d.matrix.at(b.blocks.front().members[0], b.blocks.front().members[1]) == -1);
  for (std::size_t k = 1; k < b.blocks.size(); ++k) CHECK(b.blocks[k].members.size() == 1);
  // Members {1,3,6} ⊂ {1,3,4,6,9} inside [10]: 6 does not exceed 9.
  const SubsetFlag v = flag(10, {IndexSet{1, 3, 6}, IndexSet{1, 3, 4, 6, 9}});
  CHECK_FALSE(domination(v, 0));
  // Singleton blocks are exactly the ones with a full characteristic flag.
  for (int n = 3; n <= 6; ++n)
    for (int i = 0; i <= std::min(2, n - 3); ++i)
      for (const auto& block : blocks(n, i).blocks)
        CHECK((block.members.size() == 1) == (block.char_flag.length() == i + 1));
}
