#include "walklab/limit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "walklab/chain.hpp"
#include "walklab/complex.hpp"
#include "walklab/errors.hpp"
#include "walklab/quotient.hpp"
#include "json.hpp"

namespace walklab::limit {

namespace {

void check_range(int n, int i) {
  require(n >= 3 && n <= IndexSet::kMaxElement, ErrorKind::domain, "n must be at least 3");
  require(i >= 0 && i <= n - 3, ErrorKind::domain,
          "level " + std::to_string(i) + " out of range 0..n-3");
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Characteristic-flag length of a block (the block's k).
int block_k(const Block& b) { return b.char_flag.length(); }

}  // namespace

std::vector<SubsetFlag> enumerate_flags(int n, int i) {
  check_range(n, i);
  return quotient::subset_flags(n, i);
}

bool domination(const SubsetFlag& v, int k) {
  require(k >= 0 && k < v.length(), ErrorKind::domain, "domination index out of range");
  const IndexSet here = v.extended(k).minus(v.extended(k - 1));
  const IndexSet next = v.extended(k + 1).minus(v.extended(k));
  if (here.empty() || next.empty()) return true;
  return here.min() > next.max();
}

LimitMatrix limit_matrix(int n, int i) {
  LimitMatrix d;
  d.n = n;
  d.level = i;
  d.flags = enumerate_flags(n, i);
  std::vector<RatMatrix::Row> rows(d.flags.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    rows[r].push_back({static_cast<std::uint32_t>(r), Rational(n - 2 - i)});
  for (const auto& v : all_subset_flags(n, i + 2)) {
    std::vector<int> dominated;
    for (int k = 0; k < v.length(); ++k)
      if (domination(v, k)) dominated.push_back(k);
    for (int k : dominated) {
      const std::size_t r = *quotient::flag_index(d.flags, v.without(k));
      for (int l : dominated) {
        if (l == k) continue;
        const std::size_t c = *quotient::flag_index(d.flags, v.without(l));
        rows[r].push_back({static_cast<std::uint32_t>(c), Rational((k + l) % 2 ? -1 : 1)});
      }
    }
  }
  d.matrix = RatMatrix(d.flags.size(), d.flags.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::sort(rows[r].begin(), rows[r].end(),
              [](const auto& a, const auto& b) { return a.col < b.col; });
    d.matrix.set_row(r, std::move(rows[r]));
  }
  return d;
}

SubsetFlag characteristic_flag(const SubsetFlag& v) {
  std::vector<IndexSet> members;
  for (int k = 0; k < v.length(); ++k)
    if (!domination(v, k)) members.push_back(v[k]);
  return SubsetFlag(v.ambient(), std::move(members));
}

BlockDecomposition blocks(const LimitMatrix& d) {
  BlockDecomposition out;
  std::map<SubsetFlag, std::vector<std::size_t>, SubsetFlagLess> groups;
  for (std::size_t r = 0; r < d.flags.size(); ++r)
    groups[characteristic_flag(d.flags[r])].push_back(r);
  for (auto& [flag, members] : groups) out.blocks.push_back({flag, std::move(members)});

  UnionFind uf(d.flags.size());
  for (std::size_t r = 0; r < d.matrix.rows(); ++r)
    for (const auto& e : d.matrix.row(r))
      if (e.col != r) uf.unite(r, e.col);
  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t r = 0; r < d.flags.size(); ++r) comps[uf.find(r)].push_back(r);
  for (auto& [root, members] : comps) out.components.push_back(std::move(members));
  std::sort(out.components.begin(), out.components.end());

  std::vector<std::vector<std::size_t>> grouped;
  for (const auto& b : out.blocks) grouped.push_back(b.members);
  std::sort(grouped.begin(), grouped.end());
  out.groups_match_components = grouped == out.components;
  return out;
}

BlockDecomposition blocks(int n, int i) { return blocks(limit_matrix(n, i)); }

spectra::SpectrumReport complete_walk_spectrum(int m, int j) {
  require(m >= 0, ErrorKind::domain, "complete complex dimension must be nonnegative");
  require(j >= -1 && j <= m - 1, ErrorKind::domain, "walk level out of range -1..m-1");
  const Complex z = build_complete(m);
  return spectra::sym_eig(spectra::DenseMatrix::from(chain::updown(z, j)));
}

spectra::DenseMatrix block_matrix(const LimitMatrix& d, const Block& block) {
  const std::size_t s = block.members.size();
  spectra::DenseMatrix out(s, s);
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b)
      out(a, b) = d.matrix.at(block.members[a], block.members[b]).get_d();
  return out;
}

bool block_walk_equiv(const LimitMatrix& d, const Block& block, double tol) {
  const int k = block_k(block);
  const auto mine = spectra::sym_eig(block_matrix(d, block)).eigenvalues;
  const auto ref = complete_walk_spectrum(d.n - 2 - k, d.level - k).eigenvalues;
  if (mine.size() != ref.size()) return false;
  for (std::size_t t = 0; t < mine.size(); ++t)
    if (std::abs(mine[t] - ref[t]) > tol) return false;
  return true;
}

std::vector<double> predicted_spectrum(int n, int i) {
  check_range(n, i);
  std::vector<double> out = {0.0};
  for (int j = i + 1; j >= 0; --j) out.push_back(n - 1 - j);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LimitStatement> limit_statements(int n, int i) {
  check_range(n, i);
  auto range = [](int lo, int hi) {
    std::vector<double> out = {0.0};
    for (int x = lo; x <= hi; ++x) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return {{"corollary", range(n - i - 2, n - 1)},
          {"abstract", range(n - i, n - 1)},
          {"intro", range(n + 1 - i, n + 1)}};
}

std::string block_report_json(const LimitMatrix& d, const BlockDecomposition& b, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = d.n;
  j["level"] = d.level;
  ordered_json arr = ordered_json::array();
  for (const auto& block : b.blocks) {
    ordered_json e;
    ordered_json members = ordered_json::array();
    for (const auto& m : block.char_flag.members()) members.push_back(m.elements());
    e["char_flag"] = members;
    e["size"] = block.members.size();
    const auto rep = spectra::sym_eig(block_matrix(d, block));
    e["spectrum"] = rep.values;
    e["multiplicities"] = rep.multiplicities;
    e["reference"] = {{"m", d.n - 2 - block_k(block)}, {"j", d.level - block_k(block)}};
    e["matches_reference"] = block_walk_equiv(d, block);
    arr.push_back(e);
  }
  j["blocks"] = arr;
  j["groups_match_components"] = b.groups_match_components;
  j["predicted_spectrum"] = predicted_spectrum(d.n, d.level);
  return j.dump(indent);
}

}  // namespace walklab::limit
