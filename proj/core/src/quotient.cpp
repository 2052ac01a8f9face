#include "walklab/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "walklab/chain.hpp"
#include "walklab/errors.hpp"
#include "walklab/qcount.hpp"
#include "json.hpp"

namespace walklab::quotient {

namespace {

using Row = RatMatrix::Row;

// Row of Σ_{z in b} a(x, z) over labels b, sorted by label.
Row label_sums(const RatMatrix& a, std::size_t x, const std::vector<std::size_t>& labeling) {
  std::map<std::uint32_t, Rational> acc;
  for (const auto& e : a.row(x)) acc[static_cast<std::uint32_t>(labeling[e.col])] += e.value;
  Row out;
  for (auto& [label, v] : acc)
    if (v != 0) out.push_back({label, std::move(v)});
  return out;
}

void check_labeling(std::size_t n, const std::vector<std::size_t>& labeling,
                    std::size_t label_count) {
  require(labeling.size() == n, ErrorKind::domain, "labeling length does not match the graph");
  for (std::size_t l : labeling)
    require(l < label_count, ErrorKind::domain, "label out of range");
}

}  // namespace

WeightedGraph graph_from_operator(const RatMatrix& op) {
  require(op.rows() == op.cols(), ErrorKind::domain, "operator is not square");
  return {op};
}

QuotientGraph quotient(const WeightedGraph& g, const std::vector<std::size_t>& labeling,
                       std::size_t label_count) {
  const std::size_t n = g.vertex_count();
  check_labeling(n, labeling, label_count);
  QuotientGraph out;
  out.labeling = labeling;
  out.orbit_sizes.assign(label_count, 0);
  std::vector<std::optional<Row>> rows(label_count);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = labeling[x];
    ++out.orbit_sizes[a];
    Row r = label_sums(g.adjacency, x, labeling);
    if (!rows[a]) {
      rows[a] = std::move(r);
    } else if (*rows[a] != r) {
      fail(ErrorKind::invalid_quotient,
           "labeling is not equitable: label " + std::to_string(a) +
               " has representatives with different neighbor sums");
    }
  }
  out.graph.adjacency = RatMatrix(label_count, label_count);
  for (std::size_t a = 0; a < label_count; ++a) {
    require(out.orbit_sizes[a] > 0, ErrorKind::domain, "label " + std::to_string(a) + " is unused");
    out.graph.adjacency.set_row(a, std::move(*rows[a]));
  }
  return out;
}

std::vector<SubsetFlag> subset_flags(int n, int i) {
  require(n >= 2 && i >= -1 && i <= n - 2, ErrorKind::domain, "flag level out of range");
  return all_subset_flags(n, i + 1);
}

std::optional<std::size_t> flag_index(const std::vector<SubsetFlag>& sorted, const SubsetFlag& f) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), f, SubsetFlagLess{});
  if (it == sorted.end() || !(*it == f)) return std::nullopt;
  return static_cast<std::size_t>(it - sorted.begin());
}

SubsetFlag simplex_profile(const Complex& c, SimplexView s) {
  require(c.kind() == ComplexKind::building, ErrorKind::domain,
          "height profiles need a building");
  std::vector<IndexSet> members;
  members.reserve(s.size());
  for (VertexId v : s) members.push_back(c.vertex_profile(v));
  return SubsetFlag(c.ambient(), std::move(members));
}

std::vector<std::size_t> height_profile_labeling(const Complex& c, int i,
                                                 const std::vector<SubsetFlag>& flags) {
  std::vector<std::size_t> out(c.level_size(i));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto idx = flag_index(flags, simplex_profile(c, c.simplex(i, k)));
    require(idx.has_value(), ErrorKind::structure, "simplex profile is not a listed flag");
    out[k] = *idx;
  }
  return out;
}

BuildingQuotient building_quotient(const Complex& c, int i, const RatMatrix& delta) {
  BuildingQuotient bq;
  bq.n = c.ambient();
  bq.q = c.field_order();
  bq.level = i;
  bq.flags = subset_flags(c.ambient(), i);
  const auto labels = height_profile_labeling(c, i, bq.flags);
  bq.quotient = quotient(graph_from_operator(delta), labels, bq.flags.size());
  return bq;
}

BuildingQuotient building_quotient(int n, int q, int i, const BuildOptions& options) {
  require(n >= 3 && i >= 0 && i <= n - 3, ErrorKind::domain, "walk level out of range");
  const Complex c = build_building(n, q, i + 1, options);
  return building_quotient(c, i, chain::updown(c, i));
}

Rational closed_form_entry(const SubsetFlag& v, int k, int l, long long q) {
  const int top = v.length() - 1;
  require(top >= 1, ErrorKind::domain, "closed-form entries need a flag with two members");
  require(k >= 0 && k <= top && l >= 0 && l <= top, ErrorKind::domain,
          "closed-form entry index out of range");
  const int i = v.length() - 2;
  if (k == l) return v.ambient() - 2 - i;
  const IndexSet lo = v.extended(k - 1);
  const IndexSet mid = v.extended(k);
  const IndexSet hi = v.extended(k + 1);
  const QInt num = qcount::sandwich_count(lo, mid, hi, q);
  const QInt den = qcount::gauss_binom(hi.minus(lo).size(), mid.minus(lo).size(), q);
  Rational out = make_rational(num, den);
  if ((k + l) % 2) out = -out;
  return out;
}

RatMatrix closed_form_quotient(int n, long long q, int i) {
  require(n >= 3 && i >= 0 && i <= n - 3, ErrorKind::domain, "walk level out of range");
  const auto flags = subset_flags(n, i);
  RatMatrix out(flags.size(), flags.size());
  std::vector<Row> rows(flags.size());
  for (std::size_t r = 0; r < flags.size(); ++r)
    rows[r].push_back({static_cast<std::uint32_t>(r), Rational(n - 2 - i)});
  for (const auto& v : all_subset_flags(n, i + 2)) {
    for (int k = 0; k < v.length(); ++k) {
      const std::size_t r = *flag_index(flags, v.without(k));
      for (int l = 0; l < v.length(); ++l) {
        if (l == k) continue;
        const std::size_t col = *flag_index(flags, v.without(l));
        rows[r].push_back({static_cast<std::uint32_t>(col), closed_form_entry(v, k, l, q)});
      }
    }
  }
  for (std::size_t r = 0; r < flags.size(); ++r) {
    std::sort(rows[r].begin(), rows[r].end(),
              [](const auto& a, const auto& b) { return a.col < b.col; });
    out.set_row(r, std::move(rows[r]));
  }
  return out;
}

Symmetrized symmetrize(const RatMatrix& a) {
  require(a.rows() == a.cols(), ErrorKind::domain, "matrix is not square");
  const std::size_t n = a.rows();
  Symmetrized out{spectra::DenseMatrix(n, n), RatMatrix(n, n)};
  for (std::size_t r = 0; r < n; ++r) {
    Row prods;
    for (const auto& e : a.row(r)) {
      const Rational back = a.at(e.col, r);
      require(back != 0, ErrorKind::structure,
              "support is not symmetric at (" + std::to_string(r) + "," + std::to_string(e.col) + ")");
      require(sgn(back) == sgn(e.value), ErrorKind::structure,
              "sign pattern is not symmetric at (" + std::to_string(r) + "," +
                  std::to_string(e.col) + ")");
      Rational p = e.value * back;
      if (sgn(e.value) < 0) p = -p;
      out.matrix(r, e.col) = (sgn(e.value) < 0 ? -1.0 : 1.0) * std::sqrt(std::abs(p.get_d()));
      prods.push_back({e.col, std::move(p)});
    }
    out.products.set_row(r, std::move(prods));
  }
  return out;
}

bool spectral_containment_check(const WeightedGraph& g, const std::vector<std::size_t>& labeling,
                                std::size_t label_count, double tol) {
  const QuotientGraph qg = quotient(g, labeling, label_count);
  const auto big = spectra::general_eigenvalues(spectra::DenseMatrix::from(g.adjacency));
  const auto small = spectra::general_eigenvalues(spectra::DenseMatrix::from(qg.graph.adjacency));
  for (const auto& lam : small) {
    double best = INFINITY;
    for (const auto& mu : big) best = std::min(best, std::abs(lam - mu));
    if (best > tol) return false;
  }
  return true;
}

bool pullback_identity(const RatMatrix& a, const std::vector<std::size_t>& labeling,
                       const RatMatrix& quotient_matrix) {
  if (a.rows() != a.cols() || labeling.size() != a.rows()) return false;
  for (std::size_t x = 0; x < a.rows(); ++x) {
    if (labeling[x] >= quotient_matrix.rows()) return false;
    if (label_sums(a, x, labeling) != quotient_matrix.row(labeling[x])) return false;
  }
  return true;
}

std::string quotient_json(const BuildingQuotient& bq, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["n"] = bq.n;
  j["q"] = bq.q;
  j["level"] = bq.level;
  ordered_json vertices = ordered_json::array();
  for (const auto& f : bq.flags) {
    ordered_json members = ordered_json::array();
    for (const auto& m : f.members()) members.push_back(m.elements());
    vertices.push_back(members);
  }
  j["vertices"] = vertices;
  const RatMatrix& m = bq.quotient.graph.adjacency;
  ordered_json triplets = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r)) triplets.push_back({r, e.col, to_string(e.value)});
  j["matrix"] = triplets;
  j["orbit_sizes"] = bq.quotient.orbit_sizes;
  j["equitable"] = true;
  return j.dump(indent);
}

}  // namespace walklab::quotient
