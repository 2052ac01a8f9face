#include "walklab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "walklab/errors.hpp"

namespace walklab::chain {

namespace {

void check_pair(const Complex& c, int i) {
  require(i >= -1 && i + 1 <= c.max_level(), ErrorKind::domain,
          "levels " + std::to_string(i) + " and " + std::to_string(i + 1) +
              " are not both materialized");
}

RatVector as_rationals(const std::vector<QInt>& w) {
  RatVector out;
  out.reserve(w.size());
  for (const auto& x : w) out.emplace_back(x);
  return out;
}

RatVector inverses(const std::vector<QInt>& w) {
  RatVector out;
  out.reserve(w.size());
  for (const auto& x : w) out.push_back(make_rational(1, x));
  return out;
}

}  // namespace

LevelBasis level_basis(const Complex& c, int level) {
  require(level >= -1 && level <= c.max_level(), ErrorKind::domain, "level is not materialized");
  return {&c, level, c.level_size(level), c.level_weights(level)};
}

RatMatrix coboundary(const Complex& c, int i, const VertexRank* rank) {
  check_pair(c, i);
  if (rank) require(rank->size() == c.vertex_count(), ErrorKind::domain, "rank length mismatch");
  const std::size_t nrows = c.level_size(i + 1);
  RatMatrix d(nrows, c.level_size(i));
  std::vector<VertexId> face;
  for (std::size_t r = 0; r < nrows; ++r) {
    const SimplexView t = c.simplex(i + 1, r);
    RatMatrix::Row row;
    for (std::size_t k = 0; k < t.size(); ++k) {
      face.assign(t.begin(), t.end());
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
      const auto col = c.find(i, face);
      require(col.has_value(), ErrorKind::structure, "face of a simplex is missing");
      std::size_t pos = k;
      if (rank) {
        pos = 0;
        for (VertexId u : t)
          if ((*rank)[u] < (*rank)[t[k]]) ++pos;
      }
      row.push_back({static_cast<std::uint32_t>(*col), Rational(pos % 2 ? -1 : 1)});
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
    d.set_row(r, std::move(row));
  }
  return d;
}

RatMatrix boundary(const Complex& c, int i, const VertexRank* rank) {
  const RatMatrix dt = transpose(coboundary(c, i, rank));
  return scale_rows(inverses(c.level_weights(i)),
                    scale_cols(dt, as_rationals(c.level_weights(i + 1))));
}

RatMatrix updown(const Complex& c, int i, const VertexRank* rank) {
  return multiply(boundary(c, i, rank), coboundary(c, i, rank));
}

Rational inner_product(const RatVector& f, const RatVector& g, const LevelBasis& basis) {
  require(f.size() == basis.size && g.size() == basis.size, ErrorKind::domain,
          "cochain length does not match the level");
  Rational s = 0;
  for (std::size_t k = 0; k < f.size(); ++k) s += basis.weights[k] * f[k] * g[k];
  return s;
}

spectra::DenseMatrix symmetrized_updown(const Complex& c, int i, const RatMatrix& delta) {
  const auto& w = c.level_weights(i);
  require(delta.rows() == w.size() && delta.cols() == w.size(), ErrorKind::domain,
          "operator does not match the level");
  const std::size_t n = w.size();
  spectra::DenseMatrix s(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& e : delta.row(r))
      s(r, e.col) = e.value.get_d() * std::sqrt(make_rational(w[r], w[e.col]).get_d());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = r + 1; k < n; ++k) {
      const double avg = 0.5 * (s(r, k) + s(k, r));
      s(r, k) = avg;
      s(k, r) = avg;
    }
  return s;
}

bool enumeration_invariance(const Complex& c, int i, int trials, std::uint64_t seed,
                            Reenumeration mode, double tol) {
  auto spectrum = [&](const VertexRank* rank) {
    return spectra::sym_eig(symmetrized_updown(c, i, updown(c, i, rank))).eigenvalues;
  };
  const auto base = spectrum(nullptr);
  std::mt19937_64 rng(seed);
  const std::size_t nv = c.vertex_count();
  for (int t = 0; t < trials; ++t) {
    std::vector<VertexId> order(nv);
    std::iota(order.begin(), order.end(), VertexId{0});
    if (mode == Reenumeration::arbitrary) {
      std::shuffle(order.begin(), order.end(), rng);
    } else {
      // Vertices are stored color by color; shuffle inside each run.
      std::size_t lo = 0;
      while (lo < nv) {
        std::size_t hi = lo;
        while (hi < nv && c.color(order[hi]) == c.color(order[lo])) ++hi;
        std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(lo),
                     order.begin() + static_cast<std::ptrdiff_t>(hi), rng);
        lo = hi;
      }
    }
    VertexRank rank(nv);
    for (std::size_t k = 0; k < nv; ++k) rank[order[k]] = static_cast<std::uint32_t>(k);
    const auto other = spectrum(&rank);
    for (std::size_t k = 0; k < base.size(); ++k)
      if (std::abs(base[k] - other[k]) > tol) return false;
  }
  return true;
}

}  // namespace walklab::chain
