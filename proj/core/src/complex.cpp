#include "walklab/complex.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "walklab/errors.hpp"
#include "walklab/qcount.hpp"

namespace walklab {

namespace {

void check_level(const Complex& c, int level) {
  require(level >= -1 && level <= c.max_level(), ErrorKind::domain,
          "level " + std::to_string(level) + " is not materialized");
}

// Number of level-L flags of F_q^n: sum over types of ffc(n) / w(type).
QInt building_level_count(int n, long long q, int level) {
  const QInt top = qcount::full_flag_count(n, q);
  QInt total = 0;
  const std::uint32_t full = (1u << (n - 1)) - 1u;
  for (std::uint32_t bits = 1; bits <= full; ++bits) {
    const IndexSet t = IndexSet::from_bits(bits);
    if (t.size() != level + 1) continue;
    QInt part;
    const QInt w = qcount::simplex_weight_formula(t.elements(), static_cast<int>(n), q);
    mpz_divexact(part.get_mpz_t(), top.get_mpz_t(), w.get_mpz_t());
    total += part;
  }
  return total;
}

// Depth-first walk over ascending up-neighbor chains. `emit(depth, chain)`
// returns false to stop descending.
template <typename Emit>
void walk_chains(const Complex& c, std::vector<VertexId>& chain, int max_depth, Emit&& emit) {
  const int depth = static_cast<int>(chain.size()) - 1;
  if (!emit(depth, chain) || depth == max_depth) return;
  for (VertexId w : c.up_neighbors(chain.back())) {
    chain.push_back(w);
    walk_chains(c, chain, max_depth, emit);
    chain.pop_back();
  }
}

}  // namespace

std::size_t Complex::level_size(int level) const {
  check_level(*this, level);
  if (level < 0) return 1;
  return levels_[static_cast<std::size_t>(level)].size() / static_cast<std::size_t>(level + 1);
}

SimplexView Complex::simplex(int level, std::size_t index) const {
  require(index < level_size(level), ErrorKind::domain, "simplex index out of range");
  if (level < 0) return {};
  const auto stride = static_cast<std::size_t>(level + 1);
  return SimplexView(levels_[static_cast<std::size_t>(level)]).subspan(index * stride, stride);
}

std::optional<std::size_t> Complex::find(int level, SimplexView vertices) const {
  if (level < -1 || level > max_level()) return std::nullopt;
  if (static_cast<int>(vertices.size()) != level + 1) return std::nullopt;
  if (level < 0) return 0;
  std::size_t lo = 0;
  std::size_t hi = level_size(level);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const SimplexView s = simplex(level, mid);
    if (std::lexicographical_compare(s.begin(), s.end(), vertices.begin(), vertices.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < level_size(level) && std::ranges::equal(simplex(level, lo), vertices)) return lo;
  return std::nullopt;
}

const QInt& Complex::weight(int level, std::size_t index) const {
  return level_weights(level).at(index);
}

const std::vector<QInt>& Complex::level_weights(int level) const {
  check_level(*this, level);
  if (level < 0) return empty_weight_;
  return weights_[static_cast<std::size_t>(level)];
}

Complex build_building(int n, int q, int max_level, const BuildOptions& options) {
  gfq::FiniteField f = gfq::make_field(q);
  require(n >= 3 && n <= 12, ErrorKind::domain, "building requires 3 <= n <= 12");
  require(max_level >= -1 && max_level <= n - 2, ErrorKind::domain,
          "max_level must lie in -1..n-2");

  QInt planned = 0;
  for (int d = 1; d <= n - 1; ++d) planned += qcount::gauss_binom(n, d, q);
  for (int level = 1; level <= max_level; ++level) planned += building_level_count(n, q, level);
  require(planned <= QInt(static_cast<unsigned long>(options.simplex_budget)),
          ErrorKind::resource,
          "building(" + std::to_string(n) + "," + std::to_string(q) + ") needs " +
              planned.get_str() + " simplices, over the budget");

  Complex c;
  c.kind_ = ComplexKind::building;
  c.n_ = n;
  c.q_ = q;
  c.dim_ = n - 2;
  for (int d = 1; d <= n - 1; ++d) {
    for (auto& s : gfq::enumerate_subspaces(f, n, d)) {
      c.colors_.push_back(d);
      c.profiles_.push_back(s.profile());
      c.subspaces_.push_back(std::move(s));
    }
  }
  const std::size_t nv = c.subspaces_.size();
  c.up_.assign(nv, {});
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t w = v + 1; w < nv; ++w) {
      if (c.colors_[w] > c.colors_[v] && gfq::contains(f, c.subspaces_[w], c.subspaces_[v]))
        c.up_[v].push_back(static_cast<VertexId>(w));
    }
  }
  c.field_ = std::move(f);

  c.levels_.assign(static_cast<std::size_t>(max_level + 1), {});
  if (max_level >= 0) {
    std::vector<VertexId> chain;
    for (std::size_t v = 0; v < nv; ++v) {
      chain.assign(1, static_cast<VertexId>(v));
      walk_chains(c, chain, max_level, [&](int depth, const std::vector<VertexId>& ch) {
        auto& level = c.levels_[static_cast<std::size_t>(depth)];
        level.insert(level.end(), ch.begin(), ch.end());
        return true;
      });
    }
  }

  c.top_count_ = qcount::full_flag_count(n, q);
  c.empty_weight_ = {c.top_count_};
  c.weights_.assign(c.levels_.size(), {});
  if (options.bruteforce_weights) {
    for (int level = 0; level <= max_level; ++level)
      c.weights_[static_cast<std::size_t>(level)] =
          weight_bruteforce_level(c, level, options.top_simplex_budget);
  } else {
    std::map<std::uint32_t, QInt> cache;
    for (int level = 0; level <= max_level; ++level) {
      auto& ws = c.weights_[static_cast<std::size_t>(level)];
      ws.reserve(c.level_size(level));
      for (std::size_t idx = 0; idx < c.level_size(level); ++idx) {
        const auto type = simplex_type(c, c.simplex(level, idx));
        const std::uint32_t key = IndexSet::from_elements(type).bits();
        auto it = cache.find(key);
        if (it == cache.end())
          it = cache.emplace(key, qcount::simplex_weight_formula(type, n, q)).first;
        ws.push_back(it->second);
      }
    }
  }
  return c;
}

Complex build_complete(int m) {
  require(m >= 0 && m <= 20, ErrorKind::domain, "complete complex requires 0 <= m <= 20");
  Complex c;
  c.kind_ = ComplexKind::complete;
  c.n_ = m + 1;
  c.q_ = 0;
  c.dim_ = m;
  const auto nv = static_cast<std::size_t>(m + 1);
  c.up_.assign(nv, {});
  for (std::size_t v = 0; v < nv; ++v) {
    c.colors_.push_back(static_cast<int>(v));
    for (std::size_t w = v + 1; w < nv; ++w) c.up_[v].push_back(static_cast<VertexId>(w));
  }
  c.levels_.assign(nv, {});
  std::vector<VertexId> chain;
  for (std::size_t v = 0; v < nv; ++v) {
    chain.assign(1, static_cast<VertexId>(v));
    walk_chains(c, chain, m, [&](int depth, const std::vector<VertexId>& ch) {
      auto& level = c.levels_[static_cast<std::size_t>(depth)];
      level.insert(level.end(), ch.begin(), ch.end());
      return true;
    });
  }
  c.weights_.resize(nv);
  for (int level = 0; level <= m; ++level)
    c.weights_[static_cast<std::size_t>(level)].assign(c.level_size(level), QInt(1));
  c.top_count_ = 1;
  c.empty_weight_ = {c.top_count_};
  return c;
}

QInt weight(const Complex& c, SimplexView s) {
  const int level = static_cast<int>(s.size()) - 1;
  const auto idx = c.find(level, s);
  require(idx.has_value(), ErrorKind::domain, "not a simplex of the complex");
  return c.weight(level, *idx);
}

void for_each_top_simplex(const Complex& c, std::size_t budget,
                          const std::function<void(SimplexView)>& visit) {
  require(c.top_count() <= QInt(static_cast<unsigned long>(budget)), ErrorKind::resource,
          "top simplex enumeration of " + c.top_count().get_str() + " exceeds the budget");
  const int top = c.dimension();
  std::vector<VertexId> chain;
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    chain.assign(1, static_cast<VertexId>(v));
    walk_chains(c, chain, top, [&](int depth, const std::vector<VertexId>& ch) {
      if (depth == top) visit(SimplexView(ch));
      return true;
    });
  }
}

QInt weight_bruteforce(const Complex& c, SimplexView s, std::size_t budget) {
  QInt count = 0;
  for_each_top_simplex(c, budget, [&](SimplexView t) {
    if (std::ranges::includes(t, s)) ++count;
  });
  return count;
}

std::vector<QInt> weight_bruteforce_level(const Complex& c, int level, std::size_t budget) {
  check_level(c, level);
  std::vector<QInt> out(c.level_size(level), QInt(0));
  if (level < 0) {
    for_each_top_simplex(c, budget, [&](SimplexView) { ++out[0]; });
    return out;
  }
  const auto k = static_cast<std::size_t>(level + 1);
  std::vector<VertexId> face(k);
  for_each_top_simplex(c, budget, [&](SimplexView t) {
    // Every (level+1)-subset of t, via a selection mask.
    std::vector<bool> pick(t.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::size_t m = 0;
      for (std::size_t j = 0; j < t.size(); ++j)
        if (pick[j]) face[m++] = t[j];
      const auto idx = c.find(level, face);
      require(idx.has_value(), ErrorKind::structure, "face of a top simplex is missing");
      ++out[*idx];
    } while (std::prev_permutation(pick.begin(), pick.end()));
  });
  return out;
}

std::vector<int> simplex_type(const Complex& c, SimplexView s) {
  std::vector<int> out;
  out.reserve(s.size());
  for (VertexId v : s) out.push_back(c.color(v));
  std::sort(out.begin(), out.end());
  return out;
}

void write_complex(std::ostream& out, const Complex& c) {
  if (c.kind() == ComplexKind::building)
    out << "building " << c.ambient() << ' ' << c.field_order() << '\n';
  else
    out << "complete " << c.dimension() << '\n';
  for (int level = 0; level <= c.max_level(); ++level) {
    for (std::size_t idx = 0; idx < c.level_size(level); ++idx) {
      out << level;
      for (VertexId v : c.simplex(level, idx)) out << ' ' << v;
      out << ' ' << c.weight(level, idx).get_str() << '\n';
    }
  }
}

}  // namespace walklab
