#include "walklab/gfq.hpp"

#include <algorithm>
#include <sstream>

#include "walklab/errors.hpp"

namespace walklab::gfq {

namespace {

struct Construction {
  int q;
  int p;
  int k;
  std::vector<int> modulus;  // low-to-high, monic, degree k
};

const std::vector<Construction>& constructions() {
  static const std::vector<Construction> table = {
      {2, 2, 1, {0, 1}},        {3, 3, 1, {0, 1}},
      {4, 2, 2, {1, 1, 1}},     // x^2 + x + 1
      {5, 5, 1, {0, 1}},        {7, 7, 1, {0, 1}},
      {8, 2, 3, {1, 1, 0, 1}},  // x^3 + x + 1
      {9, 3, 2, {1, 0, 1}},     // x^2 + 1
      {11, 11, 1, {0, 1}},      {13, 13, 1, {0, 1}},
      {16, 2, 4, {1, 1, 0, 0, 1}},  // x^4 + x + 1
  };
  return table;
}

std::vector<int> digits(int a, int p, int k) {
  std::vector<int> d(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    d[static_cast<std::size_t>(i)] = a % p;
    a /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
  return a;
}

int poly_mul_mod(int a, int b, const Construction& c) {
  const auto da = digits(a, c.p, c.k);
  const auto db = digits(b, c.p, c.k);
  std::vector<int> prod(static_cast<std::size_t>(2 * c.k - 1), 0);
  for (int i = 0; i < c.k; ++i)
    for (int j = 0; j < c.k; ++j)
      prod[static_cast<std::size_t>(i + j)] =
          (prod[static_cast<std::size_t>(i + j)] +
           da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) %
          c.p;
  // Reduce with the monic modulus: x^k = -(m_0 + ... + m_{k-1} x^{k-1}).
  for (int deg = 2 * c.k - 2; deg >= c.k; --deg) {
    const int coef = prod[static_cast<std::size_t>(deg)];
    if (coef == 0) continue;
    prod[static_cast<std::size_t>(deg)] = 0;
    for (int i = 0; i < c.k; ++i) {
      auto& slot = prod[static_cast<std::size_t>(deg - c.k + i)];
      slot = ((slot - coef * c.modulus[static_cast<std::size_t>(i)]) % c.p + c.p) % c.p;
    }
  }
  prod.resize(static_cast<std::size_t>(c.k));
  return undigits(prod, c.p);
}

void verify_axioms(const FiniteField& f) {
  const int q = f.order();
  for (int a = 0; a < q; ++a) {
    const auto ea = static_cast<Elem>(a);
    require(f.add(ea, 0) == ea && f.mul(ea, 1) == ea, ErrorKind::config,
            "field identities fail");
    require(f.add(ea, f.neg(ea)) == 0, ErrorKind::config, "additive inverse fails");
    if (a != 0) require(f.mul(ea, f.inv(ea)) == 1, ErrorKind::config, "inverse fails");
    for (int b = 0; b < q; ++b) {
      const auto eb = static_cast<Elem>(b);
      require(f.add(ea, eb) == f.add(eb, ea) && f.mul(ea, eb) == f.mul(eb, ea),
              ErrorKind::config, "commutativity fails");
      for (int c = 0; c < q; ++c) {
        const auto ec = static_cast<Elem>(c);
        require(f.add(f.add(ea, eb), ec) == f.add(ea, f.add(eb, ec)) &&
                    f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)) &&
                    f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec)),
                ErrorKind::config, "associativity or distributivity fails");
      }
    }
  }
}

}  // namespace

bool is_prime_power(long long q, int* p, int* k) {
  if (q < 2) return false;
  long long base = 0;
  for (long long d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      base = d;
      break;
    }
  }
  if (base == 0) base = q;
  int exp = 0;
  long long r = q;
  while (r % base == 0) {
    r /= base;
    ++exp;
  }
  if (r != 1) return false;
  if (p) *p = static_cast<int>(base);
  if (k) *k = exp;
  return true;
}

std::vector<int> supported_orders() {
  std::vector<int> out;
  for (const auto& c : constructions()) out.push_back(c.q);
  return out;
}

FiniteField make_field(int q) {
  int p = 0;
  int k = 0;
  require(is_prime_power(q, &p, &k), ErrorKind::config,
          "q = " + std::to_string(q) + " is not a prime power");
  const auto& table = constructions();
  const auto it = std::find_if(table.begin(), table.end(),
                               [q](const Construction& c) { return c.q == q; });
  require(it != table.end(), ErrorKind::config,
          "F_" + std::to_string(q) + " (p = " + std::to_string(p) + ", degree " +
              std::to_string(k) + ") has no built-in construction");

  FiniteField f;
  f.q_ = q;
  f.p_ = p;
  f.k_ = k;
  f.modulus_ = it->modulus;
  const auto qs = static_cast<std::size_t>(q);
  f.add_.assign(qs * qs, 0);
  f.mul_.assign(qs * qs, 0);
  f.neg_.assign(qs, 0);
  f.inv_.assign(qs, 0);
  for (int a = 0; a < q; ++a) {
    const auto da = digits(a, p, k);
    std::vector<int> dn(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) dn[i] = (p - da[i]) % p;
    f.neg_[static_cast<std::size_t>(a)] = static_cast<Elem>(undigits(dn, p));
    for (int b = 0; b < q; ++b) {
      const auto db = digits(b, p, k);
      std::vector<int> ds(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) ds[i] = (da[i] + db[i]) % p;
      const auto at = static_cast<std::size_t>(a) * qs + static_cast<std::size_t>(b);
      f.add_[at] = static_cast<Elem>(undigits(ds, p));
      f.mul_[at] = static_cast<Elem>(k == 1 ? (a * b) % p : poly_mul_mod(a, b, *it));
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (f.mul_[static_cast<std::size_t>(a) * qs + static_cast<std::size_t>(b)] == 1) {
        f.inv_[static_cast<std::size_t>(a)] = static_cast<Elem>(b);
        break;
      }
    }
    require(f.inv_[static_cast<std::size_t>(a)] != 0, ErrorKind::config,
            "modulus for F_" + std::to_string(q) + " is reducible");
  }
  verify_axioms(f);
  return f;
}

Elem FiniteField::inv(Elem a) const {
  require(a != 0, ErrorKind::domain, "inverse of zero");
  return inv_[a];
}

Vec::Vec(std::initializer_list<int> coords) {
  coords_.reserve(coords.size());
  for (int c : coords) coords_.push_back(static_cast<Elem>(c));
}

Vec Vec::unit(int n, int j) {
  Vec v(n);
  v.set(j, 1);
  return v;
}

bool Vec::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Elem e) { return e == 0; });
}

int height(const Vec& v) {
  for (int j = v.dim(); j >= 1; --j)
    if (v[j] != 0) return j;
  fail(ErrorKind::domain, "height of the zero vector");
}

Vec scaled(const FiniteField& f, const Vec& v, Elem c) {
  Vec out(v.dim());
  for (int j = 1; j <= v.dim(); ++j) out.set(j, f.mul(c, v[j]));
  return out;
}

Vec axpy_sub(const FiniteField& f, const Vec& v, Elem c, const Vec& w) {
  Vec out(v.dim());
  for (int j = 1; j <= v.dim(); ++j) out.set(j, f.sub(v[j], f.mul(c, w[j])));
  return out;
}

namespace {

int height_or_zero(const Vec& v) {
  for (int j = v.dim(); j >= 1; --j)
    if (v[j] != 0) return j;
  return 0;
}

/// Zeroes v at the height of every basis vector, highest first. Basis
/// vectors must have distinct heights and coefficient 1 there.
Vec reduce(const FiniteField& f, Vec v, std::span<const Vec> basis) {
  std::vector<std::pair<int, const Vec*>> by_height;
  by_height.reserve(basis.size());
  for (const auto& b : basis) by_height.emplace_back(height(b), &b);
  std::sort(by_height.begin(), by_height.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [h, b] : by_height) {
    const Elem c = v[h];
    if (c != 0) v = axpy_sub(f, v, c, *b);
  }
  return v;
}

}  // namespace

Subspace::Subspace(int q, int n, std::vector<Vec> basis)
    : q_(q), n_(n), basis_(std::move(basis)) {
  for (const auto& b : basis_) profile_ = profile_.with(height(b));
}

Subspace Subspace::zero(int q, int n) { return Subspace(q, n, {}); }

Subspace Subspace::coordinate(const FiniteField& f, int n, IndexSet support) {
  std::vector<Vec> basis;
  for (int j : support.elements()) {
    require(j <= n, ErrorKind::domain, "coordinate index exceeds n");
    basis.push_back(Vec::unit(n, j));
  }
  return Subspace(f.order(), n, std::move(basis));
}

bool Subspace::operator<(const Subspace& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (dim() != o.dim()) return dim() < o.dim();
  return basis_ < o.basis_;
}

std::string Subspace::to_string() const {
  std::ostringstream os;
  os << "span{";
  for (std::size_t m = 0; m < basis_.size(); ++m) {
    if (m) os << ',';
    os << '(';
    for (int j = 1; j <= n_; ++j) {
      if (j > 1) os << ',';
      os << static_cast<int>(basis_[m][j]);
    }
    os << ')';
  }
  os << '}';
  return os.str();
}

Subspace normalize_basis(const FiniteField& f, int n, std::span<const Vec> vectors) {
  std::vector<Vec> basis;
  for (const auto& input : vectors) {
    require(input.dim() == n, ErrorKind::domain, "vector dimension does not match n");
    Vec w = reduce(f, input, basis);
    const int h = height_or_zero(w);
    require(h != 0, ErrorKind::rank, "input vectors are linearly dependent");
    w = scaled(f, w, f.inv(w[h]));
    for (auto& b : basis) {
      if (b[h] != 0) b = axpy_sub(f, b, b[h], w);
    }
    basis.push_back(std::move(w));
  }
  std::sort(basis.begin(), basis.end(),
            [](const Vec& a, const Vec& b) { return height(a) < height(b); });
  return Subspace(f.order(), n, std::move(basis));
}

bool membership(const FiniteField& f, const Vec& v, const Subspace& s) {
  require(v.dim() == s.ambient(), ErrorKind::domain, "vector/subspace dimension mismatch");
  require(f.order() == s.field_order(), ErrorKind::domain, "vector/subspace field mismatch");
  return reduce(f, v, s.basis()).is_zero();
}

bool contains(const FiniteField& f, const Subspace& big, const Subspace& small) {
  if (small.dim() > big.dim()) return false;
  if (!small.profile().subset_of(big.profile())) return false;
  return std::all_of(small.basis().begin(), small.basis().end(),
                     [&](const Vec& v) { return membership(f, v, big); });
}

std::vector<Subspace> enumerate_subspaces(const FiniteField& f, int n, int d,
                                          std::size_t budget) {
  require(n >= 1 && n <= IndexSet::kMaxElement, ErrorKind::domain, "n out of range");
  require(d >= 0 && d <= n, ErrorKind::domain, "subspace dimension out of range");
  const int q = f.order();

  // Canonical bases with profile W have free coordinates exactly at
  // positions j' < j with j' not in W, for each j in W.
  struct ProfilePlan {
    IndexSet profile;
    std::vector<std::pair<int, int>> free;  // (basis slot, coordinate)
  };
  std::vector<ProfilePlan> plans;
  long double total = 0;
  const std::uint32_t full = IndexSet::interval(n).bits();
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    const IndexSet w = IndexSet::from_bits(bits);
    if (w.size() != d) continue;
    ProfilePlan plan{w, {}};
    const auto elems = w.elements();
    for (std::size_t slot = 0; slot < elems.size(); ++slot)
      for (int c = 1; c < elems[slot]; ++c)
        if (!w.contains(c)) plan.free.emplace_back(static_cast<int>(slot), c);
    long double count = 1;
    for (std::size_t m = 0; m < plan.free.size(); ++m) count *= q;
    total += count;
    plans.push_back(std::move(plan));
  }
  require(total <= static_cast<long double>(budget), ErrorKind::resource,
          "subspace enumeration exceeds budget");

  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(total));
  for (const auto& plan : plans) {
    const auto elems = plan.profile.elements();
    std::vector<Vec> basis;
    for (int j : elems) basis.push_back(Vec::unit(n, j));
    std::vector<int> digits(plan.free.size(), 0);
    while (true) {
      for (std::size_t m = 0; m < plan.free.size(); ++m) {
        const auto [slot, c] = plan.free[m];
        basis[static_cast<std::size_t>(slot)].set(c, static_cast<Elem>(digits[m]));
      }
      out.push_back(Subspace(q, n, basis));
      std::size_t m = 0;
      while (m < digits.size() && ++digits[m] == q) digits[m++] = 0;
      if (m == digits.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FlagFq flag_normalize(const FiniteField& f, int n,
                      const std::vector<std::vector<Vec>>& member_bases) {
  FlagFq flag;
  for (std::size_t j = 0; j < member_bases.size(); ++j) {
    Subspace member = normalize_basis(f, n, member_bases[j]);
    require(member.dim() >= 1 && member.dim() < n, ErrorKind::structure,
            "flag members must be proper nonzero subspaces");
    if (j > 0) {
      const Subspace& prev = flag.chain_.back();
      require(member.dim() > prev.dim() && contains(f, member, prev), ErrorKind::structure,
              "flag members do not form a strict chain");
    }
    for (const auto& v : member_bases[j]) {
      Vec w = reduce(f, v, flag.nested_);
      const int h = height_or_zero(w);
      if (h == 0) continue;  // already spanned by lower levels
      flag.nested_.push_back(scaled(f, w, f.inv(w[h])));
      flag.level_.push_back(static_cast<int>(j));
    }
    flag.chain_.push_back(std::move(member));
  }
  return flag;
}

SubsetFlag flag_profile(const FlagFq& flag) {
  std::vector<IndexSet> members;
  for (std::size_t j = 0; j < flag.chain().size(); ++j) {
    IndexSet p;
    for (std::size_t m = 0; m < flag.nested_basis().size(); ++m)
      if (flag.nested_level()[m] <= static_cast<int>(j))
        p = p.with(height(flag.nested_basis()[m]));
    members.push_back(p);
  }
  const int n = flag.chain().empty() ? 1 : flag.chain().front().ambient();
  return SubsetFlag(n, std::move(members));
}

SubsetFlag flag_profile(std::span<const Subspace> chain) {
  std::vector<IndexSet> members;
  for (const auto& s : chain) members.push_back(s.profile());
  const int n = chain.empty() ? 1 : chain.front().ambient();
  return SubsetFlag(n, std::move(members));
}

FqMatrix FqMatrix::identity(int n) {
  FqMatrix m(n);
  for (int j = 1; j <= n; ++j) m.set(j, j, 1);
  return m;
}

bool FqMatrix::upper_triangular_invertible() const {
  for (int r = 1; r <= n_; ++r) {
    if (at(r, r) == 0) return false;
    for (int c = 1; c < r; ++c)
      if (at(r, c) != 0) return false;
  }
  return true;
}

Vec apply(const FiniteField& f, const FqMatrix& g, const Vec& v) {
  require(g.dim() == v.dim(), ErrorKind::domain, "matrix/vector dimension mismatch");
  Vec out(v.dim());
  for (int r = 1; r <= g.dim(); ++r) {
    Elem acc = 0;
    for (int c = 1; c <= g.dim(); ++c) acc = f.add(acc, f.mul(g.at(r, c), v[c]));
    out.set(r, acc);
  }
  return out;
}

Subspace apply(const FiniteField& f, const FqMatrix& g, const Subspace& s) {
  std::vector<Vec> images;
  for (const auto& b : s.basis()) images.push_back(apply(f, g, b));
  return normalize_basis(f, s.ambient(), images);
}

FqMatrix multiply(const FiniteField& f, const FqMatrix& a, const FqMatrix& b) {
  require(a.dim() == b.dim(), ErrorKind::domain, "matrix dimension mismatch");
  FqMatrix out(a.dim());
  for (int r = 1; r <= a.dim(); ++r)
    for (int c = 1; c <= a.dim(); ++c) {
      Elem acc = 0;
      for (int m = 1; m <= a.dim(); ++m) acc = f.add(acc, f.mul(a.at(r, m), b.at(m, c)));
      out.set(r, c, acc);
    }
  return out;
}

FqMatrix inverse_upper(const FiniteField& f, const FqMatrix& g) {
  require(g.upper_triangular_invertible(), ErrorKind::domain,
          "matrix is not invertible upper-triangular");
  const int n = g.dim();
  FqMatrix x(n);
  for (int c = 1; c <= n; ++c) {
    x.set(c, c, f.inv(g.at(c, c)));
    for (int r = c - 1; r >= 1; --r) {
      Elem acc = 0;
      for (int m = r + 1; m <= c; ++m) acc = f.add(acc, f.mul(g.at(r, m), x.at(m, c)));
      x.set(r, c, f.neg(f.mul(f.inv(g.at(r, r)), acc)));
    }
  }
  return x;
}

namespace {

FqMatrix witness_from_columns(const FiniteField& f, int n, std::span<const Vec> columns) {
  FqMatrix h = FqMatrix::identity(n);
  for (const auto& v : columns) {
    const int k = height(v);
    for (int r = 1; r <= n; ++r) h.set(r, k, v[r]);
  }
  return inverse_upper(f, h);
}

}  // namespace

FqMatrix transitivity_witness(const FiniteField& f, const Subspace& s) {
  return witness_from_columns(f, s.ambient(), s.basis());
}

FqMatrix transitivity_witness(const FiniteField& f, const FlagFq& flag) {
  require(flag.length() > 0, ErrorKind::domain, "empty flag");
  return witness_from_columns(f, flag.chain().front().ambient(), flag.nested_basis());
}

}  // namespace walklab::gfq
