#include "walklab/qcount.hpp"

#include "walklab/errors.hpp"

namespace walklab::qcount {

namespace {

void check_q(long long q) {
  require(q >= 2, ErrorKind::domain, "q must be at least 2");
}

void check_type(const std::vector<int>& type, int n) {
  for (std::size_t j = 0; j < type.size(); ++j) {
    require(type[j] >= 1 && type[j] <= n - 1, ErrorKind::domain,
            "simplex type color out of range 1..n-1");
    if (j > 0)
      require(type[j - 1] < type[j], ErrorKind::domain,
              "simplex type must be strictly increasing");
  }
}

QInt binomial(int n, int k) {
  QInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

QInt gauss_binom(int n, int k, long long q) {
  check_q(q);
  require(n >= 0 && k >= 0 && k <= n, ErrorKind::domain, "gauss_binom requires 0 <= k <= n");
  const QInt qq(static_cast<unsigned long>(q));
  QInt num = 1;
  QInt den = 1;
  for (int i = 1; i <= k; ++i) {
    num *= ipow(qq, static_cast<unsigned long>(n - i + 1)) - 1;
    den *= ipow(qq, static_cast<unsigned long>(i)) - 1;
  }
  QInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

QInt full_flag_count(int m, long long q) {
  require(m >= 1, ErrorKind::domain, "full_flag_count requires m >= 1");
  QInt out = 1;
  for (int d = 2; d <= m; ++d) out *= gauss_binom(d, 1, q);
  return out;
}

QInt profile_count(int n, IndexSet w, long long q) {
  check_q(q);
  require(n >= 1 && n <= IndexSet::kMaxElement, ErrorKind::domain, "n out of range");
  require(w.subset_of(IndexSet::interval(n)), ErrorKind::domain,
          "profile " + w.to_string() + " is not a subset of [n]");
  const IndexSet outside = IndexSet::interval(n).minus(w);
  unsigned long exponent = 0;
  for (int j : w.elements()) exponent += static_cast<unsigned long>(outside.count_below(j));
  return ipow(static_cast<std::uint64_t>(q), exponent);
}

QInt sandwich_count(IndexSet lo, IndexSet mid, IndexSet hi, long long q) {
  check_q(q);
  require(lo.proper_subset_of(mid) && mid.proper_subset_of(hi), ErrorKind::domain,
          "sandwich_count requires lo ⊊ mid ⊊ hi");
  const IndexSet above = hi.minus(mid);
  unsigned long exponent = 0;
  for (int j : mid.minus(lo).elements())
    exponent += static_cast<unsigned long>(above.count_below(j));
  return ipow(static_cast<std::uint64_t>(q), exponent);
}

QInt ordered_partitions(int n, int blocks) {
  require(n >= 0 && blocks >= 0, ErrorKind::domain, "negative partition parameters");
  QInt out = 0;
  for (int k = 0; k <= blocks; ++k) {
    QInt term = binomial(blocks, k) *
                ipow(static_cast<std::uint64_t>(blocks - k), static_cast<unsigned long>(n));
    if (k % 2) out -= term;
    else out += term;
  }
  return out;
}

QInt quotient_size(int n, int i) {
  require(n >= 3 && i >= 0 && i <= n - 3, ErrorKind::domain,
          "quotient_size requires 0 <= i <= n-3");
  return ordered_partitions(n, i + 2);
}

QInt simplex_weight_formula(const std::vector<int>& type, int n, long long q) {
  check_q(q);
  require(n >= 2, ErrorKind::domain, "n must be at least 2");
  check_type(type, n);
  QInt out = 1;
  int prev = 0;
  for (int c : type) {
    out *= full_flag_count(c - prev, q);
    prev = c;
  }
  out *= full_flag_count(n - prev, q);
  return out;
}

Rational edge_weight_ratio(const std::vector<int>& type, int k, int n, long long q) {
  check_type(type, n);
  require(k >= 0 && k < static_cast<int>(type.size()), ErrorKind::domain,
          "edge_weight_ratio index out of range");
  const auto at = [&](int j) {
    if (j < 0) return 0;
    if (j >= static_cast<int>(type.size())) return n;
    return type[static_cast<std::size_t>(j)];
  };
  const QInt den = gauss_binom(at(k + 1) - at(k - 1), at(k) - at(k - 1), q);
  return make_rational(QInt(1), den);
}

QInt orbit_size(const SubsetFlag& v, long long q) {
  check_q(q);
  require(v.length() >= 1, ErrorKind::domain, "orbit_size requires a nonempty flag");
  QInt out = 1;
  for (int j = 0; j < v.length(); ++j)
    out *= sandwich_count(IndexSet{}, v[j], v.extended(j + 1), q);
  return out;
}

}  // namespace walklab::qcount
