#include "walklab/index_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "walklab/errors.hpp"

namespace walklab {

namespace {

void check_element(int j) {
  require(j >= 1 && j <= IndexSet::kMaxElement, ErrorKind::domain,
          "index set element out of range: " + std::to_string(j));
}

}  // namespace

IndexSet::IndexSet(std::initializer_list<int> elements) {
  for (int j : elements) {
    check_element(j);
    bits_ |= 1u << (j - 1);
  }
}

IndexSet IndexSet::from_elements(const std::vector<int>& elements) {
  IndexSet s;
  for (int j : elements) s = s.with(j);
  return s;
}

IndexSet IndexSet::interval(int n) { return range(1, n); }

IndexSet IndexSet::range(int lo, int hi) {
  IndexSet s;
  for (int j = lo; j <= hi; ++j) s = s.with(j);
  return s;
}

int IndexSet::size() const { return std::popcount(bits_); }

bool IndexSet::contains(int j) const {
  if (j < 1 || j > kMaxElement) return false;
  return (bits_ >> (j - 1)) & 1u;
}

int IndexSet::min() const { return std::countr_zero(bits_) + 1; }

int IndexSet::max() const { return 32 - std::countl_zero(bits_); }

std::vector<int> IndexSet::elements() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
  return out;
}

IndexSet IndexSet::with(int j) const {
  check_element(j);
  return from_bits(bits_ | (1u << (j - 1)));
}

int IndexSet::count_below(int j) const {
  if (j <= 1) return 0;
  if (j > kMaxElement) return size();
  return std::popcount(bits_ & ((1u << (j - 1)) - 1u));
}

std::string IndexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int j : elements()) {
    if (!first) os << ',';
    os << j;
    first = false;
  }
  os << '}';
  return os.str();
}

bool canonical_less(IndexSet a, IndexSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto ea = a.elements();
  const auto eb = b.elements();
  return ea < eb;
}

SubsetFlag::SubsetFlag(int n, std::vector<IndexSet> members)
    : n_(n), members_(std::move(members)) {
  require(n >= 1 && n <= IndexSet::kMaxElement, ErrorKind::domain,
          "flag ambient size out of range");
  const IndexSet full = IndexSet::interval(n);
  for (std::size_t k = 0; k < members_.size(); ++k) {
    const IndexSet& m = members_[k];
    require(!m.empty(), ErrorKind::structure, "flag member is empty");
    require(m.proper_subset_of(full), ErrorKind::structure,
            "flag member " + m.to_string() + " is not a proper subset of [n]");
    if (k > 0) {
      require(members_[k - 1].proper_subset_of(m), ErrorKind::structure,
              "flag members are not strictly increasing");
    }
  }
}

IndexSet SubsetFlag::extended(int k) const {
  if (k < 0) return {};
  if (k >= length()) return IndexSet::interval(n_);
  return members_[static_cast<std::size_t>(k)];
}

SubsetFlag SubsetFlag::without(int k) const {
  SubsetFlag out = *this;
  out.members_.erase(out.members_.begin() + k);
  return out;
}

std::vector<int> SubsetFlag::sizes() const {
  std::vector<int> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.size());
  return out;
}

std::string SubsetFlag::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (k) out += " ⊂ ";
    out += members_[k].to_string();
  }
  return out + ")";
}

bool canonical_less(const SubsetFlag& a, const SubsetFlag& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (int k = 0; k < a.length(); ++k) {
    if (a[k] == b[k]) continue;
    return canonical_less(a[k], b[k]);
  }
  return false;
}

namespace {

void extend_flags(int n, int length, std::vector<IndexSet>& prefix,
                  std::vector<SubsetFlag>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.emplace_back(n, prefix);
    return;
  }
  const std::uint32_t full = IndexSet::interval(n).bits();
  const std::uint32_t base = prefix.empty() ? 0u : prefix.back().bits();
  const std::uint32_t free = full & ~base;
  // Proper nonempty supersets of base, leaving room for the remaining members.
  const int remaining = length - static_cast<int>(prefix.size());
  for (std::uint32_t add = free; add != 0; add = (add - 1) & free) {
    const IndexSet next = IndexSet::from_bits(base | add);
    if (next.size() > n - remaining) continue;
    prefix.push_back(next);
    extend_flags(n, length, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<SubsetFlag> all_subset_flags(int n, int length) {
  require(n >= 1 && n <= IndexSet::kMaxElement, ErrorKind::domain, "n out of range");
  require(length >= 0, ErrorKind::domain, "negative flag length");
  std::vector<SubsetFlag> out;
  std::vector<IndexSet> prefix;
  extend_flags(n, length, prefix, out);
  std::sort(out.begin(), out.end(), SubsetFlagLess{});
  return out;
}

bool join_flags(const SubsetFlag& a, const SubsetFlag& b, FlagJoin* out) {
  if (a.length() != b.length() || a.ambient() != b.ambient() || a == b) return false;
  std::vector<IndexSet> merged = a.members();
  for (const auto& m : b.members()) {
    if (std::find(merged.begin(), merged.end(), m) == merged.end()) merged.push_back(m);
  }
  if (static_cast<int>(merged.size()) != a.length() + 1) return false;
  std::sort(merged.begin(), merged.end(),
            [](IndexSet x, IndexSet y) { return x.size() < y.size(); });
  for (std::size_t k = 1; k < merged.size(); ++k) {
    if (!merged[k - 1].proper_subset_of(merged[k])) return false;
  }
  SubsetFlag joined(a.ambient(), std::move(merged));
  int ka = -1;
  int kb = -1;
  for (int k = 0; k < joined.length(); ++k) {
    const IndexSet& m = joined[k];
    if (std::find(a.members().begin(), a.members().end(), m) == a.members().end()) ka = k;
    if (std::find(b.members().begin(), b.members().end(), m) == b.members().end()) kb = k;
  }
  if (out) *out = FlagJoin{std::move(joined), ka, kb};
  return true;
}

}  // namespace walklab
