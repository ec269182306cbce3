#include "wells_majorize/majorize.hpp"

#include <algorithm>
#include <sstream>

namespace wm {

NonNegVector::NonNegVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("NonNegVector needs at least one entry");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].sign() < 0) {
      throw DomainError("NonNegVector entry " + std::to_string(i) + " is negative: " + entries_[i].str());
    }
  }
}

NonNegVector::NonNegVector(std::initializer_list<Rational> entries)
    : NonNegVector(std::vector<Rational>(entries)) {}

NonNegVector NonNegVector::parse(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return NonNegVector(std::move(out));
}

Rational NonNegVector::sum() const {
  Rational s;
  for (const auto& e : entries_) s += e;
  return s;
}

bool NonNegVector::is_non_increasing() const {
  return std::is_sorted(entries_.begin(), entries_.end(), std::greater<>{});
}

std::vector<std::string> NonNegVector::to_strings() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.str());
  return out;
}

NonNegVector decreasing_rearrangement(const NonNegVector& v) {
  std::vector<Rational> sorted(v.begin(), v.end());
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<>{});
  return NonNegVector(std::move(sorted));
}

std::vector<Rational> prefix_sums(std::span<const Rational> v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  Rational running;
  for (const auto& e : v) {
    running += e;
    out.push_back(running);
  }
  return out;
}

std::vector<Rational> partial_sums(const NonNegVector& v) {
  return prefix_sums(decreasing_rearrangement(v).entries());
}

namespace {

void require_same_length(const NonNegVector& x, const NonNegVector& y) {
  if (x.size() != y.size()) {
    throw PreconditionError("majorization compares vectors of equal length (got " + std::to_string(x.size()) +
                            " and " + std::to_string(y.size()) + ")");
  }
}

bool dominates_prefixwise(std::span<const Rational> a, std::span<const Rational> b) {
  const auto sa = prefix_sums(a);
  const auto sb = prefix_sums(b);
  if (sa.back() != sb.back()) return false;
  for (std::size_t k = 0; k + 1 < sa.size(); ++k) {
    if (sa[k] < sb[k]) return false;
  }
  return true;
}

}  // namespace

bool majorizes(const NonNegVector& x, const NonNegVector& y) {
  require_same_length(x, y);
  return dominates_prefixwise(decreasing_rearrangement(x).entries(), decreasing_rearrangement(y).entries());
}

bool prefix_dominates(const NonNegVector& a, const NonNegVector& b) {
  require_same_length(a, b);
  return dominates_prefixwise(a.entries(), b.entries());
}

SingleCrossing single_sign_change(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw PreconditionError("sign-change test needs equal lengths");
  std::size_t j = 0;
  while (j < a.size() && a[j] > b[j]) ++j;
  const std::size_t ell = j + 1;  // first index (1-based) with a_j <= b_j
  for (; j < a.size(); ++j) {
    if (a[j] > b[j]) return {};
  }
  return {true, ell};
}

SingleCrossing single_crossing_majorizes(const NonNegVector& x, const NonNegVector& y) {
  require_same_length(x, y);
  if (x.sum() != y.sum()) {
    throw PreconditionError("single-crossing criterion needs equal totals (" + x.sum().str() + " vs " +
                            y.sum().str() + ")");
  }
  const auto xs = decreasing_rearrangement(x);
  const auto ys = decreasing_rearrangement(y);
  auto result = single_sign_change(xs.entries(), ys.entries());
  // l = 1 means x*_1 <= y*_1, which with equal totals forces x* == y*.
  if (!result.applies || *result.crossing_index < 2) return {};
  return result;
}

NonNegVector transfer(const NonNegVector& v, std::size_t from, std::size_t to, const Rational& amount) {
  if (from >= v.size() || to >= v.size()) throw DomainError("transfer index out of range");
  std::vector<Rational> e(v.begin(), v.end());
  e[from] -= amount;
  e[to] += amount;
  return NonNegVector(std::move(e));
}

}  // namespace wm
