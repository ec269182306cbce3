#pragma once

// Majorization order on non-negative rational vectors.
//
// x majorizes y (x > y) when both have the same total and every partial sum
// of the decreasing rearrangement of x is at least the matching partial sum
// for y.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wells_majorize/errors.hpp"
#include "wells_majorize/rational.hpp"

namespace wm {

/// Finite vector of non-negative exact rationals, length >= 1.
class NonNegVector {
 public:
  explicit NonNegVector(std::vector<Rational> entries);
  NonNegVector(std::initializer_list<Rational> entries);

  /// Parses a comma separated list of rational literals.
  static NonNegVector parse(const std::string& csv);

  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Rational> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  Rational sum() const;
  bool is_non_increasing() const;

  std::vector<std::string> to_strings() const;

  friend bool operator==(const NonNegVector&, const NonNegVector&) = default;

 private:
  std::vector<Rational> entries_;
};

/// Entries sorted non-increasingly; ties keep their original order.
NonNegVector decreasing_rearrangement(const NonNegVector& v);

/// (S_1, ..., S_n) of the decreasing rearrangement.
std::vector<Rational> partial_sums(const NonNegVector& v);

/// Partial sums in the given order, without rearranging.
std::vector<Rational> prefix_sums(std::span<const Rational> v);

/// Throws PreconditionError when the lengths differ.
bool majorizes(const NonNegVector& x, const NonNegVector& y);

/// Equal totals and raw-order prefix sums of a dominate those of b. With a
/// sorted decreasingly this is the same as a > b.
bool prefix_dominates(const NonNegVector& a, const NonNegVector& b);

struct SingleCrossing {
  bool applies = false;
  /// 1-based index of the first j with x*_j <= y*_j, set only when applies.
  std::optional<std::size_t> crossing_index;
};

/// Sufficient criterion for x > y: after rearrangement x*_j > y*_j strictly
/// for j < l and x*_j <= y*_j for j >= l, with 2 <= l <= n.
///
/// Unequal totals or lengths are a PreconditionError. Equality before l,
/// or x* == y*, reports applies=false; majorizes() still answers those.
SingleCrossing single_crossing_majorizes(const NonNegVector& x, const NonNegVector& y);

/// The same sign-pattern test on vectors taken in the given order (no
/// rearrangement, no total check). Used on tails of split comparisons.
SingleCrossing single_sign_change(std::span<const Rational> a, std::span<const Rational> b);

/// Moves `amount` from entry `from` to entry `to` of v. Used to build
/// majorizing pairs: a transfer from a smaller to a larger entry yields a
/// vector that majorizes v. Throws DomainError if an entry would go negative.
NonNegVector transfer(const NonNegVector& v, std::size_t from, std::size_t to, const Rational& amount);

}  // namespace wm
