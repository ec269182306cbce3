#pragma once

#include <concepts>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wells_majorize/majorize.hpp"
#include "wells_majorize/rational.hpp"

namespace wm {

/// Convex piecewise-linear function given by its breakpoints. Evaluation
/// outside [first abscissa, last abscissa] is a DomainError.
class PiecewiseLinearConvex {
 public:
  struct Breakpoint {
    Rational x;
    Rational y;
  };

  /// Requires >= 2 breakpoints, strictly increasing abscissae and
  /// non-decreasing slopes; otherwise DomainError.
  explicit PiecewiseLinearConvex(std::vector<Breakpoint> breakpoints);

  /// max(0, t - knot) on [lo, hi], lo < knot < hi.
  static PiecewiseLinearConvex hinge(const Rational& knot, const Rational& lo, const Rational& hi);
  /// Starts at (x0, y0) and uses the given slopes on consecutive widths.
  static PiecewiseLinearConvex from_slopes(const Rational& x0, const Rational& y0,
                                           const std::vector<Rational>& widths,
                                           const std::vector<Rational>& slopes);

  bool in_domain(const Rational& t) const { return t >= lo() && t <= hi(); }
  const Rational& lo() const { return points_.front().x; }
  const Rational& hi() const { return points_.back().x; }
  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  Rational operator()(const Rational& t) const;
  std::string describe() const;

 private:
  std::vector<Breakpoint> points_;
};

/// t -> t^k with k >= 1; convex on [0, inf).
class PowerFunction {
 public:
  explicit PowerFunction(unsigned exponent);
  unsigned exponent() const { return exponent_; }
  bool in_domain(const Rational& t) const { return t.sign() >= 0; }
  Rational operator()(const Rational& t) const { return t.pow(exponent_); }
  std::string describe() const { return "t^" + std::to_string(exponent_); }

 private:
  unsigned exponent_;
};

/// Odd function whose restriction to t >= 0 is convex: either t^(2m+1) or
/// the odd extension of a PiecewiseLinearConvex that starts at (0, 0).
class OddConvexFunction {
 public:
  static OddConvexFunction odd_power(unsigned m);
  /// The restriction must start exactly at (0, 0); otherwise DomainError.
  static OddConvexFunction odd_extension(PiecewiseLinearConvex restriction);

  bool in_domain(const Rational& t) const;
  Rational operator()(const Rational& t) const;
  std::string describe() const;

  /// Exponent 2m+1 when this is a symbolic odd power.
  std::optional<unsigned> power() const;

 private:
  explicit OddConvexFunction(std::variant<unsigned, PiecewiseLinearConvex> f) : f_(std::move(f)) {}
  std::variant<unsigned, PiecewiseLinearConvex> f_;  // unsigned holds 2m+1
};

template <typename F>
concept ConvexOnNonNeg = requires(const F& f, const Rational& t) {
  { f(t) } -> std::convertible_to<Rational>;
  { f.in_domain(t) } -> std::convertible_to<bool>;
  { f.describe() } -> std::convertible_to<std::string>;
};

struct KaramataResult {
  bool holds = false;
  Rational lhs;  // sum phi(x_j)
  Rational rhs;  // sum phi(y_j)
};

/// Evaluates both sides of sum phi(x_j) >= sum phi(y_j).
///
/// Requires x > y (PreconditionError otherwise) and every entry inside phi's
/// domain (DomainError). A false `holds` can only mean a bug; callers keep
/// the result as a witness.
template <ConvexOnNonNeg F>
KaramataResult karamata_verify(const NonNegVector& x, const NonNegVector& y, const F& phi) {
  if (!majorizes(x, y)) throw PreconditionError("karamata_verify: x does not majorize y");
  KaramataResult r;
  for (const auto& v : x) {
    if (!phi.in_domain(v)) throw DomainError("karamata_verify: " + v.str() + " outside domain of " + phi.describe());
    r.lhs += phi(v);
  }
  for (const auto& v : y) {
    if (!phi.in_domain(v)) throw DomainError("karamata_verify: " + v.str() + " outside domain of " + phi.describe());
    r.rhs += phi(v);
  }
  r.holds = r.lhs >= r.rhs;
  return r;
}

}  // namespace wm
