#include "wells_majorize/convex.hpp"

#include <sstream>

namespace wm {

PiecewiseLinearConvex::PiecewiseLinearConvex(std::vector<Breakpoint> breakpoints) : points_(std::move(breakpoints)) {
  if (points_.size() < 2) throw DomainError("piecewise-linear function needs at least two breakpoints");
  std::optional<Rational> previous_slope;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].x <= points_[i - 1].x) throw DomainError("breakpoint abscissae must be strictly increasing");
    const Rational slope = (points_[i].y - points_[i - 1].y) / (points_[i].x - points_[i - 1].x);
    if (previous_slope && slope < *previous_slope) {
      throw DomainError("slopes decrease at breakpoint " + points_[i - 1].x.str() + ": not convex");
    }
    previous_slope = slope;
  }
}

PiecewiseLinearConvex PiecewiseLinearConvex::hinge(const Rational& knot, const Rational& lo, const Rational& hi) {
  if (!(lo < knot && knot < hi)) throw DomainError("hinge knot must lie strictly inside [lo, hi]");
  return PiecewiseLinearConvex({{lo, Rational(0)}, {knot, Rational(0)}, {hi, hi - knot}});
}

PiecewiseLinearConvex PiecewiseLinearConvex::from_slopes(const Rational& x0, const Rational& y0,
                                                         const std::vector<Rational>& widths,
                                                         const std::vector<Rational>& slopes) {
  if (widths.size() != slopes.size() || widths.empty()) throw DomainError("from_slopes: widths/slopes mismatch");
  std::vector<Breakpoint> pts{{x0, y0}};
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const auto& last = pts.back();
    pts.push_back({last.x + widths[i], last.y + slopes[i] * widths[i]});
  }
  return PiecewiseLinearConvex(std::move(pts));
}

Rational PiecewiseLinearConvex::operator()(const Rational& t) const {
  if (!in_domain(t)) throw DomainError("piecewise-linear function evaluated outside its domain at " + t.str());
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (t <= points_[i].x) {
      const auto& a = points_[i - 1];
      const auto& b = points_[i];
      return a.y + (b.y - a.y) * (t - a.x) / (b.x - a.x);
    }
  }
  return points_.back().y;
}

std::string PiecewiseLinearConvex::describe() const {
  std::ostringstream os;
  os << "pwl[";
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i) os << ' ';
    os << '(' << points_[i].x << ',' << points_[i].y << ')';
  }
  os << ']';
  return os.str();
}

PowerFunction::PowerFunction(unsigned exponent) : exponent_(exponent) {
  if (exponent_ < 1) throw DomainError("power function needs exponent >= 1 to be convex");
}

OddConvexFunction OddConvexFunction::odd_power(unsigned m) { return OddConvexFunction(2 * m + 1); }

OddConvexFunction OddConvexFunction::odd_extension(PiecewiseLinearConvex restriction) {
  const auto& first = restriction.breakpoints().front();
  if (!first.x.is_zero() || !first.y.is_zero()) {
    throw DomainError("odd extension needs a restriction starting at (0, 0)");
  }
  return OddConvexFunction(std::move(restriction));
}

bool OddConvexFunction::in_domain(const Rational& t) const {
  if (std::holds_alternative<unsigned>(f_)) return true;
  return std::get<PiecewiseLinearConvex>(f_).in_domain(t.abs());
}

Rational OddConvexFunction::operator()(const Rational& t) const {
  if (const auto* k = std::get_if<unsigned>(&f_)) return t.pow(*k);
  const auto& g = std::get<PiecewiseLinearConvex>(f_);
  return t.sign() >= 0 ? g(t) : -g(-t);
}

std::string OddConvexFunction::describe() const {
  if (const auto* k = std::get_if<unsigned>(&f_)) return "t^" + std::to_string(*k);
  return "odd(" + std::get<PiecewiseLinearConvex>(f_).describe() + ")";
}

std::optional<unsigned> OddConvexFunction::power() const {
  if (const auto* k = std::get_if<unsigned>(&f_)) return *k;
  return std::nullopt;
}

}  // namespace wm
