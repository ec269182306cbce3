#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "wells_majorize/convex.hpp"
#include "wells_majorize/majorize.hpp"

using wm::NonNegVector;
using wm::Rational;

namespace {

NonNegVector ints(std::initializer_list<long> v) {
  std::vector<Rational> r;
  for (long e : v) r.emplace_back(e);
  return NonNegVector(std::move(r));
}

NonNegVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(wm::oracle::random_rational(rng, 20, 6));
  if (std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); })) v[0] = Rational(1);
  return NonNegVector(std::move(v));
}

NonNegVector rescaled(const NonNegVector& v, const Rational& total) {
  std::vector<Rational> out;
  const Rational factor = total / v.sum();
  for (const auto& e : v) out.push_back(e * factor);
  return NonNegVector(std::move(out));
}

// Repeated transfers from a smaller entry to a larger one.
NonNegVector spread(std::mt19937_64& rng, NonNegVector v, int steps) {
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng() % v.size();
    const std::size_t j = rng() % v.size();
    if (i == j) continue;
    const std::size_t from = v[i] <= v[j] ? i : j;
    const std::size_t to = from == i ? j : i;
    if (v[from].is_zero()) continue;
    const Rational fraction(1 + static_cast<long>(rng() % 4), 4);
    v = wm::transfer(v, from, to, v[from] * fraction);
  }
  return v;
}

wm::PiecewiseLinearConvex random_convex(std::mt19937_64& rng, const Rational& hi) {
  const int pieces = 1 + static_cast<int>(rng() % 5);
  std::vector<Rational> widths(pieces, hi / Rational(pieces));
  std::vector<Rational> slopes;
  Rational slope(-static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
  for (int p = 0; p < pieces; ++p) {
    slopes.push_back(slope);
    slope += Rational(static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 3));
  }
  return wm::PiecewiseLinearConvex::from_slopes(Rational(0), Rational(static_cast<long>(rng() % 7)), widths, slopes);
}

}  // namespace

TEST_CASE("decreasing rearrangement") {
  CHECK(wm::decreasing_rearrangement(ints({1, 3, 2})) == ints({3, 2, 1}));
  CHECK(wm::decreasing_rearrangement(ints({5, 5, 5})) == ints({5, 5, 5}));
  CHECK(wm::decreasing_rearrangement(ints({22, 22, 0, 11, 11, 2, 2})) == ints({22, 22, 11, 11, 2, 2, 0}));
}

TEST_CASE("partial sums of the rearrangement") {
  auto as_ints = [](const std::vector<Rational>& v) {
    std::vector<long> out;
    for (const auto& r : v) out.push_back(r.numerator().get_si());
    return out;
  };
  CHECK(as_ints(wm::partial_sums(ints({3, 1}))) == std::vector<long>{3, 4});
  CHECK(as_ints(wm::partial_sums(ints({22, 22, 11, 11, 2, 2, 0}))) == std::vector<long>{22, 44, 55, 66, 68, 70, 70});
  CHECK(as_ints(wm::partial_sums(ints({14, 13, 13, 10, 10, 5, 5}))) ==
        std::vector<long>{14, 27, 40, 50, 60, 65, 70});
  CHECK(as_ints(wm::partial_sums(ints({1, 3, 2}))) == std::vector<long>{3, 5, 6});
}

TEST_CASE("majorizes on the worked examples") {
  CHECK(wm::majorizes(ints({2, 0}), ints({1, 1})));
  CHECK_FALSE(wm::majorizes(ints({1, 1}), ints({2, 0})));
  CHECK(wm::majorizes(ints({22, 22, 11, 11, 2, 2, 0}), ints({14, 13, 13, 10, 10, 5, 5})));
  CHECK_FALSE(wm::majorizes(ints({3, 1}), ints({2, 1})));  // totals differ
  CHECK_THROWS_AS(wm::majorizes(ints({1, 2}), ints({1, 1, 1})), wm::PreconditionError);
}

TEST_CASE("single-crossing criterion") {
  auto r = wm::single_crossing_majorizes(ints({3, 2, 1}), ints({2, 2, 2}));
  CHECK(r.applies);
  CHECK(r.crossing_index == 2u);

  r = wm::single_crossing_majorizes(ints({22, 22, 11, 11, 2, 2, 0}), ints({14, 13, 13, 10, 10, 5, 5}));
  CHECK_FALSE(r.applies);

  r = wm::single_crossing_majorizes(ints({2, 0}), ints({1, 1}));
  CHECK(r.applies);
  CHECK(r.crossing_index == 2u);

  // x* == y*: no crossing, defer to majorizes().
  CHECK_FALSE(wm::single_crossing_majorizes(ints({1, 2, 3}), ints({3, 2, 1})).applies);
  // Equality before the crossing is not the strict pattern.
  CHECK_FALSE(wm::single_crossing_majorizes(ints({3, 3, 0}), ints({3, 2, 1})).applies);
  CHECK(wm::majorizes(ints({3, 3, 0}), ints({3, 2, 1})));

  CHECK_THROWS_AS(wm::single_crossing_majorizes(ints({3, 1}), ints({2, 1})), wm::PreconditionError);
}

TEST_CASE("negative entries are rejected") {
  CHECK_THROWS_AS(NonNegVector({Rational(1), Rational(-1)}), wm::DomainError);
  CHECK_THROWS_AS(NonNegVector(std::vector<Rational>{}), wm::DomainError);
  CHECK_THROWS_AS(wm::transfer(ints({1, 2}), 0, 1, Rational(2)), wm::DomainError);
}

TEST_CASE("karamata examples") {
  const auto square = wm::karamata_verify(ints({2, 0}), ints({1, 1}), wm::PowerFunction(2));
  CHECK(square.holds);
  CHECK(square.lhs == Rational(4));
  CHECK(square.rhs == Rational(2));

  const auto hinge = wm::PiecewiseLinearConvex::hinge(Rational(2), Rational(0), Rational(3));
  const auto h = wm::karamata_verify(ints({3, 2, 1}), ints({2, 2, 2}), hinge);
  CHECK(h.holds);
  CHECK(h.lhs == Rational(1));
  CHECK(h.rhs == Rational(0));

  const auto refl = wm::karamata_verify(ints({1, 2, 3}), ints({1, 2, 3}), wm::PowerFunction(5));
  CHECK(refl.holds);
  CHECK(refl.lhs == refl.rhs);

  CHECK_THROWS_AS(wm::karamata_verify(ints({1, 1}), ints({2, 0}), wm::PowerFunction(2)), wm::PreconditionError);
  CHECK_THROWS_AS(wm::karamata_verify(ints({4, 0}), ints({2, 2}), hinge), wm::DomainError);
}

TEST_CASE("convex piecewise-linear functions are validated") {
  using BP = wm::PiecewiseLinearConvex::Breakpoint;
  CHECK_THROWS_AS(wm::PiecewiseLinearConvex({{Rational(0), Rational(0)}, {Rational(1), Rational(1)},
                                             {Rational(2), Rational(1)}}),
                  wm::DomainError);
  CHECK_THROWS_AS(wm::PiecewiseLinearConvex({BP{Rational(1), Rational(0)}, BP{Rational(1), Rational(2)}}),
                  wm::DomainError);
  const wm::PiecewiseLinearConvex f({{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(3), Rational(4)}});
  CHECK(f(Rational(2)) == Rational(2));
  CHECK(f(Rational(1, 2)) == Rational(0));
  CHECK_THROWS_AS(f(Rational(4)), wm::DomainError);

  const auto odd = wm::OddConvexFunction::odd_extension(f);
  CHECK(odd(Rational(-2)) == Rational(-2));
  CHECK(odd(Rational(0)) == Rational(0));
  CHECK_THROWS_AS(wm::OddConvexFunction::odd_extension(wm::PiecewiseLinearConvex::hinge(Rational(2), Rational(1), Rational(3))),
                  wm::DomainError);
  const auto cube = wm::OddConvexFunction::odd_power(1);
  CHECK(cube(Rational(-2)) == Rational(-8));
  CHECK(cube.power() == 3u);
}

TEST_CASE("property: rearrangement is idempotent and sum preserving") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto v = random_vector(rng, 1 + rng() % 12);
    const auto once = wm::decreasing_rearrangement(v);
    CHECK(wm::decreasing_rearrangement(once) == once);
    CHECK(once.sum() == v.sum());
    CHECK(once.is_non_increasing());
    CHECK(std::is_permutation(once.begin(), once.end(), v.begin()));
  }
}

TEST_CASE("property: reflexivity and antisymmetry") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng() % 12;
    const auto x = random_vector(rng, n);
    CHECK(wm::majorizes(x, x));
    const auto y = rescaled(random_vector(rng, n), x.sum());
    if (wm::majorizes(x, y) && wm::majorizes(y, x)) {
      CHECK(wm::decreasing_rearrangement(x) == wm::decreasing_rearrangement(y));
    }
  }
}

TEST_CASE("property: single crossing is sound and majorizes matches the hinge oracle") {
  std::mt19937_64 rng(2024);
  int applied = 0;
  int counterexamples = 0;
  int oracle_mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 2 + rng() % 11;
    const auto y = random_vector(rng, n);
    const auto x = (i % 2 == 0) ? spread(rng, y, 1 + static_cast<int>(rng() % 4))
                                : rescaled(random_vector(rng, n), y.sum());
    const bool m = wm::majorizes(x, y);
    const std::vector<Rational> xv(x.begin(), x.end());
    const std::vector<Rational> yv(y.begin(), y.end());
    if (m != wm::oracle::majorizes_by_hinges(xv, yv)) ++oracle_mismatches;
    const auto sc = wm::single_crossing_majorizes(x, y);
    if (sc.applies) {
      ++applied;
      if (!m) ++counterexamples;
    }
  }
  CHECK(counterexamples == 0);
  CHECK(oracle_mismatches == 0);
  CHECK(applied > 1000);
}

TEST_CASE("property: karamata holds on transfer-built pairs") {
  std::mt19937_64 rng(99);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + rng() % 8;
    const auto y = random_vector(rng, n);
    const auto x = spread(rng, y, 1 + static_cast<int>(rng() % 6));
    REQUIRE(wm::majorizes(x, y));
    Rational hi(1);
    for (const auto& e : x) hi = wm::max(hi, e);
    for (int f = 0; f < 10; ++f) {
      const auto phi = random_convex(rng, hi);
      if (!wm::karamata_verify(x, y, phi).holds) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("property: a transfer from smaller to larger entry majorizes") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto y = random_vector(rng, 2 + rng() % 10);
    std::size_t a = rng() % y.size();
    std::size_t b = rng() % y.size();
    if (a == b || y[a] == y[b]) continue;
    if (y[a] > y[b]) std::swap(a, b);
    if (y[a].is_zero()) continue;
    const auto moved = wm::transfer(y, a, b, y[a] / Rational(1 + static_cast<long>(rng() % 3)));
    CHECK(wm::majorizes(moved, y));
    CHECK_FALSE(wm::majorizes(y, moved));
  }
}
