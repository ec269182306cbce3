#include <doctest.h>

#include <random>

#include "wells_majorize/errors.hpp"
#include "wells_majorize/rational.hpp"

using wm::Rational;

TEST_CASE("rationals stay in lowest terms") {
  const Rational r(6, -4);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 2);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(2, 3) * Rational(3, 4)).str() == "1/2");
  CHECK(Rational(-2, 3).pow(3) == Rational(-8, 27));
  CHECK(Rational(2, 3).pow_signed(-2) == Rational(9, 4));
}

TEST_CASE("parsing accepts fractions, integers and decimals exactly") {
  CHECK(Rational::parse("22") == Rational(22));
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("1e-6") == Rational(1, 1000000));
  CHECK(Rational::parse("2.5E2") == Rational(250));
  CHECK(Rational::parse(" 3/2 ") == Rational(3, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), wm::DomainError);
  CHECK_THROWS_AS(Rational::parse("abc"), wm::DomainError);
  CHECK_THROWS_AS(Rational::parse(""), wm::DomainError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), wm::DomainError);
}

TEST_CASE("string form round-trips") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const long num = static_cast<long>(rng() % 2000001) - 1000000;
    const long den = 1 + static_cast<long>(rng() % 100000);
    const Rational r(num, den);
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("ordering is exact") {
  CHECK(Rational(1, 3) < Rational(334, 1000));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(wm::max(Rational(1, 2), Rational(2, 3)) == Rational(2, 3));
  CHECK(Rational(-5, 7).abs() == Rational(5, 7));
}
