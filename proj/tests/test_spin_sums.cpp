#include <doctest.h>

#include "oracles.hpp"
#include "wells_majorize/spin_sums.hpp"

using wm::Rational;
using wm::SpinValue;

TEST_CASE("spin sum worked values") {
  for (int t = 1; t <= 12; ++t) CHECK(wm::spin_sum(SpinValue(t), 0).is_zero());
  CHECK(wm::spin_sum(SpinValue(2), 1) == Rational(-6));
  CHECK(wm::spin_sum(SpinValue(3), 1) == Rational(0));
  CHECK(wm::spin_sum(SpinValue(4), 1) == Rational(162));
  CHECK(wm::spin_sum(SpinValue(1), 4) == Rational(0));
}

TEST_CASE("spin sum agrees with direct rational evaluation") {
  for (int t = 1; t <= 41; ++t) {
    for (unsigned m = 0; m <= 20; ++m) {
      CHECK(wm::spin_sum(SpinValue(t), m) == wm::oracle::spin_sum_direct(t, m));
    }
  }
}

TEST_CASE("property: half-odd sums are twice the positive half") {
  for (int t = 1; t <= 41; t += 2) {
    const Rational s(t, 2);
    for (unsigned m = 1; m <= 20; ++m) {
      Rational half;
      for (int odd = 1; odd <= t; odd += 2) {
        const Rational j(odd, 2);
        half += (Rational(3) * j * j - s * (s + Rational(1))).pow(2 * m + 1);
      }
      CHECK(wm::spin_sum(SpinValue(t), m) == Rational(2) * half);
    }
  }
}

TEST_CASE("property: signs over the tested range") {
  for (int t = 1; t <= 41; ++t) {
    for (unsigned m = 1; m <= 20; ++m) {
      const Rational v = wm::spin_sum(SpinValue(t), m);
      if (t == 2) {
        CHECK(v.sign() < 0);
      } else if (t == 3) {
        CHECK(v.is_zero());
      } else {
        CHECK(v.sign() >= 0);
      }
    }
  }
}

TEST_CASE("verify_conjecture reports") {
  auto r = wm::verify_conjecture(SpinValue(6), 3);
  CHECK(r.status == wm::Status::pass);
  CHECK(r.details["negative_family"] == "S=1");
  CHECK(r.details["negative_cells"] == 3);

  r = wm::verify_conjecture(SpinValue(1), 5);
  CHECK(r.status == wm::Status::pass);
  CHECK(r.table_rows.size() == 6u);
  for (const auto& row : r.table_rows) CHECK(row[2] == "0");

  r = wm::verify_conjecture(SpinValue(40), 10);
  CHECK(r.status == wm::Status::pass);
  CHECK(r.details["mismatches"] == 0);

  r = wm::verify_conjecture(SpinValue(40), 0);
  for (const auto& row : r.table_rows) CHECK(row[2] == "0");
}

TEST_CASE("spin values parse as multiples of one half") {
  CHECK(SpinValue::parse("3/2").twice_s() == 3);
  CHECK(SpinValue::parse("2").twice_s() == 4);
  CHECK(SpinValue::parse("0.5").twice_s() == 1);
  CHECK_THROWS_AS(SpinValue::parse("1/3"), wm::DomainError);
  CHECK_THROWS_AS(SpinValue::parse("0"), wm::DomainError);
}

TEST_CASE("grid means") {
  const auto squares = wm::psi_preset("square", wm::GridKind::integer, 6);
  CHECK(wm::psi_bar(squares) == Rational(14));
  const auto constant = wm::PsiGrid::integer_even({Rational(3), Rational(3), Rational(3)});
  CHECK(wm::psi_bar(constant) == Rational(3));
  const auto affine = wm::PsiGrid::sample_half_odd(2, [](const Rational& t) { return t; });
  CHECK(wm::psi_bar(affine) == Rational(1, 2));
}

TEST_CASE("grid validation and interpolation") {
  CHECK_THROWS_AS(wm::PsiGrid::half_odd({Rational(0), Rational(2), Rational(3)}), wm::DomainError);  // concave
  CHECK_THROWS_AS(wm::PsiGrid::half_odd({Rational(1), Rational(1)}), wm::DomainError);  // not increasing
  CHECK_THROWS_AS(wm::PsiGrid::integer_even({Rational(-1), Rational(0)}), wm::DomainError);
  const auto g = wm::PsiGrid::sample_half_odd(2, [](const Rational& t) { return t * t; });
  CHECK(g.at(Rational(1, 4)) == Rational(1, 8));
  CHECK(g.at(Rational(1, 2)) == Rational(1, 4));
  CHECK_THROWS_AS(g.at(Rational(2)), wm::DomainError);
  const auto h = wm::psi_preset("abs", wm::GridKind::integer, 3);
  CHECK(h.at(Rational(-1, 2)) == Rational(3, 2));
}
