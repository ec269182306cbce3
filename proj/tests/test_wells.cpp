#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "oracles.hpp"
#include "wells_majorize/wells.hpp"

using wm::Atom;
using wm::DiscreteMeasure;
using wm::Rational;
using wm::SpinValue;

namespace {

Rational total_weight(const DiscreteMeasure& mu) {
  Rational t;
  for (const auto& a : mu.atoms()) t += a.weight;
  return t;
}

bool is_even(const DiscreteMeasure& mu) {
  const auto& a = mu.atoms();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& b = a[a.size() - 1 - i];
    if (a[i].value != -b.value || a[i].weight != b.weight) return false;
  }
  return true;
}

// Even measure with atoms at +-v for random v >= floor, weights random.
DiscreteMeasure random_even_measure(std::mt19937_64& rng, const Rational& floor) {
  const int pairs = 1 + static_cast<int>(rng() % 4);
  std::vector<Rational> raw;
  Rational total;
  for (int i = 0; i < pairs; ++i) {
    raw.emplace_back(1 + static_cast<long>(rng() % 9));
    total += raw.back();
  }
  std::vector<Atom> atoms;
  Rational v = floor;
  for (int i = 0; i < pairs; ++i) {
    v += Rational(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 4));
    const Rational w = raw[i] / total / Rational(2);
    atoms.push_back({v, w});
    atoms.push_back({-v, w});
  }
  return DiscreteMeasure(std::move(atoms));
}

}  // namespace

TEST_CASE("factory measures") {
  const auto b = wm::bernoulli_measure(Rational(3, 2));
  CHECK(b.atoms().size() == 2u);
  CHECK(b.second_moment() == Rational(9, 4));

  const auto s1 = wm::spin_measure(SpinValue(2));
  REQUIRE(s1.atoms().size() == 3u);
  CHECK(s1.atoms()[0].value == Rational(-1));
  CHECK(s1.atoms()[1].value == Rational(0));
  CHECK(s1.atoms()[1].weight == Rational(1, 3));

  const auto half = wm::mu_lambda(Rational(1, 4));
  CHECK(half.second_moment() == Rational(1, 4));
  CHECK(wm::mu_lambda(Rational(1)).atoms().size() == 2u);

  for (int t = 1; t <= 40; ++t) {
    const auto mu = wm::spin_measure(SpinValue(t));
    CHECK(total_weight(mu) == Rational(1));
    CHECK(is_even(mu));
    CHECK(mu.second_moment() == wm::a_s(SpinValue(t)));
  }
  for (int k = 1; k <= 10; ++k) {
    const auto mu = wm::mu_lambda(Rational(k, 10));
    CHECK(total_weight(mu) == Rational(1));
    CHECK(is_even(mu));
  }
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(DiscreteMeasure({{Rational(0), Rational(1)}}), wm::ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{Rational(1), Rational(1, 2)}, {Rational(-1), Rational(1, 3)}}), wm::ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{Rational(1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}}), wm::ConfigError);
  CHECK_THROWS_AS(DiscreteMeasure({{Rational(1), Rational(0)}, {Rational(-1), Rational(1)}}), wm::ConfigError);
  try {
    DiscreteMeasure({{Rational(-1), Rational(1, 2)}, {Rational(2), Rational(1, 2)}});
    FAIL("expected ConfigError");
  } catch (const wm::ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("2") != std::string::npos);
    CHECK(msg.find("-1") != std::string::npos);
  }
  CHECK_THROWS_AS(wm::mu_lambda(Rational(0)), wm::DomainError);
  CHECK_THROWS_AS(wm::bernoulli_measure(Rational(0)), wm::DomainError);
}

TEST_CASE("measure json round trip") {
  const auto j = nlohmann::json::parse(R"({"atoms": [["-1","1/6"], ["0","2/3"], ["1","1/6"]]})");
  const auto mu = DiscreteMeasure::from_json(j);
  CHECK(mu.second_moment() == Rational(1, 3));
  const auto back = DiscreteMeasure::from_json(nlohmann::json::parse(mu.to_json().dump()));
  CHECK(back.atoms().size() == 3u);
  CHECK(back.moment(4) == mu.moment(4));
  CHECK_THROWS(DiscreteMeasure::from_json(nlohmann::json::parse(R"({"atoms": [["x","1"]]})")));
}

TEST_CASE("second moments of spin measures") {
  CHECK(wm::a_s(SpinValue(1)) == Rational(1));
  CHECK(wm::a_s(SpinValue(2)) == Rational(2, 3));
  CHECK(wm::a_s(SpinValue(3)) == Rational(5, 9));
  CHECK(wm::a_s(SpinValue(4)) == Rational(1, 2));
}

TEST_CASE("moment criterion terms") {
  const auto s1 = wm::spin_measure(SpinValue(2));
  CHECK(wm::wells_term(s1, Rational(2, 3), 1).is_zero());
  CHECK(wm::wells_term(s1, Rational(2, 3), 3) == Rational(-2, 27));
  CHECK_FALSE(wm::passes_up_to(s1, Rational(2, 3), 3));
  const auto scan = wm::scan_moments(s1, Rational(2, 3), 10);
  CHECK(scan.first_failure == 3u);
  CHECK(scan.failing_value == Rational(-2, 27));

  const auto mu = wm::mu_lambda(Rational(1, 4));
  CHECK(wm::passes_up_to(mu, Rational(1, 4), 50));
  CHECK_FALSE(wm::passes_up_to(mu, Rational(3, 10), 50));
  CHECK(wm::passes_up_to(wm::bernoulli_measure(Rational(1)), Rational(1), 50));
  CHECK_FALSE(wm::passes_up_to(wm::bernoulli_measure(Rational(1)), Rational(11, 10), 50));
}

TEST_CASE("spin moment terms are a positive multiple of spin sums") {
  // x = j/S, x^2 - a_S = (3j^2 - S(S+1)) / (3 S^2).
  for (int t = 1; t <= 20; ++t) {
    const SpinValue s(t);
    const Rational sv = s.value();
    for (unsigned m = 1; m <= 5; ++m) {
      const unsigned n = 2 * m + 1;
      const Rational term = wm::wells_term(wm::spin_measure(s), wm::a_s(s), n);
      const Rational scale = Rational(1) / Rational(t + 1) / (Rational(3) * sv * sv).pow(n);
      CHECK(term == scale * wm::spin_sum(s, m));
      CHECK(term.sign() == wm::spin_sum(s, m).sign());
    }
  }
}

TEST_CASE("property: pointwise non-negativity when the support avoids (-S, S)") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const Rational floor(static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    const auto mu = random_even_measure(rng, floor);
    Rational s_sq = mu.atoms().back().value;  // smallest positive atom is > floor
    for (const auto& a : mu.atoms()) {
      if (a.value.sign() > 0) s_sq = wm::min(s_sq, a.value);
    }
    s_sq = s_sq * s_sq;
    for (unsigned n = 1; n <= 12; ++n) CHECK(wm::wells_term(mu, s_sq, n).sign() >= 0);
  }
}

TEST_CASE("property: the truncated predicate is monotone on two-atom measures") {
  for (int k = 1; k <= 20; ++k) {
    const auto b = wm::bernoulli_measure(Rational(k, 7));
    for (unsigned n = 1; n <= 9; ++n) {
      bool failed = false;
      for (int i = 0; i <= 60; ++i) {
        const Rational s_sq(i, 20);
        const bool ok = wm::wells_term(b, s_sq, n).sign() >= 0;
        if (failed) CHECK_FALSE(ok);
        failed = failed || !ok;
      }
    }
  }
}

TEST_CASE("threshold search") {
  auto r = wm::t_minus_upper(wm::mu_lambda(Rational(1, 4)));
  CHECK(r.status == wm::TMinusResult::Kind::certified_up_to_n_max);
  CHECK(r.lo <= Rational(1, 2));
  CHECK(Rational(1, 2) <= r.hi);
  CHECK(r.hi - r.lo <= wm::default_tolerance());

  r = wm::t_minus_upper(wm::bernoulli_measure(Rational(3, 2)));
  CHECK(r.status == wm::TMinusResult::Kind::closed_form);
  CHECK(r.lo == Rational(3, 2));
  CHECK(r.hi == Rational(3, 2));

  r = wm::t_minus_upper(wm::spin_measure(SpinValue(2)));
  CHECK(r.lo_squared() < Rational(2, 3));
  CHECK(r.hi_squared() < Rational(2, 3));
  CHECK_FALSE(wm::canonical_gap(wm::spin_measure(SpinValue(2))).canonical_up_to_n_max);
  CHECK(wm::canonical_gap(wm::spin_measure(SpinValue(4))).canonical_up_to_n_max);

  CHECK(wm::t_minus_mu_lambda(Rational(3, 10)) == Rational(3, 10));
  CHECK(wm::t_minus_mu_lambda(Rational(7, 10)) == Rational(1, 2));
  CHECK(wm::to_string(wm::TMinusResult::Kind::closed_form) == "closed_form");
}

TEST_CASE("sphere moments") {
  for (unsigned k = 0; k <= 30; ++k) {
    CHECK(wm::sphere_moment(2, k) == wm::oracle::circle_cos_moment(k));
    CHECK(wm::sphere_moment(3, k) == wm::oracle::uniform_interval_moment(k));
    for (int d = 2; d <= 8; ++d) {
      CHECK(wm::sphere_moment(d, k + 1) ==
            wm::sphere_moment(d, k) * Rational(static_cast<long>(2 * k + 1), static_cast<long>(d + 2 * k)));
    }
  }
  CHECK(wm::sphere_moment(4, 1) == Rational(1, 4));
  CHECK_THROWS_AS(wm::sphere_moment(0, 1), wm::DomainError);
}

TEST_CASE("sphere moments against sampling") {
  // 10^6 Gaussian-normalised points; each estimate within 4 standard errors.
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  constexpr int kSamples = 1000000;
  for (int d : {2, 4}) {
    double sums[4] = {0, 0, 0, 0};
    double squares[4] = {0, 0, 0, 0};
    for (int i = 0; i < kSamples; ++i) {
      double first = normal(rng);
      double norm = first * first;
      for (int c = 1; c < d; ++c) {
        const double g = normal(rng);
        norm += g * g;
      }
      const double x2 = first * first / norm;
      double p = 1;
      for (int k = 0; k < 4; ++k) {
        p *= x2;
        sums[k] += p;
        squares[k] += p * p;
      }
    }
    for (int k = 0; k < 4; ++k) {
      const double mean = sums[k] / kSamples;
      const double se = std::sqrt((squares[k] / kSamples - mean * mean) / kSamples);
      CHECK(std::abs(mean - wm::sphere_moment(d, static_cast<unsigned>(k + 1)).to_double()) <= 4 * se);
    }
  }
}

TEST_CASE("sphere canonical check") {
  const auto c2 = wm::sphere_canonical_check(2, 30);
  CHECK(c2.holds);
  CHECK(c2.terms[0].is_zero());
  CHECK(c2.terms[1] == Rational(1, 8));
  CHECK(c2.terms[2].is_zero());
  for (int d = 3; d <= 6; ++d) CHECK(wm::sphere_canonical_check(d, 30).holds);
}

TEST_CASE("critical temperature bound ratios") {
  auto b = wm::tc_bounds(SpinValue(2));
  CHECK(b.griffiths == Rational(1, 4));
  CHECK(b.msw == Rational(1, 2));
  CHECK(b.improvement == Rational(2));
  b = wm::tc_bounds(SpinValue(4));
  CHECK(b.msw == Rational(1, 2));
  b = wm::tc_bounds(SpinValue(3));
  CHECK(b.msw == Rational(5, 9));
  CHECK(b.improvement == Rational(20, 9));
  CHECK_THROWS_AS(wm::tc_bounds(SpinValue(1)), wm::DomainError);

  Rational prev = wm::tc_bounds(SpinValue(3)).improvement;
  for (int t = 4; t <= 200; ++t) {
    const auto cur = wm::tc_bounds(SpinValue(t)).improvement;
    CHECK(cur < prev);
    CHECK(cur > Rational(4, 3));
    prev = cur;
  }
}
