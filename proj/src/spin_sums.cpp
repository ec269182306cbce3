#include "wells_majorize/spin_sums.hpp"

#include <chrono>

#include "wells_majorize/errors.hpp"
#include "wells_majorize/parallel.hpp"

namespace wm {

SpinValue::SpinValue(int twice_s) : twice_s_(twice_s) {
  if (twice_s_ < 1) throw DomainError("spin must be positive (2S >= 1)");
}

SpinValue SpinValue::from_rational(const Rational& s) {
  const Rational twice = s * Rational(2);
  if (!twice.is_integer() || twice.sign() <= 0 || !twice.numerator().fits_sint_p()) {
    throw DomainError("spin must be a positive multiple of 1/2, got " + s.str());
  }
  return SpinValue(static_cast<int>(twice.numerator().get_si()));
}

SpinValue SpinValue::parse(const std::string& text) { return from_rational(Rational::parse(text)); }

Rational spin_sum(SpinValue s, unsigned m) {
  const unsigned long k = 2UL * m + 1;
  const long t = s.twice_s();
  mpz_class total = 0;
  mpz_class term;
  if (s.is_half_odd()) {
    // 4(3 j^2 - S(S+1)) = 3 (2j)^2 - 2S(2S+2), with 2j odd in [-2S, 2S].
    for (long odd = -t; odd <= t; odd += 2) {
      const mpz_class base = mpz_class(3 * odd * odd) - mpz_class(t * (t + 2));
      mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), k);
      total += term;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 4, k);
    return Rational(mpq_class(total, scale));
  }
  const long spin = t / 2;
  for (long j = -spin; j <= spin; ++j) {
    const mpz_class base = mpz_class(3 * j * j) - mpz_class(spin * (spin + 1));
    mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), k);
    total += term;
  }
  return Rational(total);
}

VerificationReport verify_conjecture(SpinValue s_max, unsigned m_max) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.command = "verify-conjecture";
  report.parameters["s_max"] = s_max.str();
  report.parameters["m_max"] = m_max;
  report.table_header = {"S", "m", "value", "sign", "expected", "ok"};

  struct Cell {
    SpinValue s;
    unsigned m;
    Rational value;
  };
  std::vector<Cell> cells;
  for (int t = 1; t <= s_max.twice_s(); ++t) {
    for (unsigned m = 0; m <= m_max; ++m) cells.push_back({SpinValue(t), m, Rational()});
  }
  parallel_for(cells.size(), [&cells](std::size_t i) { cells[i].value = spin_sum(cells[i].s, cells[i].m); });

  int negatives = 0;
  int mismatches = 0;
  for (const auto& c : cells) {
    const int sign = c.value.sign();
    const bool spin_one = c.s.twice_s() == 2;
    std::string expected;
    bool ok = false;
    if (c.m == 0) {
      expected = "zero";
      ok = sign == 0;
    } else if (spin_one) {
      expected = "negative";
      ok = sign < 0;
    } else {
      expected = "non-negative";
      ok = sign >= 0;
    }
    if (sign < 0) ++negatives;
    const char* sign_text = sign > 0 ? "+" : (sign < 0 ? "-" : "0");
    report.table_rows.push_back(
        {c.s.str(), std::to_string(c.m), c.value.str(), sign_text, expected, ok ? "true" : "false"});
    if (!ok) {
      ++mismatches;
      report.fail_with({{"S", c.s.str()}, {"m", c.m}, {"value", c.value.str()}, {"expected", expected}});
    }
  }
  report.details["cells"] = cells.size();
  report.details["negative_cells"] = negatives;
  report.details["mismatches"] = mismatches;
  report.details["negative_family"] = negatives > 0 ? "S=1" : "none";
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wm
