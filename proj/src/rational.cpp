#include "wells_majorize/rational.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

#include "wells_majorize/errors.hpp"

namespace wm {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view text) {
  bool negative = false;
  std::string_view s = text;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw DomainError("malformed exponent in rational literal: " + std::string(text));
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string digits;
  long frac_len = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw DomainError("malformed rational literal: " + std::string(text));
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_len = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw DomainError("malformed rational literal: " + std::string(text));
    digits = std::string(s);
  }
  mpq_class q{mpz_class(digits)};
  const long shift = exponent - frac_len;
  if (shift > 0) {
    q *= pow10(static_cast<unsigned long>(shift));
  } else if (shift < 0) {
    q /= pow10(static_cast<unsigned long>(-shift));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(q);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  v_ = mpq_class(num, 1) / mpq_class(den, 1);
  v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) {
  if (v_.get_den() == 0) throw DomainError("zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw DomainError("empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    const std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) {
      throw DomainError("malformed rational literal: " + std::string(text));
    }
    mpz_class d(std::string{den});
    if (d == 0) throw DomainError("zero denominator in literal: " + std::string(text));
    mpq_class q(mpz_class(std::string{num}), d);
    q.canonicalize();
    if (negative) q = -q;
    return Rational(q);
  }
  return parse_decimal(text);
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::pow(unsigned long exponent) const {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), exponent);
  // Coprime inputs give coprime powers, so no reduction is needed.
  Rational r;
  r.v_.get_num() = num;
  r.v_.get_den() = den;
  return r;
}

Rational Rational::pow_signed(long exponent) const {
  if (exponent >= 0) return pow(static_cast<unsigned long>(exponent));
  if (is_zero()) throw DomainError("zero raised to a negative power");
  return Rational(1) / pow(static_cast<unsigned long>(-exponent));
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace wm
