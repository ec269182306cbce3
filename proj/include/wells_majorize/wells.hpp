#pragma once

// Even discrete apriori measures and the moment criterion for domination of
// Bernoulli measures.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wells_majorize/rational.hpp"
#include "wells_majorize/spin_sums.hpp"

namespace wm {

struct Atom {
  Rational value;
  Rational weight;
};

/// Even probability measure with finitely many atoms, not a point mass at 0.
/// Atoms are kept sorted by value.
class DiscreteMeasure {
 public:
  /// Validates weights > 0, total 1, evenness, distinct values and the
  /// point-mass-at-0 exclusion; ConfigError otherwise (message lists the
  /// offending atoms).
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  /// {"atoms": [["-1","1/6"], ["0","2/3"], ["1","1/6"]]}
  static DiscreteMeasure from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;

  const std::vector<Atom>& atoms() const { return atoms_; }
  Rational moment(unsigned k) const;
  Rational second_moment() const { return moment(2); }
  Rational max_abs_value() const;

 private:
  std::vector<Atom> atoms_;
};

/// (delta_T + delta_-T) / 2, T > 0.
DiscreteMeasure bernoulli_measure(const Rational& t);
/// 2S+1 atoms equally spaced on [-1, 1], weight 1/(2S+1) each.
DiscreteMeasure spin_measure(SpinValue s);
/// lambda/2 (delta_1 + delta_-1) + (1 - lambda) delta_0, 0 < lambda <= 1.
DiscreteMeasure mu_lambda(const Rational& lambda);

/// Second moment of the spin-S measure, 1/3 + 1/(3S).
Rational a_s(SpinValue s);

/// sum_atoms weight * (value^2 - s_squared)^n.
Rational wells_term(const DiscreteMeasure& mu, const Rational& s_squared, unsigned n);

struct MomentScan {
  bool passes = false;
  unsigned first_failure = 0;  // 0 when every order passed
  Rational failing_value;
};

/// wells_term >= 0 for n = 1..n_max. This certifies the criterion only up to
/// order n_max.
MomentScan scan_moments(const DiscreteMeasure& mu, const Rational& s_squared, unsigned n_max);
bool passes_up_to(const DiscreteMeasure& mu, const Rational& s_squared, unsigned n_max);

inline constexpr unsigned kDefaultNMax = 50;
/// 10^-6.
Rational default_tolerance();

struct TMinusResult {
  enum class Kind { closed_form, certified_up_to_n_max };
  /// Interval on T (not squared); lo passes, hi fails unless lo == hi.
  Rational lo;
  Rational hi;
  unsigned n_max_checked = 0;
  Kind status = Kind::certified_up_to_n_max;

  Rational lo_squared() const { return lo * lo; }
  Rational hi_squared() const { return hi * hi; }
};

std::string to_string(TMinusResult::Kind k);

/// Bisection on T in [0, max |atom|] with passes_up_to(mu, T^2, n_max) as
/// the predicate, until hi - lo <= tol. When the predicate passes at
/// max |atom| the threshold is that value exactly (closed_form; only the
/// Bernoulli family can do this). The down-set assumption is spot checked
/// after bisection; a violation is an InvariantError.
TMinusResult t_minus_upper(const DiscreteMeasure& mu, unsigned n_max = kDefaultNMax,
                           const Rational& tol = default_tolerance());

/// Closed form T_-^2 of mu_lambda: lambda for lambda <= 1/2, else 1/2.
Rational t_minus_mu_lambda(const Rational& lambda);

struct CanonicalGap {
  Rational second_moment;
  Rational t_minus_sq_lo;
  Rational t_minus_sq_hi;
  bool canonical_up_to_n_max = false;
};

/// Compares the truncated threshold with the root-mean-square spin.
/// canonical_up_to_n_max is exact: passes_up_to(mu, <x^2>, n_max).
CanonicalGap canonical_gap(const DiscreteMeasure& mu, unsigned n_max = kDefaultNMax,
                           const Rational& tol = default_tolerance());

/// E[x^(2k)] for the first coordinate of a uniform point on S^(D-1):
/// prod_{i<k} (2i+1)/(D+2i).
Rational sphere_moment(int d, unsigned k);

struct SphereCanonical {
  bool holds = false;
  std::vector<Rational> terms;  // terms[n-1] = integral of (x^2 - 1/D)^n
};

/// integral of (x^2 - 1/D)^n >= 0 for n = 1..n_max by binomial expansion.
SphereCanonical sphere_canonical_check(int d, unsigned n_max);

struct TcBounds {
  Rational griffiths;    // 1/4
  Rational msw;          // a_S for S != 1, 1/2 for S = 1
  Rational improvement;  // msw / griffiths
};

/// Lower bounds on T_c(S)/T_c(1/2). S >= 1.
TcBounds tc_bounds(SpinValue s);

}  // namespace wm
