#include "wells_majorize/wells.hpp"

#include <algorithm>
#include <sstream>

#include "wells_majorize/errors.hpp"

namespace wm {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ConfigError("measure has no atoms");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.value < b.value; });
  Rational total;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].weight.sign() <= 0) {
      throw ConfigError("atom at " + atoms_[i].value.str() + " has non-positive weight " + atoms_[i].weight.str());
    }
    if (i > 0 && atoms_[i].value == atoms_[i - 1].value) {
      throw ConfigError("duplicate atom at " + atoms_[i].value.str());
    }
    total += atoms_[i].weight;
  }
  if (total != Rational(1)) throw ConfigError("atom weights sum to " + total.str() + ", not 1");
  std::vector<std::string> offending;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& mirror = atoms_[atoms_.size() - 1 - i];
    if (mirror.value != -atoms_[i].value || mirror.weight != atoms_[i].weight) {
      offending.push_back("[" + atoms_[i].value.str() + ", " + atoms_[i].weight.str() + "]");
    }
  }
  if (!offending.empty()) {
    std::string msg = "measure is not even; unmatched atoms:";
    for (const auto& o : offending) msg += " " + o;
    throw ConfigError(msg);
  }
  if (atoms_.size() == 1) throw ConfigError("measure is a point mass at 0");
}

DiscreteMeasure DiscreteMeasure::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw ConfigError("measure literal must be an object with an \"atoms\" array");
  }
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_array() || a.size() != 2) throw ConfigError("each atom must be [value, weight]");
    auto field = [](const nlohmann::json& f) {
      if (f.is_string()) return Rational::parse(f.get<std::string>());
      if (f.is_number_integer()) return Rational(f.get<long>());
      throw ConfigError("atom fields must be rational strings or integers");
    };
    atoms.push_back({field(a[0]), field(a[1])});
  }
  return DiscreteMeasure(std::move(atoms));
}

nlohmann::ordered_json DiscreteMeasure::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& a : atoms_) arr.push_back({a.value.str(), a.weight.str()});
  return {{"atoms", arr}};
}

Rational DiscreteMeasure::moment(unsigned k) const {
  Rational m;
  for (const auto& a : atoms_) m += a.weight * a.value.pow(k);
  return m;
}

Rational DiscreteMeasure::max_abs_value() const { return atoms_.back().value; }

DiscreteMeasure bernoulli_measure(const Rational& t) {
  if (t.sign() <= 0) throw DomainError("Bernoulli measure needs T > 0");
  return DiscreteMeasure({{-t, Rational(1, 2)}, {t, Rational(1, 2)}});
}

DiscreteMeasure spin_measure(SpinValue s) {
  const int t = s.twice_s();
  std::vector<Atom> atoms;
  for (int k = 0; k <= t; ++k) atoms.push_back({Rational(2 * k - t, t), Rational(1, t + 1)});
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure mu_lambda(const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda > Rational(1)) throw DomainError("mu_lambda needs 0 < lambda <= 1");
  const Rational half = lambda / Rational(2);
  std::vector<Atom> atoms{{Rational(-1), half}, {Rational(1), half}};
  if (lambda != Rational(1)) atoms.push_back({Rational(0), Rational(1) - lambda});
  return DiscreteMeasure(std::move(atoms));
}

Rational a_s(SpinValue s) { return spin_measure(s).second_moment(); }

Rational wells_term(const DiscreteMeasure& mu, const Rational& s_squared, unsigned n) {
  Rational total;
  for (const auto& a : mu.atoms()) total += a.weight * (a.value * a.value - s_squared).pow(n);
  return total;
}

MomentScan scan_moments(const DiscreteMeasure& mu, const Rational& s_squared, unsigned n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  const auto& atoms = mu.atoms();
  std::vector<Rational> base;
  base.reserve(atoms.size());
  for (const auto& a : atoms) base.push_back(a.value * a.value - s_squared);
  // running[i] = weight_i * base_i^n, updated in place for n = 1, 2, ...
  std::vector<Rational> running;
  running.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) running.push_back(atoms[i].weight);
  for (unsigned n = 1; n <= n_max; ++n) {
    Rational total;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      running[i] *= base[i];
      total += running[i];
    }
    if (total.sign() < 0) return {false, n, total};
  }
  return {true, 0, Rational()};
}

bool passes_up_to(const DiscreteMeasure& mu, const Rational& s_squared, unsigned n_max) {
  return scan_moments(mu, s_squared, n_max).passes;
}

Rational default_tolerance() { return Rational(1, 1000000); }

std::string to_string(TMinusResult::Kind k) {
  return k == TMinusResult::Kind::closed_form ? "closed_form" : "certified_up_to_n_max";
}

TMinusResult t_minus_upper(const DiscreteMeasure& mu, unsigned n_max, const Rational& tol) {
  if (tol.sign() <= 0) throw DomainError("tolerance must be positive");
  auto pred = [&](const Rational& t) { return passes_up_to(mu, t * t, n_max); };
  const Rational top = mu.max_abs_value();
  TMinusResult r;
  r.n_max_checked = n_max;
  if (pred(top)) {
    r.lo = r.hi = top;
    r.status = TMinusResult::Kind::closed_form;
    return r;
  }
  Rational lo;  // T = 0 always passes: every term is a positive even moment
  Rational hi = top;
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / Rational(2);
    (pred(mid) ? lo : hi) = mid;
  }
  // Down-set spot checks around the bracket.
  const Rational quarter = lo / Rational(4);
  if (!pred(quarter) || !pred(lo - quarter) || pred((hi + top) / Rational(2))) {
    throw InvariantError("truncated moment predicate is not monotone in T for this measure");
  }
  r.lo = lo;
  r.hi = hi;
  return r;
}

Rational t_minus_mu_lambda(const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda > Rational(1)) throw DomainError("lambda must lie in (0, 1]");
  return lambda <= Rational(1, 2) ? lambda : Rational(1, 2);
}

CanonicalGap canonical_gap(const DiscreteMeasure& mu, unsigned n_max, const Rational& tol) {
  CanonicalGap g;
  g.second_moment = mu.second_moment();
  const auto t = t_minus_upper(mu, n_max, tol);
  g.t_minus_sq_lo = t.lo_squared();
  g.t_minus_sq_hi = t.hi_squared();
  g.canonical_up_to_n_max = passes_up_to(mu, g.second_moment, n_max);
  return g;
}

Rational sphere_moment(int d, unsigned k) {
  if (d < 1) throw DomainError("sphere dimension must be positive");
  Rational m(1);
  for (unsigned i = 0; i < k; ++i) m *= Rational(2 * static_cast<long>(i) + 1, d + 2 * static_cast<long>(i));
  return m;
}

SphereCanonical sphere_canonical_check(int d, unsigned n_max) {
  if (d < 2) throw DomainError("sphere canonical check needs D >= 2");
  const Rational shift = Rational(-1, d);
  std::vector<Rational> moments;
  for (unsigned k = 0; k <= n_max; ++k) moments.push_back(sphere_moment(d, k));
  SphereCanonical r;
  r.holds = true;
  for (unsigned n = 1; n <= n_max; ++n) {
    Rational term;
    mpz_class binom = 1;  // C(n, k)
    for (unsigned k = 0; k <= n; ++k) {
      term += Rational(mpq_class(binom)) * moments[k] * shift.pow(n - k);
      binom = binom * (n - k) / (k + 1);
    }
    r.holds = r.holds && term.sign() >= 0;
    r.terms.push_back(term);
  }
  return r;
}

TcBounds tc_bounds(SpinValue s) {
  if (s.twice_s() < 2) throw DomainError("tc_bounds needs S >= 1");
  TcBounds b;
  b.griffiths = Rational(1, 4);
  b.msw = s.twice_s() == 2 ? Rational(1, 2) : Rational(1, 3) + Rational(1) / (Rational(3) * s.value());
  b.improvement = b.msw / b.griffiths;
  return b;
}

}  // namespace wm
