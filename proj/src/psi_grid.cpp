#include "wells_majorize/spin_sums.hpp"

#include <algorithm>

#include "wells_majorize/errors.hpp"

namespace wm {

namespace {

bool discretely_convex(const std::vector<Rational>& v) {
  for (std::size_t i = 2; i < v.size(); ++i) {
    if (v[i] - v[i - 1] < v[i - 1] - v[i - 2]) return false;
  }
  return true;
}

int checked_int(const Rational& r, const char* what) {
  if (!r.is_integer() || !r.numerator().fits_sint_p()) throw DomainError(std::string(what) + " must be an integer");
  return static_cast<int>(r.numerator().get_si());
}

}  // namespace

PsiGrid::PsiGrid(GridKind kind, int n, std::vector<Rational> values)
    : kind_(kind), n_(n), values_(std::move(values)) {
  if (!discretely_convex(values_)) throw DomainError("psi grid is not convex (negative second difference)");
  for (const auto& v : values_) {
    if (v.sign() < 0) throw DomainError("psi grid has a negative sample: " + v.str());
  }
  if (kind_ == GridKind::half_odd) {
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (values_[i] <= values_[i - 1]) throw DomainError("half-odd psi grid must be strictly increasing");
    }
  }
}

PsiGrid PsiGrid::half_odd(std::vector<Rational> values) {
  if (values.size() < 2) throw DomainError("half-odd psi grid needs N >= 1");
  const int n = static_cast<int>(values.size()) - 1;
  return PsiGrid(GridKind::half_odd, n, std::move(values));
}

PsiGrid PsiGrid::integer_even(std::vector<Rational> nonneg_half) {
  if (nonneg_half.size() < 2) throw DomainError("integer psi grid needs N >= 1");
  const int n = static_cast<int>(nonneg_half.size()) - 1;
  std::vector<Rational> full;
  full.reserve(2 * nonneg_half.size() - 1);
  for (int j = n; j >= 1; --j) full.push_back(nonneg_half[j]);
  for (const auto& v : nonneg_half) full.push_back(v);
  return PsiGrid(GridKind::integer, n, std::move(full));
}

PsiGrid PsiGrid::sample_half_odd(int n, const std::function<Rational(const Rational&)>& psi) {
  if (n < 1) throw DomainError("grid size N must be >= 1");
  std::vector<Rational> v;
  for (int j = 0; j <= n; ++j) v.push_back(psi(Rational(j, n)));
  return half_odd(std::move(v));
}

PsiGrid PsiGrid::sample_integer(int n, const std::function<Rational(const Rational&)>& psi) {
  if (n < 1) throw DomainError("grid size N must be >= 1");
  std::vector<Rational> v;
  for (int j = 0; j <= n; ++j) v.push_back(psi(Rational(j, n)));
  return integer_even(std::move(v));
}

const Rational& PsiGrid::at_index(int j) const {
  const int offset = j - first_index();
  if (offset < 0 || offset >= static_cast<int>(values_.size())) {
    throw DomainError("psi grid index " + std::to_string(j) + " out of range");
  }
  return values_[offset];
}

Rational PsiGrid::at(const Rational& t) const {
  const Rational scaled = t * Rational(n_);
  const Rational lo_bound(first_index());
  if (scaled < lo_bound || scaled > Rational(n_)) throw DomainError("psi evaluated outside its grid at " + t.str());
  // floor of scaled
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.raw().get_num_mpz_t(), scaled.raw().get_den_mpz_t());
  const int j = static_cast<int>(fl.get_si());
  if (Rational(j) == scaled) return at_index(j);
  const Rational frac = scaled - Rational(j);
  return at_index(j) + (at_index(j + 1) - at_index(j)) * frac;
}

Rational PsiGrid::mean() const {
  Rational s;
  for (const auto& v : values_) s += v;
  return s / Rational(static_cast<long>(values_.size()));
}

bool PsiGrid::is_affine() const {
  // Integer grids are even, so the non-negative half decides.
  const Rational step = at_index(1) - at_index(0);
  for (int j = 1; j < n_; ++j) {
    if (at_index(j + 1) - at_index(j) != step) return false;
  }
  return true;
}

Rational psi_bar(const PsiGrid& psi) { return psi.mean(); }

PsiGrid psi_preset(const std::string& name, GridKind kind, int n) {
  unsigned exponent = 0;
  if (name == "affine" || name == "abs") {
    exponent = 1;
  } else if (name == "square") {
    exponent = 2;
  } else if (name == "cube") {
    exponent = 3;
  } else if (name.rfind("power:", 0) == 0) {
    exponent = static_cast<unsigned>(checked_int(Rational::parse(name.substr(6)), "power exponent"));
    if (exponent < 1) throw DomainError("power preset needs exponent >= 1");
  } else {
    throw DomainError("unknown psi preset: " + name);
  }
  if (n < 1) throw DomainError("grid size N must be >= 1");
  std::vector<Rational> v;
  for (long j = 0; j <= n; ++j) v.push_back(Rational(j).pow(exponent));
  return kind == GridKind::half_odd ? PsiGrid::half_odd(std::move(v)) : PsiGrid::integer_even(std::move(v));
}

PsiGrid spin_grid(SpinValue s) {
  const int t = s.twice_s();
  std::vector<Rational> v;
  if (s.is_half_odd()) {
    if (t < 3) throw DomainError("spin 1/2 has a single magnitude; no half-odd grid");
    for (long odd = 1; odd <= t; odd += 2) v.push_back(Rational(odd * odd));
    return PsiGrid::half_odd(std::move(v));
  }
  for (long j = 0; j <= t / 2; ++j) v.push_back(Rational(j * j));
  return PsiGrid::integer_even(std::move(v));
}

ConstructionPair build_xy_half_odd(const PsiGrid& psi) {
  if (psi.kind() != GridKind::half_odd) throw PreconditionError("build_xy_half_odd needs a half-odd grid");
  const int n_grid = psi.n();
  const Rational mean = psi.mean();
  int below = 0;
  for (int j = 0; j <= n_grid; ++j) {
    if (psi.at_index(j) <= mean) ++below;
  }
  if (2 * below < n_grid + 1) {
    throw InvariantError("fewer than (N+1)/2 samples at or below the mean; psi is not convex increasing");
  }
  const int q = n_grid + 1 - below;
  std::vector<Rational> y;
  std::vector<Rational> x;
  for (int j = 1; j <= below; ++j) {
    y.push_back(mean - psi.at_index(j - 1));
    x.push_back(j <= q ? psi.at_index(n_grid + 1 - j) - mean : Rational(0));
  }
  ConstructionPair pair{NonNegVector(std::move(x)), NonNegVector(std::move(y)), std::nullopt, below, q, mean};
  if (pair.x.sum() != pair.y.sum()) throw InvariantError("constructed x and y have different totals");
  return pair;
}

ConstructionPair build_xyw_integer(const PsiGrid& psi) {
  if (psi.kind() != GridKind::integer) throw PreconditionError("build_xyw_integer needs an integer grid");
  if (psi.n() < 2) throw PreconditionError("build_xyw_integer needs N >= 2");
  const Rational mean = psi.mean();
  std::vector<Rational> excess;
  std::vector<Rational> deficit;
  for (const auto& v : psi.values()) {
    if (v > mean) {
      excess.push_back(v - mean);
    } else {
      deficit.push_back(mean - v);
    }
  }
  const int below = static_cast<int>(deficit.size());
  const int above = static_cast<int>(excess.size());
  std::stable_sort(excess.begin(), excess.end(), std::greater<>{});
  std::stable_sort(deficit.begin(), deficit.end(), std::greater<>{});
  const std::size_t len = std::max(excess.size(), deficit.size());
  excess.resize(len, Rational(0));
  deficit.resize(len, Rational(0));

  std::vector<Rational> w = excess;
  if (above < below) {
    // The last entry of x is a padding zero; move it to position 3.
    w.pop_back();
    w.insert(w.begin() + 2, Rational(0));
  }

  ConstructionPair pair{NonNegVector(std::move(excess)), NonNegVector(std::move(deficit)),
                        NonNegVector(std::move(w)), below, above, mean};
  if (pair.x.sum() != pair.y.sum() || pair.w->sum() != pair.x.sum()) {
    throw InvariantError("constructed x, y, w have different totals");
  }
  return pair;
}

InequalityCheck check_first_block(const PsiGrid& psi) {
  if (psi.kind() != GridKind::integer) throw PreconditionError("check_first_block needs an integer grid");
  InequalityCheck c;
  c.lhs = Rational(2) * psi.at_index(psi.n()) + psi.at_index(0) + Rational(2) * psi.at_index(1);
  c.rhs = Rational(5) * psi.mean();
  c.holds = c.lhs >= c.rhs;
  c.tight = c.lhs == c.rhs;
  return c;
}

InequalityCheck check_midpoint_below_mean(const PsiGrid& psi) {
  if (psi.kind() != GridKind::integer) throw PreconditionError("check_midpoint_below_mean needs an integer grid");
  if (psi.n() % 2 == 0) throw PreconditionError("check_midpoint_below_mean applies to odd N only");
  InequalityCheck c;
  c.lhs = psi.at_index((psi.n() + 1) / 2);
  c.rhs = psi.mean();
  c.holds = c.lhs <= c.rhs;
  c.tight = c.lhs == c.rhs;
  return c;
}

InequalityCheck check_spin_first_block(int s) {
  if (s < 2) throw PreconditionError("spin first-block check needs integer S >= 2");
  const Rational sr(s);
  InequalityCheck c;
  c.lhs = Rational(2) * sr * sr + Rational(2);
  c.rhs = Rational(5, 3) * sr * (sr + Rational(1));
  c.holds = c.lhs >= c.rhs;
  c.tight = c.lhs == c.rhs;
  return c;
}

InequalityCheck check_spin_midpoint(int s) {
  if (s < 3 || s % 2 == 0) throw PreconditionError("spin midpoint check needs odd S >= 3");
  const Rational sr(s);
  const Rational half_plus = Rational(1, 2) + Rational(1) / (Rational(2) * sr);
  InequalityCheck c;
  c.lhs = sr * sr * half_plus * half_plus;
  c.rhs = sr * (sr + Rational(1)) / Rational(3);
  c.holds = c.lhs <= c.rhs;
  c.tight = c.lhs == c.rhs;
  return c;
}

SymmetricPairCheck check_symmetric_pairs(const PsiGrid& psi, const Rational& a, const Rational& b,
                                         const Rational& c) {
  const Rational b_mirror = Rational(2) * c - b;
  const Rational a_mirror = Rational(2) * c - a;
  if (!(Rational(0) <= b_mirror && b_mirror < a_mirror && a_mirror <= c && c <= a && a < b && b <= Rational(1))) {
    throw PreconditionError("symmetric pair check needs 0 <= 2c-b < 2c-a <= c <= a < b <= 1");
  }
  SymmetricPairCheck r;
  r.outer_average = (psi.at(b) + psi.at(b_mirror)) / Rational(2);
  r.inner_average = (psi.at(a) + psi.at(a_mirror)) / Rational(2);
  r.center = psi.at(c);
  r.holds = r.outer_average >= r.inner_average && r.inner_average >= r.center;
  return r;
}

MeanPositionCheck check_mean_position(const PsiGrid& psi) {
  if (psi.kind() != GridKind::half_odd) throw PreconditionError("check_mean_position needs a half-odd grid");
  MeanPositionCheck r;
  r.n = psi.n();
  r.mean = psi.mean();
  for (int j = 0; j <= r.n; ++j) {
    if (psi.at_index(j) <= r.mean) ++r.below_count;
  }
  r.midpoint_value = psi.at(Rational(1, 2));
  r.endpoint_average = (psi.at_index(0) + psi.at_index(r.n)) / Rational(2);
  r.count_ok = 2 * r.below_count >= r.n + 1;
  r.lower_ok = r.midpoint_value <= r.mean;
  r.upper_ok = r.mean <= r.endpoint_average;
  r.strict = r.midpoint_value < r.mean && r.mean < r.endpoint_average;
  return r;
}

bool slopes_non_decreasing(const PsiGrid& psi) {
  const auto& v = psi.values();
  for (std::size_t m = 0; m + 1 < v.size(); ++m) {
    for (std::size_t p = m + 1; p + 1 < v.size(); ++p) {
      if (v[m + 1] - v[m] > v[p + 1] - v[p]) return false;
    }
  }
  return true;
}

Rational centered_sum(const PsiGrid& psi, const OddConvexFunction& phi) {
  const Rational mean = psi.mean();
  Rational s;
  for (const auto& v : psi.values()) s += phi(v - mean);
  return s;
}

}  // namespace wm
