#pragma once

// Centered odd-power sums over spin-S values and the verification machinery
// built on majorization.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wells_majorize/convex.hpp"
#include "wells_majorize/majorize.hpp"
#include "wells_majorize/rational.hpp"
#include "wells_majorize/report.hpp"

namespace wm {

/// Spin S stored as 2S so that half-odd spins stay integral.
class SpinValue {
 public:
  explicit SpinValue(int twice_s);
  /// "2", "3/2", "0.5" ...; must be a positive multiple of 1/2.
  static SpinValue parse(const std::string& text);
  static SpinValue from_rational(const Rational& s);

  int twice_s() const { return twice_s_; }
  bool is_half_odd() const { return twice_s_ % 2 == 1; }
  Rational value() const { return Rational(twice_s_, 2); }
  std::string str() const { return value().str(); }

  friend bool operator==(const SpinValue&, const SpinValue&) = default;

 private:
  int twice_s_;
};

/// sum_{j=-S..S} (3 j^2 - S(S+1))^(2m+1), j stepping by 1. Half-odd S is
/// summed over integers scaled by 4 and divided back out.
Rational spin_sum(SpinValue s, unsigned m);

/// Signs of spin_sum for every S in {1/2, 1, ..., s_max} and m in 0..m_max.
/// Passes when m = 0 rows are zero, S = 1 rows with m >= 1 are negative,
/// and every other row is >= 0.
VerificationReport verify_conjecture(SpinValue s_max, unsigned m_max);

enum class GridKind { half_odd, integer };

/// Samples of a convex function psi on an equally spaced grid.
///
/// half_odd: psi(j/N) for j = 0..N; non-negative, strictly increasing,
///           discretely convex.
/// integer:  psi(j/N) for j = -N..N; even, non-negative, discretely convex.
class PsiGrid {
 public:
  /// values[j] = psi(j/N), j = 0..N, N >= 1.
  static PsiGrid half_odd(std::vector<Rational> values);
  /// values[j] = psi(j/N) for j = 0..N; mirrored to -N..-1.
  static PsiGrid integer_even(std::vector<Rational> nonneg_half);
  static PsiGrid sample_half_odd(int n, const std::function<Rational(const Rational&)>& psi);
  static PsiGrid sample_integer(int n, const std::function<Rational(const Rational&)>& psi);

  GridKind kind() const { return kind_; }
  int n() const { return n_; }
  /// Grid index range: 0..N (half_odd) or -N..N (integer).
  int first_index() const { return kind_ == GridKind::half_odd ? 0 : -n_; }
  const Rational& at_index(int j) const;
  /// psi(t) with exact linear interpolation between samples.
  Rational at(const Rational& t) const;
  /// All samples in index order.
  const std::vector<Rational>& values() const { return values_; }
  Rational mean() const;
  bool is_affine() const;

 private:
  PsiGrid(GridKind kind, int n, std::vector<Rational> values);
  GridKind kind_;
  int n_;
  std::vector<Rational> values_;
};

/// Exact mean of the grid samples.
Rational psi_bar(const PsiGrid& psi);

/// Named grids used by the CLI and tests: "square", "affine", "abs",
/// "cube", "power:<k>" ("affine" and "abs" are |t|). Samples are taken on
/// unit spacing, psi_j = |j|^k, i.e. N^k psi(j/N); the positive factor
/// changes none of the constructions' signs or orderings.
PsiGrid psi_preset(const std::string& name, GridKind kind, int n);

/// psi values j^2 (integer S, N = S) or (2j)^2 for half-odd j in 1/2..S
/// (N = S - 1/2). S = 1/2 has no half-odd grid (DomainError).
PsiGrid spin_grid(SpinValue s);

struct ConstructionPair {
  NonNegVector x;
  NonNegVector y;
  std::optional<NonNegVector> w;
  int below_count = 0;  // #{j : psi_j <= mean}
  int above_count = 0;  // q for the half-odd case
  Rational mean;
};

/// Deficits y_j = mean - psi((j-1)/N), j = 1..n, and excesses
/// x_j = psi((N+1-j)/N) - mean for j <= q, zero for j > q, q = N+1-n.
ConstructionPair build_xy_half_odd(const PsiGrid& psi);

/// Excesses and deficits of a symmetric grid, both sorted decreasingly and
/// zero padded to a common length; w moves the last padding zero of x to
/// position 3. When no more samples sit at or below the mean than above it
/// (e.g. psi = |j|, N = 3) y is the padded one and w == x.
ConstructionPair build_xyw_integer(const PsiGrid& psi);

/// lhs >= rhs (or lhs <= rhs for the upper-bound checks).
struct InequalityCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
  bool tight = false;  // lhs == rhs
};

/// 2 psi(1) + psi(0) + 2 psi(1/N) >= 5 mean, on an integer grid. Equivalent
/// to x_1 + x_2 >= y_1 + y_2 + y_3 on the constructed vectors.
InequalityCheck check_first_block(const PsiGrid& psi);

/// psi(1/2 + 1/(2N)) <= mean on an integer grid with N odd; the point is
/// grid index (N+1)/2. Even N is a PreconditionError.
InequalityCheck check_midpoint_below_mean(const PsiGrid& psi);

/// Closed forms of the two checks above on psi = j^2, N = S:
/// 2S^2 + 2 >= (5/3) S (S+1) for integer S >= 2, and
/// S^2 (1/2 + 1/(2S))^2 <= S(S+1)/3 for odd S >= 3.
InequalityCheck check_spin_first_block(int s);
InequalityCheck check_spin_midpoint(int s);

struct SymmetricPairCheck {
  Rational outer_average;   // (psi(b) + psi(2c-b)) / 2
  Rational inner_average;   // (psi(a) + psi(2c-a)) / 2
  Rational center;          // psi(c)
  bool holds = false;
};

/// For 0 <= 2c-b < 2c-a <= c <= a < b <= 1 (else PreconditionError):
/// outer_average >= inner_average >= center for convex psi.
SymmetricPairCheck check_symmetric_pairs(const PsiGrid& psi, const Rational& a, const Rational& b,
                                         const Rational& c);

struct MeanPositionCheck {
  int below_count = 0;
  int n = 0;
  Rational midpoint_value;   // psi(1/2), interpolated when off grid
  Rational mean;
  Rational endpoint_average;  // (psi(0) + psi(1)) / 2
  bool count_ok = false;     // below_count >= (N+1)/2
  bool lower_ok = false;     // psi(1/2) <= mean
  bool upper_ok = false;     // mean <= endpoint_average
  bool strict = false;       // both bounds strict
  bool holds() const { return count_ok && lower_ok && upper_ok; }
};

/// Half-odd grid: at least half the samples sit at or below the mean, and
/// psi(1/2) <= mean <= (psi(0) + psi(1)) / 2.
MeanPositionCheck check_mean_position(const PsiGrid& psi);

/// Discrete slope monotonicity of the grid (the convexity the constructions
/// rely on).
bool slopes_non_decreasing(const PsiGrid& psi);

/// sum_j Phi(psi_j - mean) >= 0 over a half-odd grid, certified by the
/// single-crossing criterion and Karamata's inequality on (x, y).
VerificationReport verify_half_odd_centered_sum(const PsiGrid& psi, const OddConvexFunction& phi);

/// sum_{j=-N..N} Phi(psi_j - mean) >= 0 over an integer grid. Needs
/// N >= 2, check_first_block and (N odd) check_midpoint_below_mean;
/// otherwise the report is hypothesis_not_met.
VerificationReport verify_integer_centered_sum(const PsiGrid& psi, const OddConvexFunction& phi);

/// sum over the whole grid of Phi(psi_j - mean).
Rational centered_sum(const PsiGrid& psi, const OddConvexFunction& phi);

}  // namespace wm
