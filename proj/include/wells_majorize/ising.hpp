#pragma once

// Finite-volume generalized Ising models by exact enumeration. Inverse
// temperature is folded into the couplings: the Gibbs weight is e^(-h).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wells_majorize/report.hpp"
#include "wells_majorize/wells.hpp"

namespace wm::ising {

inline constexpr std::size_t kDefaultSiteCap = 6;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;
inline constexpr double kDefaultTolerance = 1e-9;

class Lattice {
 public:
  explicit Lattice(std::vector<int> sites, std::size_t site_cap = kDefaultSiteCap);
  /// Sites 0..n-1.
  static Lattice range(std::size_t n, std::size_t site_cap = kDefaultSiteCap);

  std::size_t size() const { return sites_.size(); }
  const std::vector<int>& sites() const { return sites_; }
  /// Position of a site id; ConfigError if absent.
  std::size_t position(int site) const;

 private:
  std::vector<int> sites_;
};

struct Coupling {
  std::vector<int> subset;  // site ids, non-empty
  double j = 0.0;           // >= 0
};

/// Ferromagnetic couplings J(A) >= 0 on non-empty site subsets.
class CouplingSet {
 public:
  CouplingSet() = default;
  explicit CouplingSet(std::vector<Coupling> terms);
  void add(std::vector<int> subset, double j);
  const std::vector<Coupling>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  std::vector<Coupling> terms_;
};

/// Apriori measure in double precision (needed for Bernoulli measures with
/// irrational T).
struct AprioriMeasure {
  std::vector<double> values;
  std::vector<double> weights;

  static AprioriMeasure from_exact(const DiscreteMeasure& mu);
  /// b_T with T = sqrt(t_squared).
  static AprioriMeasure bernoulli_from_square(const Rational& t_squared);
  double max_abs_value() const;
  nlohmann::ordered_json to_json() const;
};

/// Spin value per lattice position.
using SpinConfiguration = std::vector<double>;

/// h = -sum_A J(A) prod_{j in A} sigma_j. ConfigError if a subset leaves the
/// lattice or the configuration has the wrong size.
double hamiltonian(const Lattice& lattice, const CouplingSet& couplings, const SpinConfiguration& sigma);

struct EnumerationLimits {
  std::uint64_t max_configurations = kDefaultEnumerationCap;
};

/// <sigma^B> = sum_sigma sigma^B e^(-h) prod mu(sigma_j) / Z, enumerated in
/// lexicographic order and summed pairwise. ResourceError above the cap,
/// NumericError if Z is not a positive finite number.
double gibbs_expectation(const Lattice& lattice, const CouplingSet& couplings, const AprioriMeasure& mu,
                         const std::vector<int>& b, const EnumerationLimits& limits = {});

struct DominationResult {
  bool holds = false;
  double lhs = 0.0;  // <sigma^B>_mu
  double rhs = 0.0;  // <sigma^B>_nu
};

/// holds iff <sigma^B>_mu <= <sigma^B>_nu + tol.
DominationResult domination_check(const Lattice& lattice, const CouplingSet& couplings, const AprioriMeasure& mu,
                                  const AprioriMeasure& nu, const std::vector<int>& b,
                                  double tol = kDefaultTolerance, const EnumerationLimits& limits = {});

/// One probe instance: lattice, couplings, B.
struct Instance {
  Lattice lattice;
  CouplingSet couplings;
  std::vector<int> b;

  nlohmann::ordered_json to_json() const;
  /// {"sites": [...], "couplings": [[[0,1], 0.5], ...], "B": [...]}
  static Instance from_json(const nlohmann::json& j, std::size_t site_cap = kDefaultSiteCap);
};

enum class ProbeExpectation {
  domination,  // every instance should satisfy the inequality
  violation,   // searching for a counterexample
};

struct ProbeOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t site_cap = 4;
  double tol = kDefaultTolerance;
  ProbeExpectation expect = ProbeExpectation::domination;
};

/// Deterministic random instance for (seed, trial index): 1..site_cap sites,
/// couplings J(A) in [0, 2] on subsets of size <= 3, non-empty B.
Instance random_instance(std::uint64_t seed, std::size_t trial, std::size_t site_cap);

/// Runs domination_check(mu, nu) on `trials` random instances. With
/// expect=domination any violation fails the report; with expect=violation
/// a violation passes and none is inconclusive.
VerificationReport random_probe(const ProbeOptions& options, const AprioriMeasure& mu, const AprioriMeasure& nu);

}  // namespace wm::ising
