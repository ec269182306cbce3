#include "wells_majorize/ising.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "wells_majorize/errors.hpp"
#include "wells_majorize/parallel.hpp"

namespace wm::ising {

Lattice::Lattice(std::vector<int> sites, std::size_t site_cap) : sites_(std::move(sites)) {
  if (sites_.size() > site_cap) {
    throw ConfigError("lattice has " + std::to_string(sites_.size()) + " sites, cap is " + std::to_string(site_cap));
  }
  std::set<int> seen(sites_.begin(), sites_.end());
  if (seen.size() != sites_.size()) throw ConfigError("lattice site identifiers must be unique");
}

Lattice Lattice::range(std::size_t n, std::size_t site_cap) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<int>(i);
  return Lattice(std::move(s), site_cap);
}

std::size_t Lattice::position(int site) const {
  const auto it = std::find(sites_.begin(), sites_.end(), site);
  if (it == sites_.end()) throw ConfigError("site " + std::to_string(site) + " is not in the lattice");
  return static_cast<std::size_t>(it - sites_.begin());
}

CouplingSet::CouplingSet(std::vector<Coupling> terms) {
  for (auto& t : terms) add(std::move(t.subset), t.j);
}

void CouplingSet::add(std::vector<int> subset, double j) {
  if (subset.empty()) throw ConfigError("coupling subset must be non-empty");
  if (!(j >= 0.0) || !std::isfinite(j)) throw ConfigError("couplings must be finite and non-negative (ferromagnetic)");
  terms_.push_back({std::move(subset), j});
}

AprioriMeasure AprioriMeasure::from_exact(const DiscreteMeasure& mu) {
  AprioriMeasure m;
  for (const auto& a : mu.atoms()) {
    m.values.push_back(a.value.to_double());
    m.weights.push_back(a.weight.to_double());
  }
  return m;
}

AprioriMeasure AprioriMeasure::bernoulli_from_square(const Rational& t_squared) {
  if (t_squared.sign() <= 0) throw DomainError("Bernoulli measure needs T^2 > 0");
  const double t = std::sqrt(t_squared.to_double());
  return {{-t, t}, {0.5, 0.5}};
}

double AprioriMeasure::max_abs_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

nlohmann::ordered_json AprioriMeasure::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < values.size(); ++i) arr.push_back({values[i], weights[i]});
  return {{"atoms", arr}};
}

namespace {

struct CompiledTerm {
  std::vector<std::size_t> positions;
  double j;
};

std::vector<CompiledTerm> compile(const Lattice& lattice, const CouplingSet& couplings) {
  std::vector<CompiledTerm> out;
  out.reserve(couplings.terms().size());
  for (const auto& t : couplings.terms()) {
    CompiledTerm c{{}, t.j};
    for (int site : t.subset) c.positions.push_back(lattice.position(site));
    out.push_back(std::move(c));
  }
  return out;
}

double energy(const std::vector<CompiledTerm>& terms, const SpinConfiguration& sigma) {
  double h = 0.0;
  for (const auto& t : terms) {
    double prod = 1.0;
    for (auto p : t.positions) prod *= sigma[p];
    h -= t.j * prod;
  }
  return h;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

double hamiltonian(const Lattice& lattice, const CouplingSet& couplings, const SpinConfiguration& sigma) {
  if (sigma.size() != lattice.size()) throw ConfigError("configuration size does not match the lattice");
  return energy(compile(lattice, couplings), sigma);
}

double gibbs_expectation(const Lattice& lattice, const CouplingSet& couplings, const AprioriMeasure& mu,
                         const std::vector<int>& b, const EnumerationLimits& limits) {
  const auto terms = compile(lattice, couplings);
  std::vector<std::size_t> b_positions;
  for (int site : b) b_positions.push_back(lattice.position(site));

  const std::size_t q = mu.values.size();
  const std::size_t n = lattice.size();
  if (q == 0) throw ConfigError("apriori measure has no atoms");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > limits.max_configurations / q) {
      throw ResourceError("enumeration of " + std::to_string(q) + "^" + std::to_string(n) +
                          " configurations exceeds the cap of " + std::to_string(limits.max_configurations));
    }
    count *= q;
  }

  // Pass 1: exponents -h + log prod mu, kept to shift by their maximum.
  std::vector<double> log_weight(count);
  std::vector<double> observable(count);
  std::vector<std::size_t> digits(n, 0);
  SpinConfiguration sigma(n, mu.values.front());
  for (std::uint64_t c = 0; c < count; ++c) {
    double log_prior = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_prior += std::log(mu.weights[digits[i]]);
    log_weight[c] = -energy(terms, sigma) + log_prior;
    double ob = 1.0;
    for (auto p : b_positions) ob *= sigma[p];
    observable[c] = ob;
    // Lexicographic increment, last site fastest.
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < q) {
        sigma[i] = mu.values[digits[i]];
        break;
      }
      digits[i] = 0;
      sigma[i] = mu.values[0];
    }
  }
  const double shift = *std::max_element(log_weight.begin(), log_weight.end());
  std::vector<double> weighted(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    log_weight[c] = std::exp(log_weight[c] - shift);
    weighted[c] = observable[c] * log_weight[c];
  }
  const double z = pairwise_sum(log_weight.data(), log_weight.size());
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw NumericError("partition function is not a positive finite number (Z = " + std::to_string(z) + ")");
  }
  return pairwise_sum(weighted.data(), weighted.size()) / z;
}

DominationResult domination_check(const Lattice& lattice, const CouplingSet& couplings, const AprioriMeasure& mu,
                                  const AprioriMeasure& nu, const std::vector<int>& b, double tol,
                                  const EnumerationLimits& limits) {
  DominationResult r;
  r.lhs = gibbs_expectation(lattice, couplings, mu, b, limits);
  r.rhs = gibbs_expectation(lattice, couplings, nu, b, limits);
  r.holds = r.lhs <= r.rhs + tol;
  return r;
}

nlohmann::ordered_json Instance::to_json() const {
  auto cs = nlohmann::ordered_json::array();
  for (const auto& t : couplings.terms()) cs.push_back({t.subset, t.j});
  return {{"sites", lattice.sites()}, {"couplings", cs}, {"B", b}};
}

Instance Instance::from_json(const nlohmann::json& j, std::size_t site_cap) {
  try {
    Instance inst{Lattice(j.at("sites").get<std::vector<int>>(), site_cap), CouplingSet(),
                  j.value("B", std::vector<int>{})};
    for (const auto& c : j.value("couplings", nlohmann::json::array())) {
      if (!c.is_array() || c.size() != 2) throw ConfigError("each coupling must be [subset, J]");
      const auto subset = c[0].get<std::vector<int>>();
      for (int s : subset) inst.lattice.position(s);
      inst.couplings.add(subset, c[1].get<double>());
    }
    for (int s : inst.b) inst.lattice.position(s);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed instance: ") + e.what());
  }
}

namespace {

// Explicit mappings keep instances identical across standard libraries.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t below(std::mt19937_64& rng, std::size_t bound) { return static_cast<std::size_t>(rng() % bound); }

std::vector<int> random_subset(std::mt19937_64& rng, std::size_t n, std::size_t size) {
  std::vector<int> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + below(rng, n - i)]);
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

Instance random_instance(std::uint64_t seed, std::size_t trial, std::size_t site_cap) {
  if (site_cap < 1) throw ConfigError("site cap must be >= 1");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  const std::size_t n = 1 + below(rng, site_cap);
  Instance inst{Lattice::range(n, site_cap), CouplingSet(), {}};
  const std::size_t n_terms = 1 + below(rng, 2 * n);
  for (std::size_t t = 0; t < n_terms; ++t) {
    const std::size_t size = 1 + below(rng, std::min<std::size_t>(3, n));
    auto subset = random_subset(rng, n, size);
    inst.couplings.add(std::move(subset), 2.0 * unit_double(rng));
  }
  inst.b = random_subset(rng, n, 1 + below(rng, n));
  return inst;
}

VerificationReport random_probe(const ProbeOptions& options, const AprioriMeasure& mu, const AprioriMeasure& nu) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.command = "probe";
  report.parameters["seed"] = options.seed;
  report.parameters["trials"] = options.trials;
  report.parameters["site_cap"] = options.site_cap;
  report.parameters["tol"] = options.tol;
  report.parameters["expect"] = options.expect == ProbeExpectation::domination ? "domination" : "violation";
  report.parameters["mu"] = mu.to_json();
  report.parameters["nu"] = nu.to_json();

  std::vector<DominationResult> results(options.trials);
  std::vector<Instance> instances;
  instances.reserve(options.trials);
  for (std::size_t t = 0; t < options.trials; ++t) instances.push_back(random_instance(options.seed, t, options.site_cap));
  parallel_for(options.trials, [&](std::size_t t) {
    const auto& inst = instances[t];
    results[t] = domination_check(inst.lattice, inst.couplings, mu, nu, inst.b, options.tol);
  });

  std::size_t passes = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  std::vector<nlohmann::ordered_json> violations;
  for (std::size_t t = 0; t < options.trials; ++t) {
    const auto& r = results[t];
    worst_gap = std::max(worst_gap, r.lhs - r.rhs);
    if (r.holds) {
      ++passes;
    } else {
      violations.push_back({{"trial", t}, {"instance", instances[t].to_json()}, {"lhs", r.lhs}, {"rhs", r.rhs}});
    }
  }
  report.details["passes"] = passes;
  report.details["violations"] = violations.size();
  if (options.trials > 0) report.details["max_lhs_minus_rhs"] = worst_gap;

  if (options.expect == ProbeExpectation::domination) {
    for (auto& v : violations) report.fail_with(std::move(v));
  } else if (violations.empty()) {
    report.status = Status::inconclusive;
  } else {
    report.status = Status::pass;
    report.witnesses = std::move(violations);
  }
  report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace wm::ising
