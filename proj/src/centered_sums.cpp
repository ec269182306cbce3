#include <chrono>

#include "wells_majorize/errors.hpp"
#include "wells_majorize/spin_sums.hpp"

namespace wm {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Rational max_abs_deviation(const PsiGrid& psi) {
  const Rational mean = psi.mean();
  Rational m;
  for (const auto& v : psi.values()) m = max(m, (v - mean).abs());
  return m;
}

nlohmann::ordered_json check_json(const InequalityCheck& c) {
  return {{"lhs", c.lhs.str()}, {"rhs", c.rhs.str()}, {"holds", c.holds}, {"tight", c.tight}};
}

// Karamata plus the exact identity sum Phi(psi - mean) = sum Phi(x) - sum Phi(y).
void finish_with_karamata(VerificationReport& report, const PsiGrid& psi, const ConstructionPair& pair,
                          const OddConvexFunction& phi) {
  const auto k = karamata_verify(pair.x, pair.y, phi);
  const Rational full = centered_sum(psi, phi);
  report.details["karamata_lhs"] = k.lhs.str();
  report.details["karamata_rhs"] = k.rhs.str();
  report.details["centered_sum"] = full.str();
  if (!k.holds) {
    report.fail_with({{"reason", "karamata inequality failed"}, {"lhs", k.lhs.str()}, {"rhs", k.rhs.str()}});
  }
  if (full != k.lhs - k.rhs) {
    report.fail_with({{"reason", "centered sum differs from sum Phi(x) - sum Phi(y)"},
                      {"centered_sum", full.str()},
                      {"difference", (k.lhs - k.rhs).str()}});
  }
  if (full.sign() < 0) report.fail_with({{"reason", "centered sum is negative"}, {"centered_sum", full.str()}});
}

VerificationReport start_report(const char* command, const PsiGrid& psi, const OddConvexFunction& phi) {
  VerificationReport report;
  report.command = command;
  report.parameters["n"] = psi.n();
  report.parameters["psi"] = to_json(psi.values());
  report.parameters["phi"] = phi.describe();
  return report;
}

bool phi_covers_grid(const PsiGrid& psi, const OddConvexFunction& phi) {
  return phi.in_domain(max_abs_deviation(psi));
}

}  // namespace

VerificationReport verify_half_odd_centered_sum(const PsiGrid& psi, const OddConvexFunction& phi) {
  const auto start = Clock::now();
  auto report = start_report("theorem-half-odd", psi, phi);
  if (psi.kind() != GridKind::half_odd) throw PreconditionError("verify_half_odd_centered_sum needs a half-odd grid");
  if (!phi_covers_grid(psi, phi)) {
    report.status = Status::hypothesis_not_met;
    report.details["reason"] = "Phi domain does not cover psi - mean";
    report.timing_ms = elapsed_ms(start);
    return report;
  }

  const auto pair = build_xy_half_odd(psi);
  report.details["mean"] = pair.mean.str();
  report.details["x"] = pair.x.to_strings();
  report.details["y"] = pair.y.to_strings();
  report.details["below_count"] = pair.below_count;
  report.details["q"] = pair.above_count;

  const auto crossing = single_crossing_majorizes(pair.x, pair.y);
  const bool direct = majorizes(pair.x, pair.y);
  report.details["single_crossing"] = crossing.applies;
  if (crossing.crossing_index) report.details["crossing_index"] = *crossing.crossing_index;
  report.details["majorizes"] = direct;

  if (crossing.applies && !direct) {
    report.fail_with({{"reason", "single-crossing criterion and direct partial sums disagree"},
                      {"x", pair.x.to_strings()},
                      {"y", pair.y.to_strings()}});
  }
  if (!crossing.applies && !(pair.x == pair.y)) {
    // Convex strictly increasing grids always cross once unless x == y.
    report.fail_with({{"reason", "x - y does not change sign exactly once"},
                      {"x", pair.x.to_strings()},
                      {"y", pair.y.to_strings()}});
  }
  report.details["route"] = crossing.applies ? "single_crossing" : "identical";

  if (direct) {
    finish_with_karamata(report, psi, pair, phi);
    Rational upper_sum;
    for (int j = 1; j <= psi.n(); ++j) upper_sum += phi(psi.at_index(j) - pair.mean);
    report.details["sum_without_first_sample"] = upper_sum.str();
    if (upper_sum.sign() < 0) {
      report.fail_with({{"reason", "sum over j = 1..N is negative"}, {"value", upper_sum.str()}});
    }
  } else {
    report.fail_with({{"reason", "x does not majorize y"}, {"x", pair.x.to_strings()}, {"y", pair.y.to_strings()}});
  }
  report.timing_ms = elapsed_ms(start);
  return report;
}

VerificationReport verify_integer_centered_sum(const PsiGrid& psi, const OddConvexFunction& phi) {
  const auto start = Clock::now();
  auto report = start_report("theorem-integer", psi, phi);
  if (psi.kind() != GridKind::integer) throw PreconditionError("verify_integer_centered_sum needs an integer grid");

  std::vector<std::string> unmet;
  if (psi.n() < 2) unmet.emplace_back("N >= 2");
  if (!phi_covers_grid(psi, phi)) unmet.emplace_back("Phi domain covers psi - mean");
  if (psi.n() >= 1) {
    const auto first = check_first_block(psi);
    report.details["first_block"] = check_json(first);
    if (!first.holds) unmet.emplace_back("2 psi(1) + psi(0) + 2 psi(1/N) >= 5 mean");
  }
  if (psi.n() % 2 == 1) {
    const auto mid = check_midpoint_below_mean(psi);
    report.details["midpoint"] = check_json(mid);
    if (!mid.holds) unmet.emplace_back("psi(1/2 + 1/(2N)) <= mean");
  }
  if (!unmet.empty()) {
    report.status = Status::hypothesis_not_met;
    report.details["unmet"] = unmet;
    report.timing_ms = elapsed_ms(start);
    return report;
  }

  const auto pair = build_xyw_integer(psi);
  if (pair.above_count >= pair.below_count) {
    throw InvariantError("side conditions hold but fewer samples sit at or below the mean than above it");
  }
  const auto& w = *pair.w;
  report.details["mean"] = pair.mean.str();
  report.details["x"] = pair.x.to_strings();
  report.details["y"] = pair.y.to_strings();
  report.details["w"] = w.to_strings();

  // First three prefix sums of w against y.
  const auto sw = prefix_sums(w.entries());
  const auto sy = prefix_sums(pair.y.entries());
  bool head_ok = true;
  for (std::size_t k = 0; k < 3 && k < sw.size(); ++k) head_ok = head_ok && sw[k] >= sy[k];
  report.details["head_block"] = {{"w", sw[std::min<std::size_t>(2, sw.size() - 1)].str()},
                                  {"y", sy[std::min<std::size_t>(2, sy.size() - 1)].str()},
                                  {"holds", head_ok}};

  // Remaining prefix sums: one sign change of w_j - y_j after position 3
  // keeps them between the third and the last, both >= 0.
  std::string route = "split_single_sign_change";
  if (w.size() > 3) {
    const auto tail = single_sign_change(w.entries().subspan(3), pair.y.entries().subspan(3));
    if (!tail.applies) route = "split_direct_prefix_sums";
  }
  const bool w_over_y = prefix_dominates(w, pair.y);
  const bool x_over_w = prefix_dominates(pair.x, w);
  const bool direct = majorizes(pair.x, pair.y);
  report.details["route"] = route;
  report.details["w_dominates_y"] = w_over_y;
  report.details["x_dominates_w"] = x_over_w;
  report.details["majorizes"] = direct;

  if (!head_ok || !w_over_y || !x_over_w) {
    report.fail_with({{"reason", "split partial-sum chain x > w > y failed"},
                      {"x", pair.x.to_strings()},
                      {"y", pair.y.to_strings()},
                      {"w", w.to_strings()}});
  }
  if ((w_over_y && x_over_w) != direct) {
    report.fail_with({{"reason", "split chain and direct majorization disagree"}, {"majorizes", direct}});
  }
  if (direct) {
    finish_with_karamata(report, psi, pair, phi);
  } else if (report.witnesses.empty()) {
    report.fail_with({{"reason", "x does not majorize y"}});
  }
  report.timing_ms = elapsed_ms(start);
  return report;
}

}  // namespace wm
