#include "cli_app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "wells_majorize/errors.hpp"
#include "wells_majorize/ising.hpp"
#include "wells_majorize/majorize.hpp"
#include "wells_majorize/spin_sums.hpp"
#include "wells_majorize/wells.hpp"

namespace wm::cli {

namespace {

using nlohmann::ordered_json;

struct OutputOptions {
  std::string format = "text";
  bool no_timing = false;
};

struct MeasureSpec {
  std::optional<DiscreteMeasure> exact;
  ising::AprioriMeasure apriori;
  /// Closed-form T_-^2 when the family has one.
  std::optional<Rational> closed_t_minus_sq;
  std::string label;
};

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
}

MeasureSpec exact_spec(DiscreteMeasure mu, std::optional<Rational> closed, std::string label) {
  auto apriori = ising::AprioriMeasure::from_exact(mu);
  return {std::move(mu), std::move(apriori), std::move(closed), std::move(label)};
}

// preset:spin:<S> | preset:mu-lambda:<l> | preset:bernoulli:<T> | preset:bernoulli-sq:<T^2> | <file.json>
MeasureSpec parse_measure(const std::string& text) {
  const std::string prefix = "preset:";
  if (text.rfind(prefix, 0) != 0) {
    return exact_spec(DiscreteMeasure::from_json(read_json_file(text)), std::nullopt, text);
  }
  const std::string rest = text.substr(prefix.size());
  const auto colon = rest.find(':');
  if (colon == std::string::npos) throw ConfigError("measure preset needs a parameter: " + text);
  const std::string name = rest.substr(0, colon);
  const std::string arg = rest.substr(colon + 1);
  if (name == "spin") {
    const auto s = SpinValue::parse(arg);
    const Rational closed = s.twice_s() == 2 ? Rational(1, 2) : a_s(s);
    return exact_spec(spin_measure(s), closed, text);
  }
  if (name == "mu-lambda") {
    const Rational lambda = Rational::parse(arg);
    return exact_spec(mu_lambda(lambda), t_minus_mu_lambda(lambda), text);
  }
  if (name == "bernoulli") {
    const Rational t = Rational::parse(arg);
    return exact_spec(bernoulli_measure(t), t * t, text);
  }
  if (name == "bernoulli-sq") {
    const Rational t_sq = Rational::parse(arg);
    return {std::nullopt, ising::AprioriMeasure::bernoulli_from_square(t_sq), t_sq, text};
  }
  throw ConfigError("unknown measure preset: " + name);
}

void emit(const VerificationReport& report, const OutputOptions& o, std::ostream& out) {
  if (o.format == "json") {
    out << report.to_json(!o.no_timing).dump(2) << '\n';
  } else if (o.format == "csv") {
    out << report.to_csv();
  } else {
    out << report.to_text();
    if (!o.no_timing) out << "  timing_ms: " << report.timing_ms << '\n';
  }
}

VerificationReport cmd_majorize(const std::string& xs, const std::string& ys) {
  const auto start = std::chrono::steady_clock::now();
  const auto x = NonNegVector::parse(xs);
  const auto y = NonNegVector::parse(ys);
  VerificationReport r;
  r.command = "majorize";
  r.parameters["x"] = x.to_strings();
  r.parameters["y"] = y.to_strings();
  const auto px = partial_sums(x);
  const auto py = partial_sums(y);
  r.details["x_sorted"] = decreasing_rearrangement(x).to_strings();
  r.details["y_sorted"] = decreasing_rearrangement(y).to_strings();
  r.details["partial_sums_x"] = to_json(px);
  r.details["partial_sums_y"] = to_json(py);
  const bool m = majorizes(x, y);
  r.details["majorizes"] = m;
  if (x.sum() == y.sum()) {
    const auto sc = single_crossing_majorizes(x, y);
    r.details["single_crossing"] = sc.applies;
    if (sc.crossing_index) r.details["crossing_index"] = *sc.crossing_index;
  } else {
    r.details["single_crossing"] = "totals differ";
  }
  if (!m) {
    if (px.back() != py.back()) {
      r.fail_with({{"reason", "totals differ"}, {"sum_x", px.back().str()}, {"sum_y", py.back().str()}});
    } else {
      for (std::size_t k = 0; k < px.size(); ++k) {
        if (px[k] < py[k]) {
          r.fail_with({{"k", k + 1}, {"S_k(x)", px[k].str()}, {"S_k(y)", py[k].str()}});
          break;
        }
      }
    }
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationReport cmd_t_minus(const std::string& measure_text, unsigned n_max, const std::string& tol_text) {
  const auto start = std::chrono::steady_clock::now();
  const auto spec = parse_measure(measure_text);
  if (!spec.exact) throw ConfigError("t-minus needs an exact measure (bernoulli-sq is only for probes)");
  const Rational tol = Rational::parse(tol_text);
  const auto result = t_minus_upper(*spec.exact, n_max, tol);
  VerificationReport r;
  r.command = "t-minus";
  r.parameters["measure"] = spec.label;
  r.parameters["atoms"] = spec.exact->to_json()["atoms"];
  r.parameters["n_max"] = n_max;
  r.parameters["tol"] = tol.str();
  r.details["lo"] = result.lo.str();
  r.details["hi"] = result.hi.str();
  r.details["lo_squared"] = result.lo_squared().str();
  r.details["hi_squared"] = result.hi_squared().str();
  r.details["lo_approx"] = result.lo.to_double();
  r.details["hi_approx"] = result.hi.to_double();
  r.details["status"] = to_string(result.status);
  r.details["n_max_checked"] = result.n_max_checked;
  const Rational second = spec.exact->second_moment();
  r.details["second_moment"] = second.str();
  r.details["canonical_up_to_n_max"] = passes_up_to(*spec.exact, second, n_max);
  if (spec.closed_t_minus_sq) {
    const Rational& c = *spec.closed_t_minus_sq;
    r.details["closed_form_t_minus_sq"] = c.str();
    r.details["closed_form_canonical"] = c == second;
    const bool brackets = result.lo_squared() <= c && c <= result.hi_squared();
    r.details["brackets_closed_form"] = brackets;
    r.details["hi_squared_minus_closed_form"] = (result.hi_squared() - c).to_double();
    // The truncated threshold can only sit above the true one.
    if (c > result.hi_squared()) {
      r.fail_with({{"reason", "closed-form threshold exceeds the truncated upper bound"},
                   {"closed_form_t_minus_sq", c.str()},
                   {"hi_squared", result.hi_squared().str()}});
    }
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

VerificationReport cmd_tc_bounds(const std::string& s_text) {
  const auto s = SpinValue::parse(s_text);
  const auto b = tc_bounds(s);
  VerificationReport r;
  r.command = "tc-bounds";
  r.parameters["S"] = s.str();
  r.details["griffiths"] = b.griffiths.str();
  r.details["msw"] = b.msw.str();
  r.details["improvement"] = b.improvement.str();
  if (!(b.improvement > Rational(4, 3))) {
    r.fail_with({{"reason", "improvement ratio not above 4/3"}, {"improvement", b.improvement.str()}});
  }
  return r;
}

VerificationReport cmd_theorem(const std::string& which, const std::string& psi_name, int n, unsigned phi_power) {
  if (phi_power % 2 == 0) throw ConfigError("--phi-power must be odd (2m+1)");
  const auto phi = OddConvexFunction::odd_power((phi_power - 1) / 2);
  if (which == "4.4" || which == "half-odd") {
    auto r = verify_half_odd_centered_sum(psi_preset(psi_name, GridKind::half_odd, n), phi);
    r.parameters["psi_preset"] = psi_name;
    return r;
  }
  if (which == "4.9" || which == "integer") {
    auto r = verify_integer_centered_sum(psi_preset(psi_name, GridKind::integer, n), phi);
    r.parameters["psi_preset"] = psi_name;
    return r;
  }
  throw ConfigError("theorem must be half-odd (4.4) or integer (4.9), got " + which);
}

VerificationReport cmd_gibbs(const std::string& instance_path, const std::string& mu_text, const std::string& nu_text,
                             double tol) {
  const auto start = std::chrono::steady_clock::now();
  const auto inst = ising::Instance::from_json(read_json_file(instance_path));
  const auto mu = parse_measure(mu_text);
  VerificationReport r;
  r.command = "gibbs";
  r.parameters["instance"] = inst.to_json();
  r.parameters["mu"] = mu_text;
  if (nu_text.empty()) {
    r.details["expectation"] = ising::gibbs_expectation(inst.lattice, inst.couplings, mu.apriori, inst.b);
  } else {
    const auto nu = parse_measure(nu_text);
    r.parameters["nu"] = nu_text;
    r.parameters["tol"] = tol;
    const auto d = ising::domination_check(inst.lattice, inst.couplings, mu.apriori, nu.apriori, inst.b, tol);
    r.details["lhs"] = d.lhs;
    r.details["rhs"] = d.rhs;
    r.details["holds"] = d.holds;
    if (!d.holds) r.fail_with({{"lhs", d.lhs}, {"rhs", d.rhs}});
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of majorization-based spin-sum inequalities and Ising domination"};
  app.require_subcommand(1);
  OutputOptions output;
  auto add_output = [&output](CLI::App* sub) {
    sub->add_option("--format", output.format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    sub->add_flag("--no-timing", output.no_timing, "Omit timing for byte-stable output");
  };

  std::function<VerificationReport()> action;

  auto* conj = app.add_subcommand("verify-conjecture", "Signs of the centered spin sums over an (S, m) grid");
  std::string s_max = "20";
  unsigned m_max = 10;
  conj->add_option("--s-max", s_max, "Largest spin (multiple of 1/2)")->capture_default_str();
  conj->add_option("--m-max", m_max, "Largest m (odd power 2m+1)")->capture_default_str();
  add_output(conj);
  conj->callback([&] { action = [&] { return verify_conjecture(SpinValue::parse(s_max), m_max); }; });

  auto* tminus = app.add_subcommand("t-minus", "Truncated moment threshold T_- of an even measure");
  std::string measure;
  unsigned n_max = kDefaultNMax;
  std::string tol = "1e-6";
  tminus->add_option("--measure", measure, "preset:spin:<S> | preset:mu-lambda:<l> | preset:bernoulli:<T> | file")
      ->required();
  tminus->add_option("--n-max", n_max, "Highest moment order checked")->capture_default_str();
  tminus->add_option("--tol", tol, "Bisection width on T")->capture_default_str();
  add_output(tminus);
  tminus->callback([&] { action = [&] { return cmd_t_minus(measure, n_max, tol); }; });

  auto* maj = app.add_subcommand("majorize", "Decide x > y for comma separated rational vectors");
  std::string xs;
  std::string ys;
  maj->add_option("--x", xs, "e.g. 22,22,11,11,2,2,0")->required();
  maj->add_option("--y", ys, "e.g. 14,13,13,10,10,5,5")->required();
  add_output(maj);
  maj->callback([&] { action = [&] { return cmd_majorize(xs, ys); }; });

  auto* probe = app.add_subcommand("probe", "Random finite-volume test of <sigma^B>_mu <= <sigma^B>_nu");
  ising::ProbeOptions popts;
  std::string pair;
  std::string mu_text;
  std::string nu_text;
  std::string expect = "domination";
  double probe_tol = ising::kDefaultTolerance;
  probe->add_option("--seed", popts.seed, "Random seed")->capture_default_str();
  probe->add_option("--trials", popts.trials, "Number of random instances")->capture_default_str();
  probe->add_option("--site-cap", popts.site_cap, "Largest lattice size")->capture_default_str()->check(CLI::Range(1, 6));
  probe->add_option("--pair", pair, "canonical:<S> = (b_T with T^2 = a_S, spin S)");
  probe->add_option("--mu", mu_text, "Dominated measure spec");
  probe->add_option("--nu", nu_text, "Dominating measure spec");
  probe->add_option("--tol", probe_tol, "Slack on the inequality")->capture_default_str();
  probe->add_option("--expect", expect, "domination | violation")
      ->check(CLI::IsMember({"domination", "violation"}))
      ->capture_default_str();
  add_output(probe);
  probe->callback([&] {
    action = [&] {
      popts.tol = probe_tol;
      popts.expect = expect == "violation" ? ising::ProbeExpectation::violation : ising::ProbeExpectation::domination;
      ising::AprioriMeasure mu;
      ising::AprioriMeasure nu;
      if (!pair.empty()) {
        if (pair.rfind("canonical:", 0) != 0) throw ConfigError("--pair must be canonical:<S>");
        const auto s = SpinValue::parse(pair.substr(10));
        mu = ising::AprioriMeasure::bernoulli_from_square(a_s(s));
        nu = ising::AprioriMeasure::from_exact(spin_measure(s));
      } else if (!mu_text.empty() && !nu_text.empty()) {
        mu = parse_measure(mu_text).apriori;
        nu = parse_measure(nu_text).apriori;
      } else {
        throw ConfigError("probe needs --pair or both --mu and --nu");
      }
      auto report = ising::random_probe(popts, mu, nu);
      if (!pair.empty()) report.parameters["pair"] = pair;
      return report;
    };
  });

  auto* tc = app.add_subcommand("tc-bounds", "Griffiths and moment-criterion bounds on T_c(S)/T_c(1/2)");
  std::string s_text;
  tc->add_option("--s", s_text, "Spin S >= 1")->required();
  add_output(tc);
  tc->callback([&] { action = [&] { return cmd_tc_bounds(s_text); }; });

  auto* thm = app.add_subcommand("theorem", "Centered odd-power sum over a convex grid via majorization");
  std::string which;
  std::string psi_name = "square";
  int grid_n = 0;
  unsigned phi_power = 3;
  thm->add_option("which", which, "half-odd (alias 4.4) | integer (alias 4.9)")->required();
  thm->add_option("--psi", psi_name, "square | affine | abs | cube | power:<k>")->capture_default_str();
  thm->add_option("--n", grid_n, "Grid size N")->required();
  thm->add_option("--phi-power", phi_power, "Odd exponent 2m+1")->capture_default_str();
  add_output(thm);
  thm->callback([&] { action = [&] { return cmd_theorem(which, psi_name, grid_n, phi_power); }; });

  auto* gibbs = app.add_subcommand("gibbs", "Exact Gibbs expectation <sigma^B> for a JSON instance");
  std::string instance;
  std::string gmu;
  std::string gnu;
  double gtol = ising::kDefaultTolerance;
  gibbs->add_option("--instance", instance, "Instance JSON file")->required();
  gibbs->add_option("--measure", gmu, "Apriori measure spec")->required();
  gibbs->add_option("--nu", gnu, "Second measure: check <.>_measure <= <.>_nu");
  gibbs->add_option("--tol", gtol, "Slack on the inequality (with --nu)")->capture_default_str();
  add_output(gibbs);
  gibbs->callback([&] { action = [&] { return cmd_gibbs(instance, gmu, gnu, gtol); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    const auto report = action();
    emit(report, output, out);
    return exit_code(report.status);
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wm::cli
