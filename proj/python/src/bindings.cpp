#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wells_majorize/ising.hpp"
#include "wells_majorize/majorize.hpp"
#include "wells_majorize/spin_sums.hpp"
#include "wells_majorize/wells.hpp"

namespace py = pybind11;

namespace {

// Python values cross the boundary as fractions.Fraction; anything whose
// str() is a rational literal (int, Fraction, "p/q", decimal string) is
// accepted on input.
wm::Rational to_rational(const py::handle& h) { return wm::Rational::parse(py::str(h).cast<std::string>()); }

py::object to_fraction(const wm::Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.str());
}

wm::NonNegVector to_vector(const py::sequence& seq) {
  std::vector<wm::Rational> v;
  for (const auto& item : seq) v.push_back(to_rational(item));
  return wm::NonNegVector(std::move(v));
}

std::vector<wm::Rational> to_rationals(const py::sequence& seq) {
  std::vector<wm::Rational> v;
  for (const auto& item : seq) v.push_back(to_rational(item));
  return v;
}

py::list to_list(std::span<const wm::Rational> v) {
  py::list out;
  for (const auto& r : v) out.append(to_fraction(r));
  return out;
}

py::object to_dict(const wm::VerificationReport& report) {
  return py::module_::import("json").attr("loads")(report.to_json(true).dump());
}

wm::SpinValue to_spin(const py::handle& h) { return wm::SpinValue::from_rational(to_rational(h)); }

wm::DiscreteMeasure to_measure(const py::sequence& atoms) {
  std::vector<wm::Atom> out;
  for (const auto& a : atoms) {
    const auto pair = a.cast<py::sequence>();
    if (pair.size() != 2) throw wm::ConfigError("atoms are (value, weight) pairs");
    out.push_back({to_rational(pair[0]), to_rational(pair[1])});
  }
  return wm::DiscreteMeasure(std::move(out));
}

wm::ising::AprioriMeasure to_apriori(const py::sequence& atoms) {
  wm::ising::AprioriMeasure m;
  for (const auto& a : atoms) {
    const auto pair = a.cast<py::sequence>();
    m.values.push_back(to_rational(pair[0]).to_double());
    m.weights.push_back(to_rational(pair[1]).to_double());
  }
  return m;
}

wm::ising::CouplingSet to_couplings(const py::sequence& couplings) {
  wm::ising::CouplingSet cs;
  for (const auto& c : couplings) {
    const auto pair = c.cast<py::sequence>();
    cs.add(pair[0].cast<std::vector<int>>(), pair[1].cast<double>());
  }
  return cs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact majorization, spin-sum and Ising-domination verifiers";

  py::register_exception<wm::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<wm::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<wm::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<wm::ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<wm::InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  m.def("decreasing_rearrangement",
        [](const py::sequence& v) { return to_list(wm::decreasing_rearrangement(to_vector(v)).entries()); });
  m.def("partial_sums", [](const py::sequence& v) { return to_list(wm::partial_sums(to_vector(v))); });
  m.def("majorizes", [](const py::sequence& x, const py::sequence& y) {
    return wm::majorizes(to_vector(x), to_vector(y));
  });
  m.def("single_crossing_majorizes", [](const py::sequence& x, const py::sequence& y) {
    const auto r = wm::single_crossing_majorizes(to_vector(x), to_vector(y));
    return py::make_tuple(r.applies, r.crossing_index ? py::cast(*r.crossing_index) : py::none());
  });

  m.def("spin_sum", [](const py::object& s, unsigned mm) { return to_fraction(wm::spin_sum(to_spin(s), mm)); },
        py::arg("s"), py::arg("m"));
  m.def("verify_conjecture",
        [](const py::object& s_max, unsigned m_max) { return to_dict(wm::verify_conjecture(to_spin(s_max), m_max)); },
        py::arg("s_max"), py::arg("m_max"));
  m.def("build_xyw_integer", [](const py::sequence& half) {
    const auto pair = wm::build_xyw_integer(wm::PsiGrid::integer_even(to_rationals(half)));
    py::dict d;
    d["x"] = to_list(pair.x.entries());
    d["y"] = to_list(pair.y.entries());
    d["w"] = to_list(pair.w->entries());
    d["mean"] = to_fraction(pair.mean);
    return d;
  });
  m.def(
      "verify_half_odd_centered_sum",
      [](const py::sequence& values, unsigned phi_power) {
        if (phi_power % 2 == 0) throw wm::DomainError("phi_power must be odd");
        return to_dict(wm::verify_half_odd_centered_sum(wm::PsiGrid::half_odd(to_rationals(values)),
                                                        wm::OddConvexFunction::odd_power((phi_power - 1) / 2)));
      },
      py::arg("psi"), py::arg("phi_power"));
  m.def(
      "verify_integer_centered_sum",
      [](const py::sequence& half, unsigned phi_power) {
        if (phi_power % 2 == 0) throw wm::DomainError("phi_power must be odd");
        return to_dict(wm::verify_integer_centered_sum(wm::PsiGrid::integer_even(to_rationals(half)),
                                                       wm::OddConvexFunction::odd_power((phi_power - 1) / 2)));
      },
      py::arg("psi_nonneg_half"), py::arg("phi_power"));

  m.def("a_s", [](const py::object& s) { return to_fraction(wm::a_s(to_spin(s))); });
  m.def("tc_bounds", [](const py::object& s) {
    const auto b = wm::tc_bounds(to_spin(s));
    py::dict d;
    d["griffiths"] = to_fraction(b.griffiths);
    d["msw"] = to_fraction(b.msw);
    d["improvement"] = to_fraction(b.improvement);
    return d;
  });
  m.def("t_minus_mu_lambda", [](const py::object& l) { return to_fraction(wm::t_minus_mu_lambda(to_rational(l))); });
  m.def("wells_term", [](const py::sequence& atoms, const py::object& s_sq, unsigned n) {
    return to_fraction(wm::wells_term(to_measure(atoms), to_rational(s_sq), n));
  });
  m.def(
      "t_minus_upper",
      [](const py::sequence& atoms, unsigned n_max, const py::object& tol) {
        const auto r = wm::t_minus_upper(to_measure(atoms), n_max, to_rational(tol));
        py::dict d;
        d["lo"] = to_fraction(r.lo);
        d["hi"] = to_fraction(r.hi);
        d["status"] = wm::to_string(r.status);
        d["n_max_checked"] = r.n_max_checked;
        return d;
      },
      py::arg("atoms"), py::arg("n_max") = wm::kDefaultNMax, py::arg("tol") = "1/1000000");
  m.def("sphere_moment", [](int d, unsigned k) { return to_fraction(wm::sphere_moment(d, k)); });

  m.def(
      "gibbs_expectation",
      [](const std::vector<int>& sites, const py::sequence& couplings, const py::sequence& atoms,
         const std::vector<int>& b) {
        return wm::ising::gibbs_expectation(wm::ising::Lattice(sites), to_couplings(couplings), to_apriori(atoms), b);
      },
      py::arg("sites"), py::arg("couplings"), py::arg("atoms"), py::arg("B"));
  m.def(
      "random_probe_canonical",
      [](const py::object& s, std::uint64_t seed, std::size_t trials, std::size_t site_cap) {
        const auto spin = to_spin(s);
        wm::ising::ProbeOptions o;
        o.seed = seed;
        o.trials = trials;
        o.site_cap = site_cap;
        return to_dict(wm::ising::random_probe(o, wm::ising::AprioriMeasure::bernoulli_from_square(wm::a_s(spin)),
                                               wm::ising::AprioriMeasure::from_exact(wm::spin_measure(spin))));
      },
      py::arg("s"), py::arg("seed"), py::arg("trials"), py::arg("site_cap") = 4);
}
