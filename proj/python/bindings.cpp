#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bikoeff/bounds.hpp"
#include "bikoeff/caratheodory.hpp"
#include "bikoeff/classes.hpp"
#include "bikoeff/cli.hpp"
#include "bikoeff/oracle.hpp"
#include "bikoeff/report.hpp"
#include "bikoeff/series.hpp"

namespace py = pybind11;
using namespace bikoeff;

namespace {

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

// Accepts int, fractions.Fraction or a string such as "1/3" or "0.25".
Rational from_python(const py::handle& h) {
  if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
  if (py::isinstance<py::float_>(h)) throw DomainError("pass exact values as int, Fraction or str, not float");
  py::object num = h.attr("numerator"), den = h.attr("denominator");
  Rational q{mpz_class(py::str(num).cast<std::string>()), mpz_class(py::str(den).cast<std::string>())};
  q.canonicalize();
  return q;
}

ClassSpec spec_of(const py::handle& h) {
  if (py::isinstance<ClassSpec>(h)) return h.cast<ClassSpec>();
  return parse_class_spec(h.cast<std::string>());
}

py::dict breakdown(const BoundBreakdown& b) {
  py::dict d;
  d["value"] = b.value;
  d["branch"] = to_string(b.branch);
  d["route"] = to_string(b.route);
  d["route_one"] = b.route_one ? py::cast(*b.route_one) : py::none();
  d["route_two"] = b.route_two ? py::cast(*b.route_two) : py::none();
  d["constants"] = b.constants;
  return d;
}

A5Variant variant_of(const std::string& s) {
  if (s == "stated") return A5Variant::Stated;
  if (s == "proof") return A5Variant::Proof;
  if (s == "rederived") return A5Variant::Rederived;
  throw DomainError("unknown a5 variant '" + s + "'");
}

py::dict report_dict(const OracleReport& r) {
  py::dict d;
  d["target"] = to_string(r.target);
  d["spec"] = to_text(r.spec);
  d["best_value"] = r.best_value;
  d["bound_value"] = r.bound_value;
  d["slack"] = r.slack;
  d["violated"] = r.violated;
  d["witness_p"] = r.witness_p;
  d["witness_q"] = r.witness_q;
  d["witness_a"] = r.witness_a;
  d["witness_index"] = r.witness_index;
  d["feasible_count"] = r.feasible_count;
  d["evaluations"] = r.evaluations;
  py::list variants;
  for (const auto& v : r.variants) {
    py::dict vd;
    vd["variant"] = to_string(v.variant);
    vd["bound"] = v.bound;
    vd["proven"] = v.proven;
    vd["violated"] = v.violated;
    variants.append(vd);
  }
  d["variants"] = variants;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coefficient bounds and numerical checks for bi-univalent function classes";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ZeroDivisionError);
  py::register_exception<SearchError>(m, "SearchError", PyExc_RuntimeError);

  py::class_<ClassSpec>(m, "ClassSpec")
      .def(py::init([](const std::string& text) { return parse_class_spec(text); }), py::arg("text"))
      .def_property_readonly("op", [](const ClassSpec& s) { return to_string(s.op); })
      .def_property_readonly("lam", [](const ClassSpec& s) { return to_fraction(s.lambda); })
      .def_property_readonly("family", [](const ClassSpec& s) { return to_string(s.generator.family); })
      .def_property_readonly("B",
                             [](const ClassSpec& s) {
                               py::list out;
                               for (const auto& b : s.generator.B) out.append(to_fraction(b));
                               return out;
                             })
      .def("text", [](const ClassSpec& s) { return to_text(s); })
      .def("__repr__", [](const ClassSpec& s) { return "ClassSpec('" + to_text(s) + "')"; });

  m.def(
      "bounds",
      [](const py::object& spec) {
        const BoundSet set = class_bounds(spec_of(spec));
        py::dict d;
        d["a2"] = breakdown(set.a2);
        d["a3"] = breakdown(set.a3);
        d["a4"] = breakdown(set.a4);
        return d;
      },
      py::arg("spec"), "Closed-form bounds for a2, a3, a4.");
  m.def(
      "st_rho_a5", [](double rho, const std::string& v) { return st_rho_a5(rho, variant_of(v)); }, py::arg("rho"),
      py::arg("variant") = "proof");
  m.def(
      "ss_beta_a5", [](double beta, const std::string& v) { return ss_beta_a5(beta, variant_of(v)); },
      py::arg("beta"), py::arg("variant") = "rederived");

  m.def(
      "revert",
      [](const std::vector<py::object>& coeffs) {
        std::vector<Rational> c;
        for (const auto& x : coeffs) c.push_back(from_python(x));
        const RationalSeries g = revert(RationalSeries(std::move(c)));
        py::list out;
        for (int n = 0; n <= g.order(); ++n) out.append(to_fraction(g[n]));
        return out;
      },
      py::arg("coeffs"), "Compositional inverse of c0 + c1 z + ... (c0 = 0, c1 != 0), exactly.");

  m.def(
      "generator_series",
      [](const py::object& spec) {
        py::list out;
        const RationalSeries s = spec_of(spec).generator.series();
        for (int n = 0; n <= s.order(); ++n) out.append(to_fraction(s[n]));
        return out;
      },
      py::arg("spec"));

  m.def(
      "solve_coefficients",
      [](const py::object& spec, const CaratheodoryTuple& p) {
        CoefficientSystem<Complex> sys(spec_of(spec), static_cast<int>(p.size()));
        return sys.solve(p);
      },
      py::arg("spec"), py::arg("p"), "a_2..a_{m+1} from p_1..p_m.");
  m.def(
      "implied_q",
      [](const py::object& spec, const std::vector<Complex>& a) {
        CoefficientSystem<Complex> sys(spec_of(spec), static_cast<int>(a.size()));
        return sys.implied_q(a);
      },
      py::arg("spec"), py::arg("a"));

  m.def("min_eigenvalue", [](const CaratheodoryTuple& p) { return min_eigenvalue(p); }, py::arg("p"));
  m.def(
      "is_admissible", [](const CaratheodoryTuple& p, double tol) { return is_admissible(p, tol); }, py::arg("p"),
      py::arg("tol") = 1e-9);
  m.def("boundary_scale", [](const CaratheodoryTuple& p) { return boundary_scale(p); }, py::arg("p"));
  m.def("sample", &sample, py::arg("seed"), py::arg("m"), py::arg("max_atoms") = 5, py::arg("restrict_real") = false);
  m.def(
      "fit_atoms",
      [](const CaratheodoryTuple& p, int max_atoms) {
        py::list out;
        for (const Atom& a : fit_atoms(p, max_atoms).atoms) out.append(py::make_tuple(a.angle, a.weight));
        return out;
      },
      py::arg("p"), py::arg("max_atoms") = 5, "[(angle, weight), ...] reproducing p.");

  m.def(
      "max_coeff",
      [](const py::object& spec, const std::string& target, std::uint64_t seed, int samples, int refine_steps,
         double tol_feasible, double tol_violation, bool restrict_real) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.samples = samples;
        cfg.local_refine_steps = refine_steps;
        cfg.tol_feasible = tol_feasible;
        cfg.tol_violation = tol_violation;
        cfg.restrict_real = restrict_real;
        const ClassSpec cs = spec_of(spec);
        const Target t = parse_target(target);
        OracleReport r;
        {
          py::gil_scoped_release release;
          r = max_coeff(cs, t, cfg);
        }
        return report_dict(r);
      },
      py::arg("spec"), py::arg("target"), py::arg("seed") = 0, py::arg("samples") = 10000,
      py::arg("refine_steps") = 12, py::arg("tol_feasible") = 1e-7, py::arg("tol_violation") = 1e-8,
      py::arg("restrict_real") = false);

  m.def(
      "bounds_json",
      [](const py::object& spec, const std::vector<std::string>& coeffs) {
        std::vector<Target> targets;
        for (const auto& c : coeffs) targets.push_back(parse_target(c));
        return to_json(bounds_document(spec_of(spec), targets));
      },
      py::arg("spec"), py::arg("coeffs") = std::vector<std::string>{"a2", "a3", "a4"});

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line; returns (exit_code, stdout, stderr).");
}
