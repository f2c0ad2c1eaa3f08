// Python bindings. Polynomials cross the boundary as text plus a variable
// list; the Poly class is there for interactive use.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "badpoints/cert_io.hpp"
#include "badpoints/error.hpp"
#include "badpoints/paperbook.hpp"

namespace py = pybind11;
using namespace badpoints;

namespace {

std::vector<Poly> parse_all(const std::vector<std::string>& gens, const VarsPtr& v) {
  std::vector<Poly> out;
  for (const auto& g : gens) out.push_back(parse_poly(g, v));
  return out;
}

std::vector<std::string> format_all(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(format(p));
  return out;
}

std::vector<GaussRat> parse_point(const std::vector<std::string>& coords) {
  std::vector<GaussRat> out;
  for (const auto& c : coords) out.push_back(parse_gauss(c));
  return out;
}

Ideal ideal_of(const std::vector<std::string>& gens, const VarList& vars, unsigned power) {
  const VarsPtr v = make_vars(vars);
  Ideal i(v, parse_all(gens, v));
  return power <= 1 ? i : ideal_power(i, power);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact polynomial algebra, Groebner bases, truncated series and positivity certificates";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.kind() + ": " + e.what());
      inst.attr("kind") = e.kind();
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  py::class_<Poly>(m, "Poly")
      .def(py::init([](const std::string& text, const VarList& vars) { return parse_poly(text, make_vars(vars)); }),
           py::arg("text"), py::arg("vars"))
      .def_property_readonly("vars", [](const Poly& p) { return p.vars(); })
      .def_property_readonly("total_degree", [](const Poly& p) { return p.is_zero() ? 0 : p.total_degree(); })
      .def("is_zero", &Poly::is_zero)
      .def("derivative", [](const Poly& p, const std::string& var) { return derivative(p, var); })
      .def("evaluate",
           [](const Poly& p, const std::vector<std::string>& point) {
             const auto pt = parse_point(point);
             return to_string(evaluate(p, pt));
           })
      .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
      .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
      .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
      .def("__neg__", [](const Poly& a) { return -a; })
      .def("__pow__", [](const Poly& a, unsigned e) { return a.pow(e); })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__str__", [](const Poly& p) { return format(p); })
      .def("__repr__", [](const Poly& p) { return "Poly('" + format(p) + "')"; });

  m.def(
      "groebner",
      [](const std::vector<std::string>& gens, const VarList& vars, const std::string& order) {
        const VarsPtr v = make_vars(vars);
        return format_all(groebner(Ideal(v, parse_all(gens, v)), MonOrder::parse(order)).basis().basis);
      },
      py::arg("gens"), py::arg("vars"), py::arg("order") = "grevlex",
      "Reduced Groebner basis, sorted by leading monomial.");

  m.def(
      "member",
      [](const std::string& f, const std::vector<std::string>& gens, const VarList& vars, unsigned power) {
        const Ideal gb = groebner(ideal_of(gens, vars, power), MonOrder::grevlex());
        const MembershipWitness w = normal_form(parse_poly(f, gb.vars_ptr()), gb);
        py::dict out;
        out["member"] = w.is_member();
        out["remainder"] = format(w.remainder);
        out["cofactors"] = format_all(w.cofactors);
        out["basis"] = format_all(gb.basis().basis);
        return out;
      },
      py::arg("f"), py::arg("gens"), py::arg("vars"), py::arg("power") = 1);

  m.def(
      "member_localized",
      [](const std::string& f, const std::vector<std::string>& gens, const VarList& vars,
         const std::vector<std::string>& point, unsigned power) {
        const Ideal i = ideal_of(gens, vars, power);
        const auto pt = parse_point(point);
        return member_localized(parse_poly(f, i.vars_ptr()), i, pt).member;
      },
      py::arg("f"), py::arg("gens"), py::arg("vars"), py::arg("point"), py::arg("power") = 1);

  m.def(
      "dimension",
      [](const std::vector<std::string>& gens, const VarList& vars) {
        return dimension(groebner(ideal_of(gens, vars, 1), MonOrder::grevlex()));
      },
      py::arg("gens"), py::arg("vars"));

  m.def(
      "non_sos_obstruction",
      [](const std::string& p, const VarList& vars) -> py::object {
        const Poly poly = parse_poly(p, make_vars(vars));
        const auto obs = find_non_sos_obstruction(poly);
        if (!obs) return py::none();
        py::dict out;
        out["corner"] = format_monomial(obs->corner, poly.vars());
        out["coefficient"] = to_string(obs->coefficient);
        out["certificate"] = write_certificate(AnyCert(*obs));
        return std::move(out);
      },
      py::arg("poly"), py::arg("vars"), "Newton polytope obstruction to being a sum of squares, or None.");

  m.def(
      "verify_certificate",
      [](const std::string& text) {
        const CertOutcome o = verify_certificate(parse_certificate(text));
        return py::make_tuple(o.ok, o.lines);
      },
      py::arg("json_text"), "Returns (ok, detail lines).");

  m.def(
      "series_root",
      [](const std::string& s, const VarList& vars, std::uint64_t trunc, unsigned n) {
        return format(nth_root_unit(TruncSeries(parse_poly(s, make_vars(vars)).truncated(trunc), trunc), n).body());
      },
      py::arg("series"), py::arg("vars"), py::arg("trunc"), py::arg("n") = 2);

  m.def(
      "adic",
      [](const std::string& g, const VarList& vars, std::size_t r, std::uint64_t trunc) {
        const AdicResult res = adic_decompose(TruncSeries(parse_poly(g, make_vars(vars)).truncated(trunc), trunc), r);
        std::vector<std::string> a;
        for (const auto& s : res.a) a.push_back(format(s.body()));
        return py::make_tuple(a, format(res.b.body()));
      },
      py::arg("g"), py::arg("vars"), py::arg("r"), py::arg("trunc") = 12,
      "sum x_i^2 + g = sum (x_i + a_i)^2 + b through trunc; returns (a, b).");

  m.def(
      "reproduce",
      [](const std::vector<std::string>& claims, unsigned jobs, const std::string& data_dir, bool machine) {
        Report rep;
        {
          py::gil_scoped_release release;
          const auto dir = resolve_data_dir(data_dir);
          rep = run_claims(Catalog::load(dir), load_claims(dir), claims, jobs);
        }
        return py::make_tuple(rep.all_passed(), machine ? format_report_machine(rep) : format_report(rep));
      },
      py::arg("claims") = std::vector<std::string>{"all"}, py::arg("jobs") = 1, py::arg("data_dir") = "",
      py::arg("machine") = false, "Runs the claim suite; returns (all_passed, report).");

  m.def("default_data_dir", [] { return resolve_data_dir().string(); });
}
