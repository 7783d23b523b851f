#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "reachmod/commands.hpp"
#include "reachmod/errors.hpp"
#include "reachmod/geocontrol.hpp"
#include "reachmod/system_file.hpp"

namespace py = pybind11;
using namespace reachmod;

namespace {

using StringVectors = std::vector<std::vector<std::string>>;

StringVectors as_strings(const std::vector<ModuleElement>& gens) {
  StringVectors out;
  for (const auto& g : gens) {
    std::vector<std::string> row;
    for (const auto& p : g.entries()) row.push_back(to_string(p));
    out.push_back(std::move(row));
  }
  return out;
}

MonomialOrder order_from(const std::string& name) {
  auto order = parse_monomial_order(name);
  if (!order) throw std::invalid_argument("unknown monomial order '" + name + "'");
  return *order;
}

ReachOptions reach_options(const std::string& order, std::size_t pair_cap, std::size_t chain_cap) {
  ReachOptions options;
  options.engine.order = order_from(order);
  options.engine.pair_cap = pair_cap;
  options.chain_cap = chain_cap;
  return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Maximal reachability submodules via the kernel of [yE - A, -B]";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<RingMismatch>(m, "RingMismatch", PyExc_ValueError);
  py::register_exception<ResourceExhausted>(m, "ResourceExhausted", PyExc_RuntimeError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);

  py::class_<Ring, std::shared_ptr<Ring>>(m, "Ring")
      .def(py::init([](std::vector<std::string> variables, std::uint32_t characteristic,
                       const std::string& order) {
             return std::make_shared<Ring>(std::move(variables), characteristic, order_from(order));
           }),
           py::arg("variables") = std::vector<std::string>{}, py::arg("characteristic") = 0,
           py::arg("order") = "grevlex")
      .def_property_readonly("variables", &Ring::variables)
      .def_property_readonly("characteristic", &Ring::characteristic)
      .def("__repr__", &Ring::describe);

  py::class_<Polynomial>(m, "Polynomial")
      .def("__str__", [](const Polynomial& p) { return to_string(p); })
      .def("__repr__", [](const Polynomial& p) { return "Polynomial('" + to_string(p) + "')"; })
      .def("__add__", &poly_add)
      .def("__mul__", &poly_mul)
      .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
      .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
      .def("coefficients_in_y", [](const Polynomial& p) {
        std::vector<std::pair<unsigned, std::string>> out;
        for (const auto& [k, c] : coefficients_in_y(p)) out.emplace_back(k, to_string(c));
        return out;
      });

  m.def("parse_polynomial",
        [](const std::string& text, std::shared_ptr<Ring> ring) {
          return parse_polynomial(text, std::const_pointer_cast<const Ring>(ring));
        },
        py::arg("text"), py::arg("ring"));

  py::class_<SystemPair>(m, "SystemPair")
      .def_property_readonly("n", &SystemPair::n)
      .def_property_readonly("m", &SystemPair::m);

  py::class_<StateSubmodule>(m, "StateSubmodule")
      .def_property_readonly("ambient", &StateSubmodule::ambient)
      .def("generators", [](const StateSubmodule& u) { return as_strings(u.canonical_generators()); })
      .def("is_zero", &StateSubmodule::is_zero)
      .def("contains",
           [](const StateSubmodule& u, const std::vector<std::string>& entries) {
             std::vector<Polynomial> ps;
             for (const auto& e : entries) ps.push_back(parse_polynomial(e, u.ring()));
             return is_member(ModuleElement(u.ring(), std::move(ps)), u);
           })
      .def("__eq__", [](const StateSubmodule& a, const StateSubmodule& b) { return module_equal(a, b); });

  py::class_<SystemFile>(m, "SystemFile")
      .def_readonly("system", &SystemFile::system)
      .def_readonly("M", &SystemFile::m)
      .def_readonly("m_form", &SystemFile::m_form)
      .def_property_readonly("ring", [](const SystemFile& f) { return f.ring->describe(); });

  m.def("load_system",
        [](const std::filesystem::path& path, const std::string& order) {
          return parse_system_file(path, order_from(order));
        },
        py::arg("path"), py::arg("order") = "grevlex");
  m.def("parse_system",
        [](const std::string& text, const std::string& order) {
          return parse_system_text(text, order_from(order));
        },
        py::arg("text"), py::arg("order") = "grevlex");

  m.def("state_submodule",
        [](const SystemFile& file, const StringVectors& vectors) {
          std::vector<ModuleElement> gens;
          for (const auto& v : vectors) {
            std::vector<Polynomial> ps;
            for (const auto& e : v) ps.push_back(parse_polynomial(e, file.ring));
            gens.emplace_back(file.ring, std::move(ps));
          }
          return StateSubmodule(file.ring, file.system.n(), std::move(gens));
        },
        py::arg("file"), py::arg("vectors"),
        "Submodule of the state space of `file` spanned by vectors of polynomial strings.");

  m.def("max_reachability",
        [](const SystemPair& sys, const StateSubmodule& mod, const std::string& method,
           const std::string& order, std::size_t pair_cap, std::size_t chain_cap) {
          ReachOptions options = reach_options(order, pair_cap, chain_cap);
          if (method == "kernel") return max_reachability_kernel(sys, mod, options).module;
          if (method == "iterative") return max_reachability_iterative(sys, mod, options).module;
          throw std::invalid_argument("method must be 'kernel' or 'iterative'");
        },
        py::arg("system"), py::arg("M"), py::arg("method") = "kernel",
        py::arg("order") = "grevlex", py::arg("pair_cap") = 1'000'000, py::arg("chain_cap") = 64);

  m.def("pencil_kernel",
        [](const SystemPair& sys) { return as_strings(pencil_kernel(sys).generators()); });
  m.def("curly_m", [](const SystemPair& sys, const StateSubmodule& mod) {
    return as_strings(curly_M(sys, mod).generators());
  });
  m.def("is_ab_invariant", &is_AB_invariant);
  m.def("reachable_module", &reachable_module);
  m.def("module_equal", [](const StateSubmodule& a, const StateSubmodule& b) {
    return module_equal(a, b);
  });
  m.def("verify_certificate", [](const SystemPair& sys, const StateSubmodule& mod) {
    ReachabilityResult r = max_reachability_kernel(sys, mod);
    VerificationReport report = verify_reachability_certificate(sys, mod, r);
    py::dict out;
    out["passed"] = report.passed();
    py::list failures;
    for (const auto& e : report.failures()) failures.append(std::string(to_string(e.clause)));
    out["failures"] = failures;
    out["pieces"] = r.pieces.size();
    return out;
  });

  m.def("run_cli",
        [](const std::string& command, const std::string& path, const std::string& method,
           const std::string& order, bool structured, bool verify) {
          cli::RunOptions options;
          options.method = method == "iterative" ? cli::Method::Iterative : cli::Method::Kernel;
          options.order = order_from(order);
          options.structured = structured;
          options.verify = verify;
          std::ostringstream out, err;
          int code = cli::run(command, path, options, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("path"), py::arg("method") = "kernel",
        py::arg("order") = "grevlex", py::arg("structured") = false, py::arg("verify") = false);
}
