#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcrw/dsl.hpp"
#include "qcrw/errors.hpp"
#include "qcrw/euler.hpp"
#include "qcrw/normalform.hpp"
#include "qcrw/rewrite.hpp"
#include "qcrw/semantics.hpp"
#include "qcrw/transcode.hpp"

namespace py = pybind11;
using namespace qcrw;

namespace {

LayeredCircuit as_layered(const py::object& c) {
  if (py::isinstance<py::str>(c)) return parse_layered(c.cast<std::string>());
  return c.cast<LayeredCircuit>();
}

}  // namespace

PYBIND11_MODULE(qcrw, m) {
  m.doc() = "Quantum and linear-optical circuit rewriting";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<SyntaxError>(m, "SyntaxError", base.ptr());
  py::register_exception<SoundnessViolation>(m, "SoundnessViolation", base.ptr());
  py::register_exception<DimensionCap>(m, "DimensionCap", base.ptr());
  py::register_exception<FlavorMismatch>(m, "FlavorMismatch", base.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<NotUnitary>(m, "NotUnitary", base.ptr());
  py::register_exception<NotPowerOfTwoModes>(m, "NotPowerOfTwoModes", base.ptr());
  py::register_exception<UnknownRule>(m, "UnknownRule", base.ptr());

  py::class_<LayeredCircuit>(m, "Circuit")
      .def(py::init([](const std::string& text) { return parse_layered(text); }), py::arg("text"))
      .def_property_readonly("flavor", [](const LayeredCircuit& c) { return std::string(flavor_name(c.flavor)); })
      .def_property_readonly("wires", [](const LayeredCircuit& c) { return c.wires; })
      .def_property_readonly("depth", [](const LayeredCircuit& c) { return c.layers.size(); })
      .def_property_readonly("gate_count", &LayeredCircuit::gate_count)
      .def_property_readonly("scalars", [](const LayeredCircuit& c) { return c.scalars; })
      .def("semantics", [](const LayeredCircuit& c) { return semantics(c); })
      .def("print", [](const LayeredCircuit& c, int digits) { return print(c, digits); }, py::arg("digits") = 17)
      .def("__str__", [](const LayeredCircuit& c) { return print(c); })
      .def("__repr__", [](const LayeredCircuit& c) { return "Circuit(" + py::repr(py::str(print(c))).cast<std::string>() + ")"; })
      .def("__eq__", [](const LayeredCircuit& a, const LayeredCircuit& b) { return a == b; });

  m.def("parse", [](const std::string& text) { return parse_layered(text); }, py::arg("text"));
  m.def("print", [](const py::object& c, int digits) { return print(as_layered(c), digits); }, py::arg("circuit"),
        py::arg("digits") = 17);
  m.def("qc_sem", [](const py::object& c) { return qc_sem(as_layered(c)); }, py::arg("circuit"));
  m.def("lopp_sem", [](const py::object& c) { return lopp_sem(as_layered(c)); }, py::arg("circuit"));
  m.def("gray", &gray, py::arg("n"), py::arg("k"));
  m.def("gray_matrix", &gray_matrix, py::arg("n"));

  m.def("encode", [](const py::object& c) { return layer(encode(as_layered(c))); }, py::arg("circuit"));
  m.def(
      "decode",
      [](const py::object& c, std::optional<int> n, bool expand) {
        LayeredCircuit l = as_layered(c);
        return layer(decode(l, n ? *n : qubits_for_modes(l.wires), expand));
      },
      py::arg("circuit"), py::arg("qubits") = py::none(), py::arg("expand") = true);
  m.def("target_index", &target_index, py::arg("k"), py::arg("n"));

  m.def(
      "euler_1q",
      [](const Unitary& u) {
        Euler1Q e = euler_1q(u);
        return std::vector<double>{e.b0, e.b1, e.b2, e.b3};
      },
      py::arg("u"), "[β0, β1, β2, β3] of a 2x2 unitary");
  m.def(
      "euler_3x3", [](const Unitary& u) { return euler_3x3(u).d; }, py::arg("u"), "[δ1, ..., δ9] of a 3x3 unitary");

  m.def(
      "check_equiv",
      [](const py::object& a, const py::object& b, double eps, int pprs, long budget) {
        EquivOptions opt;
        opt.eps = eps;
        opt.pprs = pprs;
        opt.budget = budget;
        EquivVerdict v = check_equiv(as_layered(a), as_layered(b), opt);
        py::dict d;
        d["equal"] = v.equal;
        d["max_deviation"] = v.max_deviation;
        d["canonical_checked"] = v.canonical_checked;
        d["canonical_identical"] = v.canonical_identical;
        d["pprs_checked"] = v.pprs_checked;
        d["pprs_normalized"] = v.pprs_normalized;
        d["pprs_agree"] = v.pprs_agree;
        d["pprs_identical"] = v.pprs_identical;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("eps") = 1e-9, py::arg("pprs") = -1, py::arg("budget") = -1,
      "pprs: -1 automatic, 0 off, 1 on");

  m.def(
      "pprs_normalize",
      [](const py::object& c, long budget) {
        NormalFormReport r = pprs_normalize(as_layered(c), budget);
        py::dict d;
        d["normal"] = r.normal;
        d["steps"] = r.steps;
        d["budget"] = r.budget;
        d["status"] = std::string(status_name(r.status));
        d["rule_counts"] = r.rule_counts;
        return d;
      },
      py::arg("circuit"), py::arg("budget") = -1);
  m.def(
      "synthesize_canonical", [](const Unitary& u) { return layer(synthesize_canonical(u)); }, py::arg("u"));

  m.def(
      "verify_soundness",
      [](const std::string& rule, int trials, std::uint64_t seed, double eps) {
        return verify_soundness(find_rule(rule), trials, seed, eps).max_deviation;
      },
      py::arg("rule"), py::arg("trials") = 100, py::arg("seed") = 7, py::arg("eps") = 1e-9,
      "maximum deviation; raises SoundnessViolation above eps");
  m.def(
      "rule_names",
      [](const std::string& flavor) {
        std::vector<std::string> out;
        for (const RewriteRule& r : catalog(flavor == "lopp" ? Flavor::LOPP : Flavor::QC)) out.push_back(r.name);
        return out;
      },
      py::arg("flavor") = "qc");
  m.def(
      "random_walk",
      [](const py::object& c, int steps, std::uint64_t seed) {
        auto [end, d] = random_walk(as_layered(c), steps, seed);
        return py::make_tuple(end, derivation_to_jsonl(d));
      },
      py::arg("circuit"), py::arg("steps") = 10, py::arg("seed") = 7, "(end circuit, JSONL trace)");
  m.def(
      "replay",
      [](const py::object& c, const std::string& trace) { return replay(as_layered(c), steps_from_jsonl(trace)); },
      py::arg("circuit"), py::arg("trace"));
}
