#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "qpilot/bench.hpp"
#include "qpilot/compile.hpp"
#include "qpilot/error.hpp"
#include "qpilot/metrics.hpp"
#include "qpilot/qaoa_router.hpp"
#include "qpilot/statevector.hpp"

namespace py = pybind11;
using namespace qpilot;
using nlohmann::json;

namespace {

// Dicts cross the boundary as JSON text; the Python side decodes them.
FpqaConfig config_or_default(const std::string& cfg, std::size_t n, std::size_t width) {
  return cfg.empty() ? FpqaConfig::for_qubits(n, width) : json::parse(cfg).get<FpqaConfig>();
}

std::string compile_problem(const Problem& p, const std::string& cfg, std::size_t width,
                            double gamma) {
  return json(compile(p, config_or_default(cfg, problem_qubits(p), width), gamma)).dump();
}

Schedule schedule_of(const std::string& text) { return json::parse(text).get<Schedule>(); }

NoiseParams noise_of(double f1, double f2, double t2, double t0) {
  NoiseParams p{f1, f2, t2, t0};
  p.check();
  return p;
}

} // namespace

PYBIND11_MODULE(_qpilot, m) {
  m.doc() = "Flying-ancilla FPQA compiler";

  py::register_exception<Error>(m, "QpilotError");

  m.def("config_for_qubits",
        [](std::size_t n, std::size_t width) { return json(FpqaConfig::for_qubits(n, width)).dump(); },
        py::arg("n"), py::arg("width") = 0);

  m.def("compile_qasm",
        [](const std::string& text, const std::string& cfg, std::size_t width) {
          return compile_problem(parse_qasm(text), cfg, width, 0.1);
        },
        py::arg("text"), py::arg("config") = "", py::arg("width") = 0);

  m.def("compile_pauli",
        [](const std::string& text, double angle, const std::string& cfg, std::size_t width) {
          return compile_problem(parse_pauli_file(text, angle), cfg, width, angle);
        },
        py::arg("text"), py::arg("angle") = 0.1, py::arg("config") = "", py::arg("width") = 0);

  m.def("compile_edges",
        [](std::size_t n, const std::vector<std::pair<Qubit, Qubit>>& edges, double gamma,
           const std::string& cfg, std::size_t width) {
          EdgeSet g(n);
          for (const auto& [u, v] : edges) {
            g.add(u, v);
          }
          return compile_problem(g, cfg, width, gamma);
        },
        py::arg("n"), py::arg("edges"), py::arg("gamma") = 0.1, py::arg("config") = "",
        py::arg("width") = 0);

  m.def("validate",
        [](const std::string& schedule) {
          std::vector<std::string> out;
          for (const Violation& v : validate(schedule_of(schedule))) {
            out.push_back(std::string(to_string(v.kind)) + " at stage " + std::to_string(v.stage) +
                          ": " + v.detail);
          }
          return out;
        },
        py::arg("schedule"));

  m.def("evaluate", [](const std::string& schedule) { return json(evaluate(schedule_of(schedule))).dump(); },
        py::arg("schedule"));

  m.def("error_rate",
        [](const std::string& metrics, double f1, double f2, double t2, double t0, bool gate_count) {
          return error_rate(json::parse(metrics).get<Metrics>(), noise_of(f1, f2, t2, t0),
                            gate_count ? ExponentMode::GateCount : ExponentMode::Literal);
        },
        py::arg("metrics"), py::arg("f1") = 0.999, py::arg("f2") = 0.999, py::arg("t2") = 1.5,
        py::arg("t0") = 300e-6, py::arg("gate_count") = false);

  m.def("equivalence_qasm",
        [](const std::string& qasm, const std::string& schedule, std::size_t n_random) {
          return equivalence(parse_qasm(qasm), schedule_of(schedule), n_random);
        },
        py::arg("qasm"), py::arg("schedule"), py::arg("n_random") = 20);

  m.def("movement_csv", [](const std::string& schedule) { return movement_csv(schedule_of(schedule)); },
        py::arg("schedule"));

  m.def("random_circuit_qasm",
        [](std::size_t n, std::size_t cnots, std::uint64_t seed) {
          return to_qasm(random_circuit(n, cnots, seed));
        },
        py::arg("n"), py::arg("cnots"), py::arg("seed"));

  m.def("random_regular_edges",
        [](std::size_t n, std::size_t k, std::uint64_t seed) {
          return random_regular_graph(n, k, seed).edges();
        },
        py::arg("n"), py::arg("k"), py::arg("seed"));
}
