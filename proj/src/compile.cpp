#include "qpilot/compile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qpilot/error.hpp"
#include "qpilot/generic_router.hpp"
#include "qpilot/qsim_router.hpp"

namespace qpilot {

std::string_view to_string(RouterKind k) {
  switch (k) {
  case RouterKind::Generic: return "generic";
  case RouterKind::Qsim: return "qsim";
  case RouterKind::Qaoa: return "qaoa";
  }
  return "generic";
}

RouterKind router_from_string(std::string_view name) {
  if (name == "generic") {
    return RouterKind::Generic;
  }
  if (name == "qsim") {
    return RouterKind::Qsim;
  }
  if (name == "qaoa") {
    return RouterKind::Qaoa;
  }
  throw InvalidArgument("unknown router '" + std::string(name) + "'");
}

RouterKind default_router(const Problem& p) { return static_cast<RouterKind>(p.index()); }

std::size_t problem_qubits(const Problem& p) {
  if (const auto* c = std::get_if<Circuit>(&p)) {
    return c->n_qubits();
  }
  if (const auto* s = std::get_if<std::vector<PauliString>>(&p)) {
    return s->empty() ? 0 : s->front().n_qubits();
  }
  return std::get<EdgeSet>(p).n_qubits();
}

Schedule compile(const Problem& p, const FpqaConfig& cfg, double gamma) {
  if (const auto* c = std::get_if<Circuit>(&p)) {
    return route_generic(*c, cfg);
  }
  if (const auto* s = std::get_if<std::vector<PauliString>>(&p)) {
    return route_pauli(*s, cfg);
  }
  return route_qaoa(std::get<EdgeSet>(p), cfg, gamma);
}

Problem load_problem(const std::string& path, double default_angle) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  auto ends_with = [&](std::string_view ext) {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  };
  if (ends_with(".qasm")) {
    return parse_qasm(text);
  }
  if (ends_with(".pauli")) {
    return parse_pauli_file(text, default_angle);
  }
  if (ends_with(".edges")) {
    return parse_edge_list(text);
  }
  throw InvalidArgument("unknown input extension for '" + path + "' (want .qasm, .pauli, .edges)");
}

std::vector<SweepEntry> sweep_array_width(const Problem& p, std::span<const std::size_t> widths,
                                          const NoiseParams& noise, ExponentMode mode) {
  std::vector<SweepEntry> out;
  for (const std::size_t w : widths) {
    if (w == 0) {
      throw InvalidArgument("array width must be positive");
    }
    const FpqaConfig cfg = FpqaConfig::for_qubits(problem_qubits(p), w);
    const Metrics m = evaluate(compile(p, cfg));
    out.push_back({w, m, error_rate(m, noise, mode)});
  }
  return out;
}

std::optional<std::size_t> argmin_width(std::span<const SweepEntry> sweep) {
  const auto it = std::min_element(sweep.begin(), sweep.end(), [](const SweepEntry& a, const SweepEntry& b) {
    return a.metrics.depth != b.metrics.depth ? a.metrics.depth < b.metrics.depth : a.width < b.width;
  });
  if (it == sweep.end()) {
    return std::nullopt;
  }
  return it->width;
}

std::string sweep_csv(std::span<const SweepEntry> sweep) {
  std::ostringstream out;
  out << "width,depth,g2,epsilon\n";
  for (const SweepEntry& e : sweep) {
    out << e.width << ',' << e.metrics.depth << ',' << e.metrics.g2 << ',' << e.epsilon << '\n';
  }
  return out.str();
}

} // namespace qpilot
