#include "qpilot/bench.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "qpilot/error.hpp"

namespace qpilot {

Circuit random_circuit(std::size_t n_qubits, std::size_t two_qubit_gates, std::uint64_t seed) {
  if (n_qubits < 2 && two_qubit_gates > 0) {
    throw InvalidArgument("two-qubit gates need at least two qubits");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> axis(0, 2);
  Circuit c(n_qubits);
  std::vector<Qubit> order(n_qubits);
  std::iota(order.begin(), order.end(), Qubit{0});
  std::size_t placed = 0;
  do {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i + 1 < n_qubits && placed < two_qubit_gates; i += 2) {
      c.add(Gate::cnot(order[i], order[i + 1]));
      ++placed;
    }
    for (Qubit q = 0; q < n_qubits; ++q) {
      constexpr GateKind kinds[] = {GateKind::RX, GateKind::RY, GateKind::RZ};
      c.add(Gate{kinds[axis(rng)], {q}, angle(rng)});
    }
  } while (placed < two_qubit_gates);
  return c;
}

std::vector<PauliString> random_pauli_strings(std::size_t n_qubits, std::size_t count, double p,
                                              std::uint64_t seed, double angle) {
  if (n_qubits == 0 || !(p > 0.0) || p > 1.0) {
    throw InvalidArgument("random Pauli strings need n > 0 and 0 < p <= 1");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution active(p);
  std::uniform_int_distribution<int> which(1, 3);
  std::vector<PauliString> out;
  out.reserve(count);
  while (out.size() < count) {
    PauliString s;
    s.angle = angle;
    s.ops.resize(n_qubits, Pauli::I);
    for (auto& op : s.ops) {
      if (active(rng)) {
        op = static_cast<Pauli>(which(rng));
      }
    }
    if (!s.support().empty()) {
      out.push_back(std::move(s));
    }
  }
  return out;
}

EdgeSet random_graph(std::size_t n_qubits, double p, std::uint64_t seed) {
  if (!(p > 0.0) || p > 1.0) {
    throw InvalidArgument("edge probability must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(p);
  EdgeSet g(n_qubits);
  for (Qubit u = 0; u < n_qubits; ++u) {
    for (Qubit v = u + 1; v < n_qubits; ++v) {
      if (edge(rng)) {
        g.add(u, v);
      }
    }
  }
  return g;
}

EdgeSet random_regular_graph(std::size_t n_qubits, std::size_t k, std::uint64_t seed) {
  if ((n_qubits * k) % 2 != 0 || (k > 0 && k >= n_qubits)) {
    throw InvalidArgument("no " + std::to_string(k) + "-regular graph on " +
                          std::to_string(n_qubits) + " vertices");
  }
  std::mt19937_64 rng(seed);
  std::vector<Qubit> stubs;
  for (Qubit q = 0; q < n_qubits; ++q) {
    stubs.insert(stubs.end(), k, q);
  }
  while (true) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    EdgeSet g(n_qubits);
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      const Qubit u = stubs[i];
      const Qubit v = stubs[i + 1];
      simple = u != v && !g.contains(u, v);
      if (simple) {
        g.add(u, v);
      }
    }
    if (simple) {
      return g;
    }
  }
}

} // namespace qpilot
