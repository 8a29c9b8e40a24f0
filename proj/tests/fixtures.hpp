#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qpilot/arch.hpp"
#include "qpilot/circuit.hpp"
#include "qpilot/qaoa_router.hpp"
#include "qpilot/statevector.hpp"

namespace qpilot::fixtures {

// Fig. 5 example: 16 qubits on a 4-wide array, g0..g6 in order.
inline Circuit sample_circuit() {
  Circuit c(16);
  const std::vector<std::pair<Qubit, Qubit>> pairs{{0, 5}, {1, 6}, {2, 4}, {3, 7},
                                                   {0, 6}, {5, 7}, {1, 3}};
  for (const auto& [a, b] : pairs) {
    c.add(Gate::cz(a, b));
  }
  return c;
}

inline FpqaConfig sample_config() { return FpqaConfig::for_qubits(16, 4); }

// Fig. 7-style instance on a 4-wide array of 12 qubits. Stage one matches
// (0',1) and (1',3) in the first AOD row and (4',9), (5',11) one row down;
// (0,2) is left for stage two.
inline EdgeSet sample_graph() {
  return EdgeSet(12, {{0, 1}, {0, 2}, {1, 3}, {4, 9}, {5, 11}});
}

inline FpqaConfig sample_graph_config() { return FpqaConfig::for_qubits(12, 4); }

// Minimum overlap of two circuits over |0..0> and random product inputs.
inline double circuit_fidelity(const Circuit& a, const Circuit& b, int n_random = 10,
                               std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  double worst = overlap_fidelity(simulate(a), simulate(b));
  for (int i = 0; i < n_random; ++i) {
    const StateVector in = random_product_state(a.n_qubits(), rng);
    worst = std::min(worst, overlap_fidelity(simulate(a, in), simulate(b, in)));
  }
  return worst;
}

} // namespace qpilot::fixtures
