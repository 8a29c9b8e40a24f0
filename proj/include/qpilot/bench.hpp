#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qpilot/circuit.hpp"
#include "qpilot/qaoa_router.hpp"

namespace qpilot {

/// Layers of disjoint random CNOTs, each followed by one rotation about a
/// random axis on every qubit, until `two_qubit_gates` CNOTs are placed. With
/// zero CNOTs the result is a single rotation layer.
[[nodiscard]] Circuit random_circuit(std::size_t n_qubits, std::size_t two_qubit_gates,
                                     std::uint64_t seed);

/// Each position is non-identity with probability p (uniform over X, Y, Z);
/// all-identity draws are rejected.
[[nodiscard]] std::vector<PauliString> random_pauli_strings(std::size_t n_qubits, std::size_t count,
                                                            double p, std::uint64_t seed,
                                                            double angle = 0.1);

/// Erdos-Renyi graph: every pair is an edge with probability p in (0, 1].
[[nodiscard]] EdgeSet random_graph(std::size_t n_qubits, double p, std::uint64_t seed);

/// Uniform-ish k-regular graph from the configuration model with rejection.
/// Throws InvalidArgument when n * k is odd or k >= n.
[[nodiscard]] EdgeSet random_regular_graph(std::size_t n_qubits, std::size_t k, std::uint64_t seed);

} // namespace qpilot
