#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qpilot/circuit.hpp"
#include "qpilot/schedule.hpp"

namespace qpilot {

using Amplitude = std::complex<double>;
using Matrix2 = std::array<Amplitude, 4>; ///< row-major 2x2

/// Largest register the oracle will allocate.
inline constexpr std::size_t kMaxOracleQubits = 14;

/// Dense state over n qubits; qubit q is bit q of the basis index.
class StateVector {
public:
  /// |0...0>. Throws CapacityError above kMaxOracleQubits.
  explicit StateVector(std::size_t n_qubits);
  StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

  [[nodiscard]] std::size_t n_qubits() const { return n_; }
  [[nodiscard]] const std::vector<Amplitude>& amplitudes() const { return amps_; }
  [[nodiscard]] Amplitude operator[](std::size_t basis) const { return amps_[basis]; }
  [[nodiscard]] double norm_squared() const;

  void apply_1q(const Matrix2& m, std::size_t q);
  /// diag(1,1,1,e^{i phase}) on (a, b).
  void apply_cphase(std::size_t a, std::size_t b, double phase);
  void apply_cnot(std::size_t control, std::size_t target);
  void apply_swap(std::size_t a, std::size_t b);
  void apply(const Gate& g);

  /// Norm of the component with qubit q in |1>.
  [[nodiscard]] double excited_amplitude(std::size_t q) const;
  /// Projects q onto |0> and renormalizes.
  void reset_to_zero(std::size_t q);
  /// Drops the top `count` qubits, which must be (numerically) |0>.
  [[nodiscard]] StateVector truncated(std::size_t keep) const;

  /// Tensor product of single-qubit states; factors[q] is qubit q.
  [[nodiscard]] static StateVector product(const std::vector<std::array<Amplitude, 2>>& factors);

private:
  std::size_t n_;
  std::vector<Amplitude> amps_;
};

[[nodiscard]] Matrix2 gate_matrix(GateKind kind, double angle);
/// gate_matrix, plus U3(theta, phi, lambda) =
/// [[cos, -e^{i lambda} sin], [e^{i phi} sin, e^{i(phi+lambda)} cos]] at theta/2.
[[nodiscard]] Matrix2 local_matrix(const LocalOp& op);

/// |<a|b>|^2. Throws InvalidArgument on size mismatch.
[[nodiscard]] double overlap_fidelity(const StateVector& a, const StateVector& b);

/// Haar-random single-qubit factors.
[[nodiscard]] StateVector random_product_state(std::size_t n_qubits, std::mt19937_64& rng);

[[nodiscard]] StateVector simulate(const Circuit& c);
[[nodiscard]] StateVector simulate(const Circuit& c, StateVector input);

struct ScheduleRun {
  StateVector data;          ///< reduced state on the data qubits
  double max_leakage = 0.0;  ///< largest |1> amplitude seen on a retiring ancilla
};

/// Replays Raman and Rydberg stages (moves are identity). Ancillas enter
/// in |0>; each retirement checks the ancilla is back in |0>.
/// Throws AncillaLeakError when leakage exceeds `tolerance`.
[[nodiscard]] ScheduleRun simulate_schedule(const Schedule& s, const StateVector& input,
                                            double tolerance = 1e-9);
[[nodiscard]] StateVector simulate_schedule(const Schedule& s);

/// Minimum overlap fidelity between circuit and schedule over |0...0> and
/// `n_random` Haar product inputs.
[[nodiscard]] double equivalence(const Circuit& c, const Schedule& s, std::size_t n_random = 20,
                                 std::uint64_t seed = 7);

} // namespace qpilot
