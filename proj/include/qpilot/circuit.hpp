#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qpilot {

using Qubit = std::uint32_t;
using GateId = std::size_t;

/// U3 only appears in schedules, as the product of fused Raman pulses.
enum class GateKind : std::uint8_t { RX, RY, RZ, H, S, Sdg, CZ, CNOT, ZZ, SWAP, U3 };

[[nodiscard]] bool is_two_qubit(GateKind k);
[[nodiscard]] bool has_angle(GateKind k);
[[nodiscard]] std::string_view to_string(GateKind k);
/// Inverse of to_string; throws UnsupportedGateError for unknown names.
[[nodiscard]] GateKind gate_kind_from_string(std::string_view name);

/// One gate over logical qubits. For CNOT qubits[0] is the control.
struct Gate {
  GateKind kind = GateKind::H;
  std::vector<Qubit> qubits;
  double angle = 0.0;

  static Gate rx(Qubit q, double a) { return {GateKind::RX, {q}, a}; }
  static Gate ry(Qubit q, double a) { return {GateKind::RY, {q}, a}; }
  static Gate rz(Qubit q, double a) { return {GateKind::RZ, {q}, a}; }
  static Gate h(Qubit q) { return {GateKind::H, {q}, 0.0}; }
  static Gate s(Qubit q) { return {GateKind::S, {q}, 0.0}; }
  static Gate sdg(Qubit q) { return {GateKind::Sdg, {q}, 0.0}; }
  static Gate cz(Qubit a, Qubit b) { return {GateKind::CZ, {a, b}, 0.0}; }
  static Gate cnot(Qubit c, Qubit t) { return {GateKind::CNOT, {c, t}, 0.0}; }
  static Gate zz(Qubit a, Qubit b, double a_) { return {GateKind::ZZ, {a, b}, a_}; }
  static Gate swap(Qubit a, Qubit b) { return {GateKind::SWAP, {a, b}, 0.0}; }

  [[nodiscard]] bool two_qubit() const { return is_two_qubit(kind); }
  bool operator==(const Gate&) const = default;
};

/// Ordered gate list over n qubits. Gate ids are list positions.
class Circuit {
public:
  Circuit() = default;
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  Circuit(std::size_t n_qubits, std::vector<Gate> gates);

  /// Appends after checking arity and index range.
  void add(Gate g);

  [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }
  [[nodiscard]] bool empty() const { return gates_.empty(); }
  [[nodiscard]] const Gate& operator[](GateId id) const { return gates_[id]; }

  /// Gate ids each gate directly depends on (last earlier gate on each qubit).
  [[nodiscard]] std::vector<std::vector<GateId>> dependencies() const;

  bool operator==(const Circuit&) const = default;

private:
  std::size_t n_qubits_ = 0;
  std::vector<Gate> gates_;
};

enum class Pauli : std::uint8_t { I, X, Y, Z };

struct PauliString {
  std::vector<Pauli> ops;
  double angle = 0.1;

  [[nodiscard]] std::size_t n_qubits() const { return ops.size(); }
  /// Indices of the non-identity positions, ascending.
  [[nodiscard]] std::vector<Qubit> support() const;
  [[nodiscard]] std::string str() const;
  bool operator==(const PauliString&) const = default;
};

/// Parses "XIZY" (no whitespace); throws ParseError on other characters.
[[nodiscard]] PauliString parse_pauli(std::string_view text, double angle, std::size_t line = 1);
/// One string per line, optional angle after whitespace; '#' starts a comment.
[[nodiscard]] std::vector<PauliString> parse_pauli_file(std::string_view text,
                                                        double default_angle = 0.1);

/// OpenQASM 2 subset: one qreg; gates h s sdg rx ry rz cx cz swap rzz.
[[nodiscard]] Circuit parse_qasm(std::string_view text);
[[nodiscard]] std::string to_qasm(const Circuit& c);

/// Rewrites to {1Q, CZ} (plus ZZ when keep_zz). CNOT(a,b) -> H(b) CZ(a,b) H(b),
/// SWAP -> three CNOTs, ZZ(t) -> CNOT RZ(t) CNOT.
[[nodiscard]] Circuit decompose_to_cz_basis(const Circuit& c, bool keep_zz = true);

/// Gates outside `done` whose predecessors are all inside `done`, ascending.
/// `done` is a membership mask of size c.size().
[[nodiscard]] std::vector<GateId> front_layer(const Circuit& c, const std::vector<bool>& done);

/// Circuit that applies exp(-i angle/2 P) for each string in order.
[[nodiscard]] Circuit pauli_evolution_circuit(std::span<const PauliString> strings);

void to_json(nlohmann::json& j, const Gate& g);
void from_json(const nlohmann::json& j, Gate& g);
void to_json(nlohmann::json& j, const Circuit& c);
void from_json(const nlohmann::json& j, Circuit& c);

} // namespace qpilot
