#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qpilot/arch.hpp"
#include "qpilot/circuit.hpp"

namespace qpilot {

/// Single-qubit gate addressed to a physical atom by the Raman laser.
struct LocalOp {
  GateKind kind = GateKind::H;
  double angle = 0.0; ///< theta for U3
  AtomId atom = 0;
  double phi = 0.0;    ///< U3 only
  double lambda = 0.0; ///< U3 only
  bool operator==(const LocalOp&) const = default;
};

struct RamanStage {
  std::vector<LocalOp> ops;
  bool operator==(const RamanStage&) const = default;
};

/// New AOD row/column coordinates. Occupancy is unchanged by a move.
struct MoveStage {
  std::vector<double> row_y;
  std::vector<double> col_x;
  double max_distance = 0.0; ///< raw length units, largest atom displacement
  bool operator==(const MoveStage&) const = default;
};

/// Global Rydberg pulse. Every intended pair receives a controlled phase
/// diag(1,1,1,e^{i phase}); phase = pi is CZ.
struct RydbergStage {
  std::vector<AtomPair> pairs;
  double phase = std::numbers::pi;
  bool operator==(const RydbergStage&) const = default;
};

struct Transfer {
  AtomId atom = 0;
  Site crossing;
  bool load = true; ///< true: fresh atom enters the AOD crossing; false: atom retires
  bool operator==(const Transfer&) const = default;
};

struct TransferStage {
  std::vector<Transfer> transfers;
  bool operator==(const TransferStage&) const = default;
};

struct MeasureStage {
  bool operator==(const MeasureStage&) const = default;
};

using Stage = std::variant<RamanStage, MoveStage, RydbergStage, TransferStage, MeasureStage>;

struct Schedule {
  FpqaConfig config;
  std::size_t n_qubits = 0;
  AtomLayout initial_layout;
  AodState initial_aod;
  std::vector<Stage> stages;
  bool operator==(const Schedule&) const = default;
};

struct Violation {
  enum class Kind {
    MovementOrder,
    RydbergSeparation,
    UnintendedCoupling,
    MissingCoupling,
    UnrecycledAncilla,
    TransferConflict,
    UnknownAtom,
    DimensionMismatch,
  };
  Kind kind = Kind::MovementOrder;
  std::size_t stage = 0;
  std::string detail;
};

[[nodiscard]] std::string_view to_string(Violation::Kind k);

/// Replays every stage and collects physical and bookkeeping violations.
[[nodiscard]] std::vector<Violation> validate(const Schedule& s);

/// Number of Rydberg stages with at least one intended pair.
[[nodiscard]] std::size_t depth(const Schedule& s);

/// Positions of all live atoms at the start of each stage (stage, atom, x, y).
[[nodiscard]] std::string movement_csv(const Schedule& s);

/// Incremental schedule construction that tracks the live AOD state.
class ScheduleBuilder {
public:
  ScheduleBuilder(const FpqaConfig& cfg, std::size_t n_qubits, AodState initial_aod);

  [[nodiscard]] const AodState& aod() const { return aod_; }
  [[nodiscard]] AtomId next_ancilla_id() const { return next_ancilla_; }
  [[nodiscard]] AtomId allocate_ancilla() { return next_ancilla_++; }

  /// Emits a move only when some coordinate changes.
  void move(std::vector<double> row_y, std::vector<double> col_x);
  void raman(std::vector<LocalOp> ops);
  void rydberg(std::vector<AtomPair> pairs, double phase = std::numbers::pi);
  void transfer(std::vector<Transfer> transfers);
  void measure();

  /// CNOT layer realized as H(target) . CZ . H(target); pairs are (control, target).
  void cnot_layer(const std::vector<AtomPair>& control_target);

  /// Returns the schedule after fuse_local_ops.
  [[nodiscard]] Schedule finish() &&;

private:
  Schedule schedule_;
  AodState aod_;
  AtomId next_ancilla_;
};

void to_json(nlohmann::json& j, const Stage& s);
void from_json(const nlohmann::json& j, Stage& s);
void to_json(nlohmann::json& j, const Schedule& s);
void from_json(const nlohmann::json& j, Schedule& s);

} // namespace qpilot
