#pragma once

#include <span>
#include <vector>

#include "qpilot/arch.hpp"
#include "qpilot/circuit.hpp"
#include "qpilot/schedule.hpp"

namespace qpilot {

struct SubsetGate {
  GateId id = 0;
  Qubit control = 0; ///< fan-out source, the lower qubit index
  Qubit target = 0;
  bool operator==(const SubsetGate&) const = default;
};

/// Gates executed together in one copy/gate/recycle block, sorted by control.
/// ancilla_slots[k] is the AOD crossing carrying the ancilla of gates[k].
struct LegalSubset {
  std::vector<SubsetGate> gates;
  std::vector<Site> ancilla_slots;
  bool operator==(const LegalSubset&) const = default;
};

/// Whether inserting `candidate` at its control-sorted position keeps control
/// and target sites non-decreasing in both x and y along the subset.
[[nodiscard]] bool is_legal(const LegalSubset& subset, const SubsetGate& candidate,
                            const FpqaConfig& cfg);

/// Greedy scan of the 2-Q gates in `front` ordered by (first qubit, second
/// qubit, id). Gates touching a qubit already in the subset are skipped. At
/// most min(aod_rows, aod_cols) gates are taken.
[[nodiscard]] LegalSubset select_legal_subset(const Circuit& c, std::span<const GateId> front,
                                              const FpqaConfig& cfg);

/// Routes a circuit of 1-Q gates and CZ/CNOT/SWAP/ZZ (decomposed to CZ first).
/// When `trace` is given it receives the subset of every block in order.
/// Throws CapacityError if the circuit does not fit the SLM or the AOD has no
/// crossing to carry an ancilla.
[[nodiscard]] Schedule route_generic(const Circuit& c, const FpqaConfig& cfg,
                                     std::vector<LegalSubset>* trace = nullptr);

} // namespace qpilot
