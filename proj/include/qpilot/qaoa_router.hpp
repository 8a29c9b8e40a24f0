#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "qpilot/arch.hpp"
#include "qpilot/circuit.hpp"
#include "qpilot/placement.hpp"
#include "qpilot/schedule.hpp"

namespace qpilot {

/// Undirected simple graph over qubits 0..n-1.
class EdgeSet {
public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t n_qubits) : adj_(n_qubits) {}
  EdgeSet(std::size_t n_qubits, const std::vector<std::pair<Qubit, Qubit>>& edges);

  /// Throws InvalidArgument on self-loops, duplicates and out-of-range ends.
  void add(Qubit u, Qubit v);
  /// Returns whether the edge was present.
  bool remove(Qubit u, Qubit v);
  [[nodiscard]] bool contains(Qubit u, Qubit v) const;

  [[nodiscard]] std::size_t n_qubits() const { return adj_.size(); }
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] bool empty() const { return size_ == 0; }
  [[nodiscard]] const std::set<Qubit>& neighbours(Qubit q) const { return adj_.at(q); }
  [[nodiscard]] std::size_t degree(Qubit q) const { return adj_.at(q).size(); }
  /// Smallest edge (u, v), u < v, in lexicographic order. Requires !empty().
  [[nodiscard]] std::pair<Qubit, Qubit> first_edge() const;
  /// Sorted (u, v) list with u < v.
  [[nodiscard]] std::vector<std::pair<Qubit, Qubit>> edges() const;

  bool operator==(const EdgeSet&) const = default;

private:
  std::vector<std::set<Qubit>> adj_;
  std::size_t size_ = 0;
};

/// "n m" header then m lines "u v"; '#' starts a comment. Throws ParseError.
[[nodiscard]] EdgeSet parse_edge_list(std::string_view text);
[[nodiscard]] std::string to_edge_list(const EdgeSet& g);

/// One Rydberg stage: which AOD lines face which SLM lines.
struct StagePlan {
  /// (ancilla owner qubit, data qubit); ancilla of q is atom n + q.
  std::vector<std::pair<Qubit, Qubit>> matched;
  /// SLM row faced by each AOD row, nullopt when parked outside the array.
  std::vector<std::optional<std::size_t>> row_targets;
  /// SLM column faced by each AOD column, nullopt when parked.
  std::vector<std::optional<std::size_t>> col_targets;

  [[nodiscard]] std::vector<std::size_t> parked_columns() const;
};

/// Greedy stage: seed with the smallest remaining edge, extend along the seed's
/// AOD row over contiguous columns, then translate the first-row pattern to
/// the following AOD rows. Edge (u, v), u < v, is always carried by u's
/// ancilla, which sits at AOD crossing (u / cols, u % cols).
/// Requires a nonempty edge set.
[[nodiscard]] StagePlan plan_stage(const EdgeSet& remaining, const FpqaConfig& cfg);

/// Line coordinates realizing a stage plan.
[[nodiscard]] AodLines stage_layout(const StagePlan& plan, const FpqaConfig& cfg);

/// Each ancilla next to its own data atom.
[[nodiscard]] AodLines home_layout(const FpqaConfig& cfg);

/// Reference circuit: ZZ(gamma) on every edge, in edges() order.
[[nodiscard]] Circuit qaoa_circuit(const EdgeSet& g, double gamma);

/// Applies exp(-i gamma/2 Z_u Z_v) for every edge. Throws CapacityError when
/// the graph does not fit the SLM or the AOD cannot host one ancilla per qubit.
[[nodiscard]] Schedule route_qaoa(const EdgeSet& g, const FpqaConfig& cfg, double gamma = 0.1,
                                  std::vector<StagePlan>* trace = nullptr);

} // namespace qpilot
