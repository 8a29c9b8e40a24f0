#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qpilot/arch.hpp"
#include "qpilot/circuit.hpp"
#include "qpilot/placement.hpp"
#include "qpilot/schedule.hpp"

namespace qpilot {

/// Targets of one Pauli string under the 2-D dominance order: u -> v iff v
/// lies at or below-right of u.
struct DominanceDag {
  std::vector<Qubit> nodes; ///< sorted by (row, col)
  std::vector<Site> sites;

  [[nodiscard]] static DominanceDag build(std::span<const Qubit> targets, const FpqaConfig& cfg);
  [[nodiscard]] std::size_t size() const { return nodes.size(); }
  [[nodiscard]] bool edge(std::size_t u, std::size_t v) const {
    return u != v && sites[v].row >= sites[u].row && sites[v].col >= sites[u].col;
  }
};

/// Longest chain as node indices into dag, lexicographically smallest among
/// the longest. Throws InvalidArgument on an empty dag.
[[nodiscard]] std::vector<std::size_t> longest_chain(const DominanceDag& dag);

/// Copy source in a fan-out layer: the root (kRoot) or an ancilla slot.
inline constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

/// Fan-out schedule over ancilla slots 0..n-1 (slot k = AOD crossing (k, k)).
/// Layer j copies onto max(1, 2(j-1)) fresh slots except the last, which is
/// cut to reach exactly n. Each layer lists (source, fresh slot) pairs; within
/// a layer ancilla pairs are adjacent slots.
struct FanoutPlan {
  std::size_t n_copies = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layers;

  [[nodiscard]] std::size_t depth() const { return layers.size(); }
};

[[nodiscard]] FanoutPlan fanout_plan(std::size_t n_copies);

/// Fan-out plan plus one AOD layout per layer that couples exactly that
/// layer's pairs. Throws CapacityError when the copies exceed the AOD diagonal.
struct FanoutTree {
  FanoutPlan plan;
  std::vector<AodLines> layouts;

  [[nodiscard]] std::size_t depth() const { return plan.depth(); }
};

[[nodiscard]] FanoutTree fanout_tree(Qubit root, std::size_t n_copies, const FpqaConfig& cfg);

/// Per-string statistics collected by route_pauli.
struct PauliRouteInfo {
  Qubit root = 0;
  std::size_t ancillas = 0;
  std::size_t fanout_depth = 0;
  std::size_t chain_rounds = 0;
};

/// exp(-i angle/2 P) for each string in order. Ancillas collect the parity of
/// the non-root support chain by chain, the fan-out tree folds it into the
/// root for an Rz, and the mirror image restores the ancillas to |0>.
/// Throws InvalidArgument for an all-identity string or mismatched widths.
[[nodiscard]] Schedule route_pauli(std::span<const PauliString> strings, const FpqaConfig& cfg,
                                   std::vector<PauliRouteInfo>* info = nullptr);

} // namespace qpilot
