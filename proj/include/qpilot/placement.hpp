#pragma once

#include <span>
#include <vector>

#include "qpilot/arch.hpp"

namespace qpilot {

/// SLM site of a logical qubit under reading-order mapping.
[[nodiscard]] inline Site slm_site(Qubit q, const FpqaConfig& cfg) {
  return {q / cfg.slm_cols, q % cfg.slm_cols};
}

struct AodLines {
  std::vector<double> row_y;
  std::vector<double> col_x;
};

/// Lines parked beyond the bottom-right corner, the idle AOD configuration.
[[nodiscard]] AodLines parked_lines(const FpqaConfig& cfg);

/// Puts diagonal crossing (k, k) next to sites[k] for k < sites.size() and
/// parks the remaining lines past the bottom-right corner. `sites` must be
/// non-decreasing in both row and column. Ancillas that share an SLM row or
/// column get distinct sub-offsets so AOD lines stay strictly ordered while
/// each ancilla remains within the parking offset of its site.
[[nodiscard]] AodLines place_on_diagonal(std::span<const Site> sites, const FpqaConfig& cfg);

} // namespace qpilot
