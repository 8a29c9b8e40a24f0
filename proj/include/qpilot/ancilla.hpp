#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qpilot/arch.hpp"
#include "qpilot/error.hpp"
#include "qpilot/schedule.hpp"

namespace qpilot {

/// Z-basis fan-out of one root atom onto a set of ancilla atoms.
struct FanoutGroup {
  enum class State : std::uint8_t { Fresh, Live, Retired };

  AtomId root = 0;
  std::vector<AtomId> ancillas;
  State state = State::Fresh;
};

/// Transversal copy CNOTs root -> ancilla. Layer k copies every group's k-th
/// ancilla, so single-ancilla groups share one layer. Marks groups live.
/// Throws AncillaStateError unless every group is fresh.
[[nodiscard]] std::vector<Stage> copy_stage(std::span<FanoutGroup> groups);

/// Mirror of copy_stage in reverse layer order; marks groups retired.
/// Throws AncillaStateError unless every group is live.
[[nodiscard]] std::vector<Stage> recycle_stage(std::span<FanoutGroup> groups);

/// Which endpoints of a CZ(j, j') are substituted by their ancilla copies.
enum class CzVariant : std::uint8_t { AncillaFirst, AncillaSecond, BothAncillas, Original };

struct VariantAvailability {
  bool data_first = true;
  bool ancilla_first = true;
  bool data_second = true;
  bool ancilla_second = true;
  /// The two data atoms are already within the Rydberg radius.
  bool adjacent = false;
};

class NoLegalVariant : public Error {
public:
  using Error::Error;
};

/// Preference: (j', ...) ancilla-first, then ancilla-second, then both, then
/// the original pair; the original wins outright when the data atoms touch.
[[nodiscard]] CzVariant select_cz_variant(const VariantAvailability& avail);

/// Physical endpoints of a variant given data ids and their ancillas.
[[nodiscard]] AtomPair variant_endpoints(CzVariant v, AtomId j, AtomId j_anc, AtomId jp,
                                         AtomId jp_anc);

/// Packs CZs on logical pairs into as few layers as possible, choosing a
/// variant per pair with each atom used at most once per layer. Ancilla of
/// qubit q is atom n + q.
[[nodiscard]] std::vector<std::vector<AtomPair>> pack_cz_layers(std::size_t n,
                                                                std::span<const AtomPair> pairs);

/// Geometry-free program: load n ancillas, transversal copy, the given
/// variant CZs (layered greedily), transversal recycle, retire.
[[nodiscard]] Schedule protocol_schedule(std::size_t n, std::span<const AtomPair> pairs,
                                         std::span<const CzVariant> variants);

} // namespace qpilot
