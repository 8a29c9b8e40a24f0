#pragma once

#include "qpilot/schedule.hpp"

namespace qpilot {

/// Peephole pass over Raman ops. For each atom, the local ops between two
/// consecutive Rydberg interactions (or transfers) are multiplied into one
/// pulse: dropped when the product is the identity up to phase, otherwise a
/// single H, S, Sdg, RX, RY, RZ or U3 at the run's last position. Raman stages
/// left empty are removed.
[[nodiscard]] Schedule fuse_local_ops(Schedule s);

} // namespace qpilot
