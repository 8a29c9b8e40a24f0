#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpilot/arch.hpp"
#include "qpilot/circuit.hpp"
#include "qpilot/metrics.hpp"
#include "qpilot/qaoa_router.hpp"
#include "qpilot/schedule.hpp"

namespace qpilot {

/// Input of one of the three routers.
using Problem = std::variant<Circuit, std::vector<PauliString>, EdgeSet>;

enum class RouterKind : std::uint8_t { Generic, Qsim, Qaoa };

[[nodiscard]] std::string_view to_string(RouterKind k);
/// "generic", "qsim" or "qaoa"; throws InvalidArgument otherwise.
[[nodiscard]] RouterKind router_from_string(std::string_view name);

/// Router matching the problem's alternative.
[[nodiscard]] RouterKind default_router(const Problem& p);
[[nodiscard]] std::size_t problem_qubits(const Problem& p);

/// Routes with the router belonging to the problem; gamma only affects QAOA.
[[nodiscard]] Schedule compile(const Problem& p, const FpqaConfig& cfg, double gamma = 0.1);

/// Reads a .qasm, .pauli or .edges file by extension. Throws ParseError or
/// InvalidArgument (unknown extension, unreadable file).
[[nodiscard]] Problem load_problem(const std::string& path, double default_angle = 0.1);

struct SweepEntry {
  std::size_t width = 0;
  Metrics metrics;
  double epsilon = 0.0;
};

/// Recompiles the problem on for_qubits(n, width) for every width.
[[nodiscard]] std::vector<SweepEntry> sweep_array_width(const Problem& p,
                                                        std::span<const std::size_t> widths,
                                                        const NoiseParams& noise = {},
                                                        ExponentMode mode = ExponentMode::Literal);

/// Width with the smallest depth; ties go to the narrower width.
[[nodiscard]] std::optional<std::size_t> argmin_width(std::span<const SweepEntry> sweep);

/// "width,depth,g2,epsilon" header plus one row per entry.
[[nodiscard]] std::string sweep_csv(std::span<const SweepEntry> sweep);

} // namespace qpilot
