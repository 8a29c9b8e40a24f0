#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qpilot/circuit.hpp"

namespace qpilot {

/// Physical atom identifier. Data atoms use their logical qubit index;
/// ancillas take ids >= n_qubits.
using AtomId = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

[[nodiscard]] double distance(Point a, Point b);

/// Grid coordinate (row, col) on the SLM lattice or on the AOD grid.
struct Site {
  std::size_t row = 0;
  std::size_t col = 0;
  auto operator<=>(const Site&) const = default;
};

/// Machine geometry. Lengths are in units of the Rydberg radius.
struct FpqaConfig {
  std::size_t slm_rows = 16;
  std::size_t slm_cols = 16;
  std::size_t aod_rows = 16;
  std::size_t aod_cols = 16;
  double site_spacing = 2.6;
  double rydberg_radius = 1.0;
  double separation_factor = 2.5;
  /// Upper bound on how far an ancilla parks from its partner.
  double interaction_offset = 0.5;

  /// Throws InvalidArgument when the geometry cannot keep idle atoms apart.
  void check() const;

  /// SLM position of a grid site.
  [[nodiscard]] Point site_position(Site s) const {
    return {static_cast<double>(s.col) * site_spacing, static_cast<double>(s.row) * site_spacing};
  }
  /// Separation every non-interacting pair must exceed.
  [[nodiscard]] double separation() const { return separation_factor * rydberg_radius; }
  /// Largest parking distance keeping a parked ancilla coupled to its partner
  /// and decoupled from every other SLM site and every other parked ancilla.
  [[nodiscard]] double parking_offset() const;
  /// Diagonal of the SLM array, the unit for normalized move distances.
  [[nodiscard]] double array_diagonal() const;
  /// Right/bottom edge coordinates of the SLM array.
  [[nodiscard]] double max_x() const {
    return static_cast<double>(slm_cols ? slm_cols - 1 : 0) * site_spacing;
  }
  [[nodiscard]] double max_y() const {
    return static_cast<double>(slm_rows ? slm_rows - 1 : 0) * site_spacing;
  }

  /// Smallest roughly-square config for n qubits with the given SLM width
  /// (0 = ceil(sqrt(n))), AOD grid matching the SLM grid.
  [[nodiscard]] static FpqaConfig for_qubits(std::size_t n_qubits, std::size_t width = 0);

  bool operator==(const FpqaConfig&) const = default;
};

/// Row y-coordinates, column x-coordinates and occupied crossings of the AOD.
struct AodState {
  std::vector<double> row_y;
  std::vector<double> col_x;
  std::map<Site, AtomId> occupied;

  [[nodiscard]] Point position(Site crossing) const {
    return {col_x.at(crossing.col), row_y.at(crossing.row)};
  }
  bool operator==(const AodState&) const = default;
};

/// Where each atom sits initially.
struct AtomLayout {
  std::map<Qubit, Site> slm_atoms;
  std::map<AtomId, Site> aod_atoms;
  bool operator==(const AtomLayout&) const = default;
};

/// q -> (q / slm_cols, q % slm_cols). Throws CapacityError.
[[nodiscard]] AtomLayout reading_order_mapping(std::size_t n_qubits, const FpqaConfig& cfg);

struct MoveViolation {
  enum class Axis { Row, Col } axis = Axis::Row;
  std::size_t first = 0; ///< lower index of the offending adjacent pair
  std::size_t second = 0;
  [[nodiscard]] std::string describe() const;
  bool operator==(const MoveViolation&) const = default;
};

/// Empty when `after` keeps rows and columns strictly ordered.
/// Throws InvalidArgument on a dimension mismatch.
[[nodiscard]] std::optional<MoveViolation> check_move(const AodState& before, const AodState& after);

struct PlacedAtom {
  AtomId id = 0;
  Point pos;
};

using AtomPair = std::pair<AtomId, AtomId>;

struct RydbergPairs {
  std::vector<AtomPair> coupled;    ///< distance <= r_b, sorted, first < second
  std::vector<AtomPair> violations; ///< r_b < distance <= separation, sorted
};

/// Classifies every pair of atoms for a global Rydberg pulse. Uses a uniform
/// grid hash so cost is linear in the number of atoms for sparse layouts.
[[nodiscard]] RydbergPairs rydberg_pairs(std::span<const PlacedAtom> atoms, const FpqaConfig& cfg);

/// t0 * sqrt(D). Throws InvalidArgument for negative D.
[[nodiscard]] double move_duration(double max_distance, double t0);

/// Largest displacement of any occupied crossing between two AOD states.
[[nodiscard]] double max_displacement(const AodState& before, const AodState& after);

void to_json(nlohmann::json& j, const FpqaConfig& c);
void from_json(const nlohmann::json& j, FpqaConfig& c);
void to_json(nlohmann::json& j, const AodState& s);
void from_json(const nlohmann::json& j, AodState& s);
void to_json(nlohmann::json& j, const Site& s);
void from_json(const nlohmann::json& j, Site& s);

} // namespace qpilot
