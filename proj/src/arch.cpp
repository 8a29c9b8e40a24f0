#include "qpilot/arch.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qpilot/error.hpp"

namespace qpilot {

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

void FpqaConfig::check() const {
  if (rydberg_radius <= 0.0) {
    throw InvalidArgument("rydberg_radius must be positive");
  }
  if (site_spacing <= separation()) {
    throw InvalidArgument("site_spacing must exceed separation_factor * rydberg_radius");
  }
  if (interaction_offset <= 0.0 || interaction_offset >= rydberg_radius) {
    throw InvalidArgument("interaction_offset must lie in (0, rydberg_radius)");
  }
}

double FpqaConfig::parking_offset() const {
  check();
  // Two ancillas parked next to neighbouring sites sit at least
  // spacing - 2*offset apart; keep that above the separation bound with margin.
  const double room = 0.45 * (site_spacing - separation());
  return std::min(interaction_offset, room);
}

double FpqaConfig::array_diagonal() const {
  const double d = std::hypot(max_x(), max_y());
  return d > 0.0 ? d : site_spacing;
}

FpqaConfig FpqaConfig::for_qubits(std::size_t n_qubits, std::size_t width) {
  const std::size_t n = std::max<std::size_t>(n_qubits, 1);
  if (width == 0) {
    width = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  }
  FpqaConfig cfg;
  cfg.slm_cols = width;
  cfg.slm_rows = (n + width - 1) / width;
  cfg.aod_rows = cfg.slm_rows;
  cfg.aod_cols = cfg.slm_cols;
  return cfg;
}

AtomLayout reading_order_mapping(std::size_t n_qubits, const FpqaConfig& cfg) {
  if (n_qubits > cfg.slm_rows * cfg.slm_cols) {
    throw CapacityError(std::to_string(n_qubits) + " qubits exceed the " +
                        std::to_string(cfg.slm_rows) + "x" + std::to_string(cfg.slm_cols) +
                        " SLM grid");
  }
  AtomLayout layout;
  for (std::size_t q = 0; q < n_qubits; ++q) {
    layout.slm_atoms.emplace(static_cast<Qubit>(q), Site{q / cfg.slm_cols, q % cfg.slm_cols});
  }
  return layout;
}

std::string MoveViolation::describe() const {
  return std::string(axis == Axis::Row ? "rows " : "columns ") + std::to_string(first) + "," +
         std::to_string(second) + " cross or coincide";
}

std::optional<MoveViolation> check_move(const AodState& before, const AodState& after) {
  if (before.row_y.size() != after.row_y.size() || before.col_x.size() != after.col_x.size()) {
    throw InvalidArgument("AOD dimension mismatch in move");
  }
  for (std::size_t i = 0; i + 1 < after.row_y.size(); ++i) {
    if (!(after.row_y[i] < after.row_y[i + 1])) {
      return MoveViolation{MoveViolation::Axis::Row, i, i + 1};
    }
  }
  for (std::size_t i = 0; i + 1 < after.col_x.size(); ++i) {
    if (!(after.col_x[i] < after.col_x[i + 1])) {
      return MoveViolation{MoveViolation::Axis::Col, i, i + 1};
    }
  }
  return std::nullopt;
}

RydbergPairs rydberg_pairs(std::span<const PlacedAtom> atoms, const FpqaConfig& cfg) {
  const double rb = cfg.rydberg_radius;
  const double sep = cfg.separation();
  const double cell = sep > 0.0 ? sep : 1.0;
  auto key = [cell](Point p) {
    const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell));
    const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell));
    return std::pair{cx, cy};
  };
  struct Hash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const {
      return std::hash<std::int64_t>{}(k.first * 73856093LL ^ k.second * 19349663LL);
    }
  };
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, Hash> grid;
  grid.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    grid[key(atoms[i].pos)].push_back(i);
  }
  RydbergPairs out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto [cx, cy] = key(atoms[i].pos);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = grid.find({cx + dx, cy + dy});
        if (it == grid.end()) {
          continue;
        }
        for (const std::size_t j : it->second) {
          if (j <= i) {
            continue;
          }
          const double d = distance(atoms[i].pos, atoms[j].pos);
          if (d > sep) {
            continue;
          }
          AtomPair p = std::minmax(atoms[i].id, atoms[j].id);
          (d <= rb ? out.coupled : out.violations).push_back(p);
        }
      }
    }
  }
  std::sort(out.coupled.begin(), out.coupled.end());
  std::sort(out.violations.begin(), out.violations.end());
  return out;
}

double move_duration(double max_distance, double t0) {
  if (max_distance < 0.0) {
    throw InvalidArgument("negative move distance");
  }
  return t0 * std::sqrt(max_distance);
}

double max_displacement(const AodState& before, const AodState& after) {
  double d = 0.0;
  for (const auto& [site, atom] : after.occupied) {
    if (before.occupied.contains(site)) {
      d = std::max(d, distance(before.position(site), after.position(site)));
    }
  }
  return d;
}

void to_json(nlohmann::json& j, const FpqaConfig& c) {
  j = nlohmann::json{{"slm_rows", c.slm_rows},
                     {"slm_cols", c.slm_cols},
                     {"aod_rows", c.aod_rows},
                     {"aod_cols", c.aod_cols},
                     {"site_spacing", c.site_spacing},
                     {"rydberg_radius", c.rydberg_radius},
                     {"separation_factor", c.separation_factor},
                     {"interaction_offset", c.interaction_offset}};
}

void from_json(const nlohmann::json& j, FpqaConfig& c) {
  FpqaConfig d;
  c.slm_rows = j.value("slm_rows", d.slm_rows);
  c.slm_cols = j.value("slm_cols", d.slm_cols);
  c.aod_rows = j.value("aod_rows", c.slm_rows);
  c.aod_cols = j.value("aod_cols", c.slm_cols);
  c.site_spacing = j.value("site_spacing", d.site_spacing);
  c.rydberg_radius = j.value("rydberg_radius", d.rydberg_radius);
  c.separation_factor = j.value("separation_factor", d.separation_factor);
  c.interaction_offset = j.value("interaction_offset", d.interaction_offset);
}

void to_json(nlohmann::json& j, const Site& s) { j = nlohmann::json::array({s.row, s.col}); }

void from_json(const nlohmann::json& j, Site& s) {
  s.row = j.at(0).get<std::size_t>();
  s.col = j.at(1).get<std::size_t>();
}

void to_json(nlohmann::json& j, const AodState& s) {
  nlohmann::json occ = nlohmann::json::array();
  for (const auto& [site, atom] : s.occupied) {
    occ.push_back({{"row", site.row}, {"col", site.col}, {"atom", atom}});
  }
  j = nlohmann::json{{"row_y", s.row_y}, {"col_x", s.col_x}, {"occupied", occ}};
}

void from_json(const nlohmann::json& j, AodState& s) {
  s.row_y = j.at("row_y").get<std::vector<double>>();
  s.col_x = j.at("col_x").get<std::vector<double>>();
  s.occupied.clear();
  for (const auto& o : j.at("occupied")) {
    s.occupied.emplace(Site{o.at("row").get<std::size_t>(), o.at("col").get<std::size_t>()},
                       o.at("atom").get<AtomId>());
  }
}

} // namespace qpilot
