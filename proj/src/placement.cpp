#include "qpilot/placement.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "qpilot/error.hpp"

namespace qpilot {

AodLines parked_lines(const FpqaConfig& cfg) {
  const double s = cfg.site_spacing;
  AodLines out;
  out.row_y.resize(cfg.aod_rows);
  out.col_x.resize(cfg.aod_cols);
  for (std::size_t k = 0; k < cfg.aod_rows; ++k) {
    out.row_y[k] = cfg.max_y() + s * static_cast<double>(k + 2);
  }
  for (std::size_t k = 0; k < cfg.aod_cols; ++k) {
    out.col_x[k] = cfg.max_x() + s * static_cast<double>(k + 2);
  }
  return out;
}

AodLines place_on_diagonal(std::span<const Site> sites, const FpqaConfig& cfg) {
  if (sites.size() > cfg.aod_rows || sites.size() > cfg.aod_cols) {
    throw CapacityError(std::to_string(sites.size()) + " ancillas exceed the AOD diagonal");
  }
  AodLines out = parked_lines(cfg);
  // Per-axis budget so that the Euclidean offset stays within parking_offset.
  const double budget = cfg.parking_offset() * (1.0 / std::numbers::sqrt2);

  std::map<std::size_t, std::size_t> per_col;
  std::map<std::size_t, std::size_t> per_row;
  for (const Site& s : sites) {
    ++per_col[s.col];
    ++per_row[s.row];
  }
  std::map<std::size_t, std::size_t> seen_col;
  std::map<std::size_t, std::size_t> seen_row;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const Site s = sites[k];
    const Point p = cfg.site_position(s);
    const double jc = static_cast<double>(seen_col[s.col]++ + 1);
    const double jr = static_cast<double>(seen_row[s.row]++ + 1);
    out.col_x[k] = p.x + budget * jc / static_cast<double>(per_col[s.col] + 1);
    out.row_y[k] = p.y + budget * jr / static_cast<double>(per_row[s.row] + 1);
  }
  return out;
}

} // namespace qpilot
