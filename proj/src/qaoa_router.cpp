#include "qpilot/qaoa_router.hpp"

#include <algorithm>
#include <sstream>

#include "qpilot/error.hpp"

namespace qpilot {

EdgeSet::EdgeSet(std::size_t n_qubits, const std::vector<std::pair<Qubit, Qubit>>& edges)
    : adj_(n_qubits) {
  for (const auto& [u, v] : edges) {
    add(u, v);
  }
}

void EdgeSet::add(Qubit u, Qubit v) {
  if (u == v) {
    throw InvalidArgument("self-loop on qubit " + std::to_string(u));
  }
  if (u >= n_qubits() || v >= n_qubits()) {
    throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") out of range for " + std::to_string(n_qubits()) + " qubits");
  }
  if (!adj_[u].insert(v).second) {
    throw InvalidArgument("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  adj_[v].insert(u);
  ++size_;
}

bool EdgeSet::remove(Qubit u, Qubit v) {
  if (u >= n_qubits() || v >= n_qubits() || adj_[u].erase(v) == 0) {
    return false;
  }
  adj_[v].erase(u);
  --size_;
  return true;
}

bool EdgeSet::contains(Qubit u, Qubit v) const {
  return u < n_qubits() && adj_[u].contains(v);
}

std::pair<Qubit, Qubit> EdgeSet::first_edge() const {
  for (Qubit u = 0; u < n_qubits(); ++u) {
    const auto it = adj_[u].upper_bound(u);
    if (it != adj_[u].end()) {
      return {u, *it};
    }
  }
  throw InvalidArgument("first_edge of an empty edge set");
}

std::vector<std::pair<Qubit, Qubit>> EdgeSet::edges() const {
  std::vector<std::pair<Qubit, Qubit>> out;
  out.reserve(size_);
  for (Qubit u = 0; u < n_qubits(); ++u) {
    for (auto it = adj_[u].upper_bound(u); it != adj_[u].end(); ++it) {
      out.emplace_back(u, *it);
    }
  }
  return out;
}

EdgeSet parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<EdgeSet> g;
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    if (!(fields >> a)) {
      continue;
    }
    std::string extra;
    if (!(fields >> b) || (fields >> extra) || a < 0 || b < 0) {
      throw ParseError(lineno, "expected two non-negative integers");
    }
    if (!g) {
      g.emplace(static_cast<std::size_t>(a));
      expected = static_cast<std::size_t>(b);
      continue;
    }
    try {
      g->add(static_cast<Qubit>(a), static_cast<Qubit>(b));
    } catch (const InvalidArgument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!g) {
    throw ParseError(lineno, "missing 'n m' header");
  }
  if (g->size() != expected) {
    throw ParseError(lineno, "header announces " + std::to_string(expected) + " edges, found " +
                                 std::to_string(g->size()));
  }
  return *g;
}

std::string to_edge_list(const EdgeSet& g) {
  std::ostringstream out;
  out << g.n_qubits() << ' ' << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) {
    out << u << ' ' << v << '\n';
  }
  return out.str();
}

std::vector<std::size_t> StagePlan::parked_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < col_targets.size(); ++c) {
    if (!col_targets[c]) {
      out.push_back(c);
    }
  }
  return out;
}

StagePlan plan_stage(const EdgeSet& remaining, const FpqaConfig& cfg) {
  if (remaining.empty()) {
    throw InvalidArgument("plan_stage needs at least one remaining edge");
  }
  const std::size_t n = remaining.n_qubits();
  const std::size_t cols = cfg.slm_cols;
  StagePlan plan;
  plan.row_targets.assign(cfg.aod_rows, std::nullopt);
  plan.col_targets.assign(cfg.aod_cols, std::nullopt);

  // Each ancilla serves one edge per stage and each edge belongs to its lower
  // endpoint, so no edge can be matched twice within a stage.
  auto usable = [&](std::size_t q, std::size_t d) {
    return d > q && remaining.contains(static_cast<Qubit>(q), static_cast<Qubit>(d));
  };
  auto take = [&](std::size_t q, std::size_t d) {
    plan.matched.emplace_back(static_cast<Qubit>(q), static_cast<Qubit>(d));
  };

  const auto [a, b] = remaining.first_edge();
  const std::size_t r0 = a / cols;
  const std::size_t data_row = b / cols;
  take(a, b);
  plan.row_targets[r0] = data_row;
  plan.col_targets[a % cols] = b % cols;

  // First row: the next AOD column may join only if its ancilla has a partner
  // further right in the seed's SLM row. A gap would leave an idle ancilla
  // inside the array, within the separation radius of some atom.
  const std::size_t first_col = a % cols;
  std::size_t last_col = first_col;
  std::size_t last_target = b % cols;
  for (std::size_t c = first_col + 1; c < cols && r0 * cols + c < n; ++c) {
    const std::size_t q = r0 * cols + c;
    const auto& nb = remaining.neighbours(static_cast<Qubit>(q));
    const auto it = std::find_if(nb.begin(), nb.end(), [&](Qubit d) {
      return d / cols == data_row && d % cols > last_target && usable(q, d);
    });
    if (it == nb.end()) {
      break;
    }
    take(q, *it);
    plan.col_targets[c] = *it % cols;
    last_col = c;
    last_target = *it % cols;
  }

  // Later rows keep the column placement and only shift vertically. A row may
  // sit at an SLM row below the previous one where every one of its ancillas
  // faces either a remaining partner or an empty site; it takes the one with
  // the most pairs, the nearest on ties. A row that fits nowhere ends the scan
  // since parked rows can only leave past the array edge.
  auto row_pairs_at = [&](std::size_t r, std::size_t target_row) {
    std::vector<std::pair<std::size_t, std::size_t>> row_pairs;
    for (std::size_t c = first_col; c <= last_col; ++c) {
      const std::size_t q = r * cols + c;
      const std::size_t d = target_row * cols + *plan.col_targets[c];
      if (q >= n || d >= n) {
        continue;
      }
      if (!usable(q, d)) {
        return std::vector<std::pair<std::size_t, std::size_t>>{};
      }
      row_pairs.emplace_back(q, d);
    }
    return row_pairs;
  };
  std::size_t prev = data_row;
  for (std::size_t r = r0 + 1; r * cols < n && r < cfg.aod_rows; ++r) {
    std::vector<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_row = 0;
    for (std::size_t t = prev + 1; t < cfg.slm_rows; ++t) {
      auto pairs = row_pairs_at(r, t);
      if (pairs.size() > best.size()) {
        best = std::move(pairs);
        best_row = t;
      }
    }
    if (best.empty()) {
      break;
    }
    for (const auto& [q, d] : best) {
      take(q, d);
    }
    plan.row_targets[r] = best_row;
    prev = best_row;
  }
  return plan;
}

AodLines stage_layout(const StagePlan& plan, const FpqaConfig& cfg) {
  const double s = cfg.site_spacing;
  const double off = cfg.parking_offset();
  AodLines lines;
  lines.row_y.resize(plan.row_targets.size());
  lines.col_x.resize(plan.col_targets.size());

  auto fill = [&](const std::vector<std::optional<std::size_t>>& targets, std::vector<double>& out,
                  double edge, double shift) {
    std::size_t first = targets.size();
    std::size_t last = 0;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (targets[k]) {
        first = std::min(first, k);
        last = k;
      }
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (targets[k]) {
        out[k] = static_cast<double>(*targets[k]) * s + shift;
      } else if (k < first) {
        out[k] = -s * static_cast<double>(first - k);
      } else {
        out[k] = edge + s * static_cast<double>(k - (first == targets.size() ? 0 : last) + 1);
      }
    }
  };
  fill(plan.row_targets, lines.row_y, cfg.max_y(), 0.0);
  fill(plan.col_targets, lines.col_x, cfg.max_x(), off);
  return lines;
}

AodLines home_layout(const FpqaConfig& cfg) {
  StagePlan p;
  p.row_targets.assign(cfg.aod_rows, std::nullopt);
  p.col_targets.assign(cfg.aod_cols, std::nullopt);
  for (std::size_t r = 0; r < std::min(cfg.aod_rows, cfg.slm_rows); ++r) {
    p.row_targets[r] = r;
  }
  for (std::size_t c = 0; c < std::min(cfg.aod_cols, cfg.slm_cols); ++c) {
    p.col_targets[c] = c;
  }
  return stage_layout(p, cfg);
}

Circuit qaoa_circuit(const EdgeSet& g, double gamma) {
  Circuit c(g.n_qubits());
  for (const auto& [u, v] : g.edges()) {
    c.add(Gate::zz(u, v, gamma));
  }
  return c;
}

Schedule route_qaoa(const EdgeSet& g, const FpqaConfig& cfg, double gamma,
                    std::vector<StagePlan>* trace) {
  cfg.check();
  const std::size_t n = g.n_qubits();
  const std::size_t rows = cfg.slm_cols == 0 ? 0 : (n + cfg.slm_cols - 1) / cfg.slm_cols;
  if (n > 0 && (rows > cfg.aod_rows || std::min(n, cfg.slm_cols) > cfg.aod_cols)) {
    throw CapacityError("AOD grid cannot host one ancilla per qubit");
  }
  const AodLines home = home_layout(cfg);
  ScheduleBuilder b(cfg, n, AodState{home.row_y, home.col_x, {}});

  std::vector<AtomId> anc(n);
  std::vector<Transfer> load;
  std::vector<Transfer> retire;
  std::vector<AtomPair> copies;
  for (Qubit q = 0; q < n; ++q) {
    anc[q] = b.allocate_ancilla();
    const Site crossing{q / cfg.slm_cols, q % cfg.slm_cols};
    load.push_back({anc[q], crossing, true});
    retire.push_back({anc[q], crossing, false});
    copies.emplace_back(q, anc[q]);
  }
  b.transfer(std::move(load));

  // exp(-i g/2 ZZ) = exp(-i g/2) Rz(g) x Rz(g) . CPhase(-2g), so each qubit
  // takes Rz(g * degree) once and each edge a controlled phase of -2g.
  std::vector<LocalOp> rz;
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [u, v] : g.edges()) {
    ++deg[u];
    ++deg[v];
  }
  for (Qubit q = 0; q < n; ++q) {
    if (deg[q] > 0) {
      rz.push_back({GateKind::RZ, gamma * static_cast<double>(deg[q]), q});
    }
  }
  b.raman(std::move(rz));
  b.cnot_layer(copies);

  EdgeSet remaining = g;
  while (!remaining.empty()) {
    StagePlan plan = plan_stage(remaining, cfg);
    const AodLines at = stage_layout(plan, cfg);
    std::vector<AtomPair> pairs;
    for (const auto& [u, v] : plan.matched) {
      pairs.emplace_back(anc[u], v);
      remaining.remove(u, v);
    }
    b.move(at.row_y, at.col_x);
    b.rydberg(std::move(pairs), -2.0 * gamma);
    if (trace != nullptr) {
      trace->push_back(std::move(plan));
    }
  }
  b.move(home.row_y, home.col_x);
  b.cnot_layer(copies);
  b.transfer(std::move(retire));
  b.measure();
  return std::move(b).finish();
}

} // namespace qpilot
