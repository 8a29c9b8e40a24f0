#include "qpilot/generic_router.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <utility>

#include "qpilot/error.hpp"
#include "qpilot/placement.hpp"

namespace qpilot {

namespace {

bool ordered(Site a, Site b) { return a.col <= b.col && a.row <= b.row; }

bool chain_ok(const SubsetGate& a, const SubsetGate& b, const FpqaConfig& cfg) {
  return ordered(slm_site(a.control, cfg), slm_site(b.control, cfg)) &&
         ordered(slm_site(a.target, cfg), slm_site(b.target, cfg));
}

std::vector<Site> sites_of(const LegalSubset& s, bool controls, const FpqaConfig& cfg) {
  std::vector<Site> out;
  out.reserve(s.gates.size());
  for (const SubsetGate& g : s.gates) {
    out.push_back(slm_site(controls ? g.control : g.target, cfg));
  }
  return out;
}

} // namespace

bool is_legal(const LegalSubset& subset, const SubsetGate& candidate, const FpqaConfig& cfg) {
  const auto pos = std::upper_bound(
      subset.gates.begin(), subset.gates.end(), candidate,
      [](const SubsetGate& a, const SubsetGate& b) { return a.control < b.control; });
  if (pos != subset.gates.begin() && !chain_ok(*std::prev(pos), candidate, cfg)) {
    return false;
  }
  return pos == subset.gates.end() || chain_ok(candidate, *pos, cfg);
}

LegalSubset select_legal_subset(const Circuit& c, std::span<const GateId> front,
                                const FpqaConfig& cfg) {
  std::vector<SubsetGate> candidates;
  for (const GateId id : front) {
    const Gate& g = c[id];
    if (g.two_qubit()) {
      const auto [lo, hi] = std::minmax(g.qubits[0], g.qubits[1]);
      candidates.push_back({id, lo, hi});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const SubsetGate& a, const SubsetGate& b) {
    return std::tie(a.control, a.target, a.id) < std::tie(b.control, b.target, b.id);
  });

  const std::size_t cap = std::min(cfg.aod_rows, cfg.aod_cols);
  LegalSubset out;
  std::vector<bool> busy(c.n_qubits(), false);
  for (const SubsetGate& cand : candidates) {
    if (out.gates.size() == cap) {
      break;
    }
    if (busy[cand.control] || busy[cand.target] || !is_legal(out, cand, cfg)) {
      continue;
    }
    const auto pos = std::upper_bound(
        out.gates.begin(), out.gates.end(), cand,
        [](const SubsetGate& a, const SubsetGate& b) { return a.control < b.control; });
    out.gates.insert(pos, cand);
    busy[cand.control] = busy[cand.target] = true;
  }
  for (std::size_t k = 0; k < out.gates.size(); ++k) {
    out.ancilla_slots.push_back({k, k});
  }
  return out;
}

Schedule route_generic(const Circuit& input, const FpqaConfig& cfg,
                       std::vector<LegalSubset>* trace) {
  cfg.check();
  if (std::min(cfg.aod_rows, cfg.aod_cols) == 0) {
    throw CapacityError("AOD grid has no crossing for an ancilla");
  }
  const Circuit c = decompose_to_cz_basis(input, false);
  const AodLines idle = parked_lines(cfg);
  ScheduleBuilder b(cfg, c.n_qubits(), AodState{idle.row_y, idle.col_x, {}});

  // Per-qubit gate queues; a gate is in the front layer when it heads the
  // queue of every qubit it touches.
  std::vector<std::deque<GateId>> queues(c.n_qubits());
  for (GateId id = 0; id < c.size(); ++id) {
    for (const Qubit q : c[id].qubits) {
      queues[q].push_back(id);
    }
  }
  auto pop = [&](GateId id) {
    for (const Qubit q : c[id].qubits) {
      queues[q].pop_front();
    }
  };
  auto front_2q = [&] {
    std::vector<GateId> out;
    for (Qubit q = 0; q < c.n_qubits(); ++q) {
      if (queues[q].empty()) {
        continue;
      }
      const Gate& g = c[queues[q].front()];
      const Qubit other = g.qubits[0] == q ? g.qubits[1] : g.qubits[0];
      if (q < other && queues[other].front() == queues[q].front()) {
        out.push_back(queues[q].front());
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::size_t remaining = c.size();
  std::vector<LocalOp> pending;
  while (remaining > 0) {
    for (Qubit q = 0; q < c.n_qubits(); ++q) {
      while (!queues[q].empty() && !c[queues[q].front()].two_qubit()) {
        const Gate& g = c[queues[q].front()];
        pending.push_back({g.kind, g.angle, q});
        queues[q].pop_front();
        --remaining;
      }
    }
    if (remaining == 0) {
      break;
    }
    const std::vector<GateId> front = front_2q();
    b.raman(std::exchange(pending, {}));

    const LegalSubset subset = select_legal_subset(c, front, cfg);
    if (trace != nullptr) {
      trace->push_back(subset);
    }
    const std::vector<Site> copy_sites = sites_of(subset, true, cfg);
    const std::vector<Site> gate_sites = sites_of(subset, false, cfg);
    const AodLines copy_at = place_on_diagonal(copy_sites, cfg);
    const AodLines gate_at = place_on_diagonal(gate_sites, cfg);

    std::vector<Transfer> load;
    std::vector<Transfer> retire;
    std::vector<AtomPair> copies;
    std::vector<AtomPair> gates;
    for (std::size_t k = 0; k < subset.gates.size(); ++k) {
      const SubsetGate& g = subset.gates[k];
      const AtomId anc = b.allocate_ancilla();
      load.push_back({anc, subset.ancilla_slots[k], true});
      retire.push_back({anc, subset.ancilla_slots[k], false});
      copies.emplace_back(g.control, anc);
      gates.emplace_back(anc, g.target);
      pop(g.id);
      --remaining;
    }
    b.move(copy_at.row_y, copy_at.col_x);
    b.transfer(std::move(load));
    b.cnot_layer(copies);
    b.move(gate_at.row_y, gate_at.col_x);
    b.rydberg(std::move(gates));
    b.move(copy_at.row_y, copy_at.col_x);
    b.cnot_layer(copies);
    b.transfer(std::move(retire));
  }
  b.raman(std::move(pending));
  b.measure();
  return std::move(b).finish();
}

} // namespace qpilot
