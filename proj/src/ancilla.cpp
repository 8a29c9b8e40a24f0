#include "qpilot/ancilla.hpp"

#include <algorithm>
#include <set>

#include "qpilot/error.hpp"

namespace qpilot {

namespace {

std::vector<Stage> cnot_fragment(const std::vector<std::vector<AtomPair>>& layers) {
  std::vector<Stage> out;
  for (const auto& layer : layers) {
    if (layer.empty()) {
      continue;
    }
    RamanStage h;
    for (const auto& [c, t] : layer) {
      h.ops.push_back({GateKind::H, 0.0, t});
    }
    RydbergStage cz;
    for (const auto& [c, t] : layer) {
      cz.pairs.push_back(std::minmax(c, t));
    }
    std::sort(cz.pairs.begin(), cz.pairs.end());
    out.emplace_back(h);
    out.emplace_back(std::move(cz));
    out.emplace_back(std::move(h));
  }
  return out;
}

std::vector<std::vector<AtomPair>> copy_layers(std::span<const FanoutGroup> groups) {
  std::size_t width = 0;
  for (const auto& g : groups) {
    width = std::max(width, g.ancillas.size());
  }
  std::vector<std::vector<AtomPair>> layers(width);
  for (const auto& g : groups) {
    for (std::size_t k = 0; k < g.ancillas.size(); ++k) {
      layers[k].emplace_back(g.root, g.ancillas[k]);
    }
  }
  return layers;
}

} // namespace

std::vector<Stage> copy_stage(std::span<FanoutGroup> groups) {
  for (const auto& g : groups) {
    if (g.state != FanoutGroup::State::Fresh) {
      throw AncillaStateError("fan-out of root " + std::to_string(g.root) +
                              " targets ancillas that are not fresh");
    }
    std::set<AtomId> distinct(g.ancillas.begin(), g.ancillas.end());
    if (distinct.size() != g.ancillas.size()) {
      throw AncillaStateError("duplicate ancilla in fan-out group");
    }
  }
  auto out = cnot_fragment(copy_layers(groups));
  for (auto& g : groups) {
    g.state = FanoutGroup::State::Live;
  }
  return out;
}

std::vector<Stage> recycle_stage(std::span<FanoutGroup> groups) {
  for (const auto& g : groups) {
    if (g.state != FanoutGroup::State::Live) {
      throw AncillaStateError("recycle of root " + std::to_string(g.root) + " whose group is not live");
    }
  }
  auto layers = copy_layers(groups);
  std::reverse(layers.begin(), layers.end());
  auto out = cnot_fragment(layers);
  for (auto& g : groups) {
    g.state = FanoutGroup::State::Retired;
  }
  return out;
}

CzVariant select_cz_variant(const VariantAvailability& a) {
  if (a.adjacent && a.data_first && a.data_second) {
    return CzVariant::Original;
  }
  if (a.ancilla_first && a.data_second) {
    return CzVariant::AncillaFirst;
  }
  if (a.data_first && a.ancilla_second) {
    return CzVariant::AncillaSecond;
  }
  if (a.ancilla_first && a.ancilla_second) {
    return CzVariant::BothAncillas;
  }
  if (a.data_first && a.data_second) {
    return CzVariant::Original;
  }
  throw NoLegalVariant("no endpoint combination is available for this CZ");
}

AtomPair variant_endpoints(CzVariant v, AtomId j, AtomId j_anc, AtomId jp, AtomId jp_anc) {
  switch (v) {
  case CzVariant::AncillaFirst: return {j_anc, jp};
  case CzVariant::AncillaSecond: return {j, jp_anc};
  case CzVariant::BothAncillas: return {j_anc, jp_anc};
  case CzVariant::Original: return {j, jp};
  }
  return {j, jp};
}

std::vector<std::vector<AtomPair>> pack_cz_layers(std::size_t n, std::span<const AtomPair> pairs) {
  std::vector<std::vector<AtomPair>> layers;
  std::vector<std::set<AtomId>> busy;
  for (const auto& [j, jp] : pairs) {
    const AtomId ja = static_cast<AtomId>(n + j);
    const AtomId jpa = static_cast<AtomId>(n + jp);
    bool placed = false;
    for (std::size_t l = 0; l < layers.size() && !placed; ++l) {
      const VariantAvailability avail{!busy[l].contains(j), !busy[l].contains(ja),
                                      !busy[l].contains(jp), !busy[l].contains(jpa), false};
      try {
        const auto [a, b] = variant_endpoints(select_cz_variant(avail), j, ja, jp, jpa);
        layers[l].emplace_back(a, b);
        busy[l].insert(a);
        busy[l].insert(b);
        placed = true;
      } catch (const NoLegalVariant&) {
      }
    }
    if (!placed) {
      layers.push_back({{ja, jp}});
      busy.push_back({ja, jp});
    }
  }
  return layers;
}

Schedule protocol_schedule(std::size_t n, std::span<const AtomPair> pairs,
                           std::span<const CzVariant> variants) {
  if (pairs.size() != variants.size()) {
    throw InvalidArgument("one variant per CZ pair is required");
  }
  FpqaConfig cfg = FpqaConfig::for_qubits(n);
  cfg.aod_rows = cfg.aod_cols = std::max<std::size_t>(n, 1);
  AodState aod;
  for (std::size_t k = 0; k < cfg.aod_rows; ++k) {
    aod.row_y.push_back(static_cast<double>(k));
    aod.col_x.push_back(static_cast<double>(k));
  }
  ScheduleBuilder b(cfg, n, aod);

  std::vector<FanoutGroup> groups(n);
  std::vector<Transfer> load;
  std::vector<Transfer> retire;
  for (std::size_t q = 0; q < n; ++q) {
    const AtomId anc = b.allocate_ancilla();
    groups[q] = {static_cast<AtomId>(q), {anc}};
    load.push_back({anc, Site{q, q}, true});
    retire.push_back({anc, Site{q, q}, false});
  }
  b.transfer(load);
  std::vector<Stage> stages = copy_stage(groups);

  // Greedy layering of the chosen endpoints; CZs commute so order is free.
  std::vector<std::vector<AtomPair>> layers;
  std::vector<std::set<AtomId>> busy;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [j, jp] = pairs[i];
    const AtomPair e = variant_endpoints(variants[i], j, static_cast<AtomId>(n + j), jp,
                                         static_cast<AtomId>(n + jp));
    std::size_t l = 0;
    while (l < layers.size() && (busy[l].contains(e.first) || busy[l].contains(e.second))) {
      ++l;
    }
    if (l == layers.size()) {
      layers.emplace_back();
      busy.emplace_back();
    }
    layers[l].push_back(std::minmax(e.first, e.second));
    busy[l].insert(e.first);
    busy[l].insert(e.second);
  }
  for (auto& layer : layers) {
    std::sort(layer.begin(), layer.end());
    stages.emplace_back(RydbergStage{std::move(layer)});
  }
  auto rec = recycle_stage(groups);
  stages.insert(stages.end(), rec.begin(), rec.end());

  Schedule s = std::move(b).finish();
  s.stages.insert(s.stages.end(), stages.begin(), stages.end());
  s.stages.emplace_back(TransferStage{retire});
  s.stages.emplace_back(MeasureStage{});
  return s;
}

} // namespace qpilot
