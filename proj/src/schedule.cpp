#include "qpilot/schedule.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qpilot/detail/overloaded.hpp"
#include "qpilot/fuse.hpp"
#include "qpilot/error.hpp"

namespace qpilot {

namespace {

using detail::Overloaded;

std::vector<PlacedAtom> live_atoms(const Schedule& s, const AodState& aod) {
  std::vector<PlacedAtom> atoms;
  atoms.reserve(s.initial_layout.slm_atoms.size() + aod.occupied.size());
  for (const auto& [q, site] : s.initial_layout.slm_atoms) {
    atoms.push_back({q, s.config.site_position(site)});
  }
  for (const auto& [crossing, atom] : aod.occupied) {
    atoms.push_back({atom, aod.position(crossing)});
  }
  return atoms;
}

std::string pair_str(const AtomPair& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

} // namespace

std::string_view to_string(Violation::Kind k) {
  switch (k) {
  case Violation::Kind::MovementOrder: return "movement-order";
  case Violation::Kind::RydbergSeparation: return "rydberg-separation";
  case Violation::Kind::UnintendedCoupling: return "unintended-coupling";
  case Violation::Kind::MissingCoupling: return "missing-coupling";
  case Violation::Kind::UnrecycledAncilla: return "unrecycled-ancilla";
  case Violation::Kind::TransferConflict: return "transfer-conflict";
  case Violation::Kind::UnknownAtom: return "unknown-atom";
  case Violation::Kind::DimensionMismatch: return "dimension-mismatch";
  }
  return "unknown";
}

std::vector<Violation> validate(const Schedule& s) {
  std::vector<Violation> out;
  AodState aod = s.initial_aod;
  std::set<AtomId> live;
  std::set<AtomId> ever;
  for (const auto& [q, site] : s.initial_layout.slm_atoms) {
    live.insert(q);
    ever.insert(q);
  }
  for (const auto& [crossing, atom] : aod.occupied) {
    live.insert(atom);
    ever.insert(atom);
  }
  auto is_ancilla = [&](AtomId a) { return a >= s.n_qubits; };
  auto report_unrecycled = [&](std::size_t stage) {
    for (const auto& [crossing, atom] : aod.occupied) {
      out.push_back({Violation::Kind::UnrecycledAncilla, stage,
                     "ancilla " + std::to_string(atom) + " still loaded"});
    }
  };

  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    std::visit(
        Overloaded{
            [&](const RamanStage& st) {
              for (const LocalOp& op : st.ops) {
                if (!live.contains(op.atom)) {
                  out.push_back({Violation::Kind::UnknownAtom, i,
                                 "Raman gate on absent atom " + std::to_string(op.atom)});
                }
              }
            },
            [&](const MoveStage& st) {
              AodState next = aod;
              next.row_y = st.row_y;
              next.col_x = st.col_x;
              if (next.row_y.size() != aod.row_y.size() || next.col_x.size() != aod.col_x.size()) {
                out.push_back({Violation::Kind::DimensionMismatch, i, "AOD dimensions changed"});
                return;
              }
              if (const auto v = check_move(aod, next)) {
                out.push_back({Violation::Kind::MovementOrder, i, v->describe()});
              }
              aod = std::move(next);
            },
            [&](const RydbergStage& st) {
              std::vector<AtomPair> intended;
              intended.reserve(st.pairs.size());
              for (const auto& p : st.pairs) {
                intended.push_back(std::minmax(p.first, p.second));
                for (const AtomId a : {p.first, p.second}) {
                  if (!live.contains(a)) {
                    out.push_back({Violation::Kind::UnknownAtom, i,
                                   "Rydberg pair references absent atom " + std::to_string(a)});
                  }
                }
              }
              std::sort(intended.begin(), intended.end());
              const auto atoms = live_atoms(s, aod);
              const RydbergPairs rp = rydberg_pairs(atoms, s.config);
              for (const auto& p : rp.violations) {
                out.push_back({Violation::Kind::RydbergSeparation, i,
                               "atoms " + pair_str(p) + " inside the separation zone"});
              }
              std::vector<AtomPair> extra;
              std::vector<AtomPair> missing;
              std::set_difference(rp.coupled.begin(), rp.coupled.end(), intended.begin(),
                                  intended.end(), std::back_inserter(extra));
              std::set_difference(intended.begin(), intended.end(), rp.coupled.begin(),
                                  rp.coupled.end(), std::back_inserter(missing));
              for (const auto& p : extra) {
                out.push_back({Violation::Kind::UnintendedCoupling, i,
                               "atoms " + pair_str(p) + " coupled without intent"});
              }
              for (const auto& p : missing) {
                out.push_back({Violation::Kind::MissingCoupling, i,
                               "intended pair " + pair_str(p) + " not within r_b"});
              }
              std::set<AtomId> seen;
              for (const auto& p : rp.coupled) {
                for (const AtomId a : {p.first, p.second}) {
                  if (!seen.insert(a).second) {
                    out.push_back({Violation::Kind::UnintendedCoupling, i,
                                   "atom " + std::to_string(a) + " coupled to several atoms"});
                  }
                }
              }
            },
            [&](const TransferStage& st) {
              for (const Transfer& t : st.transfers) {
                if (t.crossing.row >= aod.row_y.size() || t.crossing.col >= aod.col_x.size()) {
                  out.push_back({Violation::Kind::TransferConflict, i, "crossing outside AOD grid"});
                  continue;
                }
                if (t.load) {
                  if (!is_ancilla(t.atom) || ever.contains(t.atom)) {
                    out.push_back({Violation::Kind::TransferConflict, i,
                                   "atom " + std::to_string(t.atom) + " is not a fresh ancilla"});
                  } else if (aod.occupied.contains(t.crossing)) {
                    out.push_back({Violation::Kind::TransferConflict, i,
                                   "crossing already occupied for atom " + std::to_string(t.atom)});
                  } else {
                    aod.occupied.emplace(t.crossing, t.atom);
                    live.insert(t.atom);
                    ever.insert(t.atom);
                  }
                } else {
                  const auto it = aod.occupied.find(t.crossing);
                  if (it == aod.occupied.end() || it->second != t.atom) {
                    out.push_back({Violation::Kind::TransferConflict, i,
                                   "atom " + std::to_string(t.atom) + " not at retire crossing"});
                  } else {
                    aod.occupied.erase(it);
                    live.erase(t.atom);
                  }
                }
              }
            },
            [&](const MeasureStage&) { report_unrecycled(i); },
        },
        s.stages[i]);
  }
  if (s.stages.empty() || !std::holds_alternative<MeasureStage>(s.stages.back())) {
    report_unrecycled(s.stages.size());
  }
  return out;
}

std::size_t depth(const Schedule& s) {
  return static_cast<std::size_t>(std::count_if(s.stages.begin(), s.stages.end(), [](const Stage& st) {
    const auto* r = std::get_if<RydbergStage>(&st);
    return r != nullptr && !r->pairs.empty();
  }));
}

std::string movement_csv(const Schedule& s) {
  std::ostringstream out;
  out.precision(10);
  out << "stage,atom,kind,x,y\n";
  AodState aod = s.initial_aod;
  auto dump = [&](std::size_t stage) {
    for (const auto& [q, site] : s.initial_layout.slm_atoms) {
      const Point p = s.config.site_position(site);
      out << stage << ',' << q << ",slm," << p.x << ',' << p.y << '\n';
    }
    for (const auto& [crossing, atom] : aod.occupied) {
      const Point p = aod.position(crossing);
      out << stage << ',' << atom << ",aod," << p.x << ',' << p.y << '\n';
    }
  };
  dump(0);
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    if (const auto* m = std::get_if<MoveStage>(&s.stages[i])) {
      aod.row_y = m->row_y;
      aod.col_x = m->col_x;
      dump(i + 1);
    } else if (const auto* t = std::get_if<TransferStage>(&s.stages[i])) {
      for (const Transfer& tr : t->transfers) {
        if (tr.load) {
          aod.occupied[tr.crossing] = tr.atom;
        } else {
          aod.occupied.erase(tr.crossing);
        }
      }
      dump(i + 1);
    }
  }
  return out.str();
}

ScheduleBuilder::ScheduleBuilder(const FpqaConfig& cfg, std::size_t n_qubits, AodState initial_aod)
    : aod_(std::move(initial_aod)), next_ancilla_(static_cast<AtomId>(n_qubits)) {
  schedule_.config = cfg;
  schedule_.n_qubits = n_qubits;
  schedule_.initial_layout = reading_order_mapping(n_qubits, cfg);
  for (const auto& [crossing, atom] : aod_.occupied) {
    schedule_.initial_layout.aod_atoms.emplace(atom, crossing);
    next_ancilla_ = std::max(next_ancilla_, atom + 1);
  }
  schedule_.initial_aod = aod_;
}

void ScheduleBuilder::move(std::vector<double> row_y, std::vector<double> col_x) {
  if (row_y == aod_.row_y && col_x == aod_.col_x) {
    return;
  }
  AodState next = aod_;
  next.row_y = std::move(row_y);
  next.col_x = std::move(col_x);
  const double d = max_displacement(aod_, next);
  schedule_.stages.emplace_back(MoveStage{next.row_y, next.col_x, d});
  aod_ = std::move(next);
}

void ScheduleBuilder::raman(std::vector<LocalOp> ops) {
  if (!ops.empty()) {
    schedule_.stages.emplace_back(RamanStage{std::move(ops)});
  }
}

void ScheduleBuilder::rydberg(std::vector<AtomPair> pairs, double phase) {
  if (pairs.empty()) {
    return;
  }
  for (auto& p : pairs) {
    if (p.first > p.second) {
      std::swap(p.first, p.second);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  schedule_.stages.emplace_back(RydbergStage{std::move(pairs), phase});
}

void ScheduleBuilder::transfer(std::vector<Transfer> transfers) {
  if (transfers.empty()) {
    return;
  }
  for (const Transfer& t : transfers) {
    if (t.load) {
      aod_.occupied[t.crossing] = t.atom;
    } else {
      aod_.occupied.erase(t.crossing);
    }
  }
  schedule_.stages.emplace_back(TransferStage{std::move(transfers)});
}

void ScheduleBuilder::measure() { schedule_.stages.emplace_back(MeasureStage{}); }

void ScheduleBuilder::cnot_layer(const std::vector<AtomPair>& control_target) {
  if (control_target.empty()) {
    return;
  }
  std::vector<LocalOp> hs;
  hs.reserve(control_target.size());
  for (const auto& [c, t] : control_target) {
    hs.push_back({GateKind::H, 0.0, t});
  }
  raman(hs);
  rydberg(control_target);
  raman(std::move(hs));
}

Schedule ScheduleBuilder::finish() && { return fuse_local_ops(std::move(schedule_)); }

void to_json(nlohmann::json& j, const Stage& s) {
  std::visit(Overloaded{
                 [&](const RamanStage& st) {
                   nlohmann::json ops = nlohmann::json::array();
                   for (const LocalOp& op : st.ops) {
                     nlohmann::json o{{"gate", to_string(op.kind)}, {"atom", op.atom}};
                     if (has_angle(op.kind)) {
                       o["angle"] = op.angle;
                     }
                     if (op.kind == GateKind::U3) {
                       o["theta"] = op.angle;
                       o["phi"] = op.phi;
                       o["lambda"] = op.lambda;
                     }
                     ops.push_back(std::move(o));
                   }
                   j = {{"kind", "raman"}, {"ops", std::move(ops)}};
                 },
                 [&](const MoveStage& st) {
                   j = {{"kind", "move"},
                        {"row_y", st.row_y},
                        {"col_x", st.col_x},
                        {"max_distance", st.max_distance}};
                 },
                 [&](const RydbergStage& st) {
                   nlohmann::json pairs = nlohmann::json::array();
                   for (const auto& [a, b] : st.pairs) {
                     pairs.push_back({a, b});
                   }
                   j = {{"kind", "rydberg"}, {"pairs", std::move(pairs)}, {"phase", st.phase}};
                 },
                 [&](const TransferStage& st) {
                   nlohmann::json ts = nlohmann::json::array();
                   for (const Transfer& t : st.transfers) {
                     ts.push_back({{"atom", t.atom},
                                   {"crossing", t.crossing},
                                   {"direction", t.load ? "load" : "retire"}});
                   }
                   j = {{"kind", "transfer"}, {"transfers", std::move(ts)}};
                 },
                 [&](const MeasureStage&) { j = {{"kind", "measure"}}; },
             },
             s);
}

void from_json(const nlohmann::json& j, Stage& s) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "raman") {
    RamanStage st;
    for (const auto& o : j.at("ops")) {
      LocalOp op{gate_kind_from_string(o.at("gate").get<std::string>()), o.value("angle", 0.0),
                 o.at("atom").get<AtomId>()};
      if (op.kind == GateKind::U3) {
        op.angle = o.at("theta").get<double>();
        op.phi = o.at("phi").get<double>();
        op.lambda = o.at("lambda").get<double>();
      }
      st.ops.push_back(op);
    }
    s = std::move(st);
  } else if (kind == "move") {
    s = MoveStage{j.at("row_y").get<std::vector<double>>(), j.at("col_x").get<std::vector<double>>(),
                  j.value("max_distance", 0.0)};
  } else if (kind == "rydberg") {
    RydbergStage st;
    for (const auto& p : j.at("pairs")) {
      st.pairs.emplace_back(p.at(0).get<AtomId>(), p.at(1).get<AtomId>());
    }
    st.phase = j.value("phase", std::numbers::pi);
    s = std::move(st);
  } else if (kind == "transfer") {
    TransferStage st;
    for (const auto& t : j.at("transfers")) {
      st.transfers.push_back(
          {t.at("atom").get<AtomId>(), t.at("crossing").get<Site>(), t.at("direction") == "load"});
    }
    s = std::move(st);
  } else if (kind == "measure") {
    s = MeasureStage{};
  } else {
    throw InvalidArgument("unknown stage kind '" + kind + "'");
  }
}

void to_json(nlohmann::json& j, const Schedule& s) {
  nlohmann::json slm = nlohmann::json::array();
  for (const auto& [q, site] : s.initial_layout.slm_atoms) {
    slm.push_back({{"qubit", q}, {"site", site}});
  }
  j = nlohmann::json{{"format", "qpilot-schedule"},
                     {"version", 1},
                     {"config", s.config},
                     {"n_qubits", s.n_qubits},
                     {"slm_atoms", std::move(slm)},
                     {"initial_aod", s.initial_aod},
                     {"stages", s.stages}};
}

void from_json(const nlohmann::json& j, Schedule& s) {
  s.config = j.at("config").get<FpqaConfig>();
  s.n_qubits = j.at("n_qubits").get<std::size_t>();
  s.initial_layout = {};
  for (const auto& a : j.at("slm_atoms")) {
    s.initial_layout.slm_atoms.emplace(a.at("qubit").get<Qubit>(), a.at("site").get<Site>());
  }
  s.initial_aod = j.at("initial_aod").get<AodState>();
  for (const auto& [crossing, atom] : s.initial_aod.occupied) {
    s.initial_layout.aod_atoms.emplace(atom, crossing);
  }
  s.stages = j.at("stages").get<std::vector<Stage>>();
}

} // namespace qpilot
