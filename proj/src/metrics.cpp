#include "qpilot/metrics.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "qpilot/error.hpp"

namespace qpilot {

Metrics evaluate(const Schedule& s, bool check) {
  if (check) {
    const auto violations = validate(s);
    if (!violations.empty()) {
      const Violation& v = violations.front();
      throw InvalidScheduleError(std::to_string(violations.size()) + " violation(s), first at stage " +
                                 std::to_string(v.stage) + ": " + std::string(to_string(v.kind)) +
                                 " " + v.detail);
    }
  }
  Metrics m;
  const double diag = s.config.array_diagonal();
  std::size_t live = s.initial_aod.occupied.size();
  std::size_t peak = live;
  for (const Stage& st : s.stages) {
    if (const auto* r = std::get_if<RamanStage>(&st)) {
      m.g1 += r->ops.size();
    } else if (const auto* y = std::get_if<RydbergStage>(&st)) {
      if (!y->pairs.empty()) {
        ++m.depth;
        m.g2 += y->pairs.size();
        ++m.parallelism_hist[y->pairs.size()];
      }
    } else if (const auto* mv = std::get_if<MoveStage>(&st)) {
      m.stage_distances.push_back(diag > 0.0 ? mv->max_distance / diag : 0.0);
    } else if (const auto* t = std::get_if<TransferStage>(&st)) {
      for (const Transfer& tr : t->transfers) {
        live = tr.load ? live + 1 : live - 1;
        peak = std::max(peak, live);
      }
    }
  }
  m.n_atoms = s.n_qubits + peak;
  return m;
}

void NoiseParams::check() const {
  if (!(f1 > 0.0 && f1 <= 1.0) || !(f2 > 0.0 && f2 <= 1.0)) {
    throw InvalidArgument("gate fidelities must lie in (0, 1]");
  }
  if (!(t0 > 0.0) || !(t2 > 0.0)) {
    throw InvalidArgument("t0 and t2 must be positive");
  }
}

double error_rate(const Metrics& m, const NoiseParams& p, ExponentMode mode) {
  p.check();
  const double n = static_cast<double>(m.n_atoms);
  const double e2 = mode == ExponentMode::Literal ? n * static_cast<double>(m.depth)
                                                  : static_cast<double>(m.g2);
  double move_time = 0.0;
  for (const double d : m.stage_distances) {
    move_time += move_duration(d, p.t0);
  }
  const double log_f = e2 * std::log(p.f2) + static_cast<double>(m.g1) * std::log(p.f1) -
                       n * move_time / p.t2;
  return -std::expm1(log_f);
}

void to_json(nlohmann::json& j, const Metrics& m) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [k, v] : m.parallelism_hist) {
    hist[std::to_string(k)] = v;
  }
  j = {{"depth", m.depth},
       {"g1", m.g1},
       {"g2", m.g2},
       {"n_atoms", m.n_atoms},
       {"mean_parallelism", m.mean_parallelism()},
       {"stage_distances", m.stage_distances},
       {"parallelism_hist", std::move(hist)}};
}

void from_json(const nlohmann::json& j, Metrics& m) {
  m.depth = j.at("depth").get<std::size_t>();
  m.g1 = j.at("g1").get<std::size_t>();
  m.g2 = j.at("g2").get<std::size_t>();
  m.n_atoms = j.at("n_atoms").get<std::size_t>();
  m.stage_distances = j.at("stage_distances").get<std::vector<double>>();
  m.parallelism_hist.clear();
  for (const auto& [k, v] : j.at("parallelism_hist").items()) {
    m.parallelism_hist[std::stoul(k)] = v.get<std::size_t>();
  }
}

void to_json(nlohmann::json& j, const NoiseParams& p) {
  j = {{"f1", p.f1}, {"f2", p.f2}, {"t2", p.t2}, {"t0", p.t0}};
}

void from_json(const nlohmann::json& j, NoiseParams& p) {
  const NoiseParams d;
  p.f1 = j.value("f1", d.f1);
  p.f2 = j.value("f2", d.f2);
  p.t2 = j.value("t2", d.t2);
  p.t0 = j.value("t0", d.t0);
  p.check();
}

} // namespace qpilot
