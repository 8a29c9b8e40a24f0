#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "qpilot/bench.hpp"
#include "qpilot/fuse.hpp"
#include "qpilot/generic_router.hpp"
#include "qpilot/placement.hpp"
#include "qpilot/schedule.hpp"
#include "qpilot/statevector.hpp"

using namespace qpilot;

namespace {

Schedule bare(std::size_t n) {
  Schedule s;
  s.config = FpqaConfig::for_qubits(n);
  s.n_qubits = n;
  s.initial_layout = reading_order_mapping(n, s.config);
  const AodLines idle = parked_lines(s.config);
  s.initial_aod = AodState{idle.row_y, idle.col_x, {}};
  return s;
}

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  return std::any_of(v.begin(), v.end(), [k](const Violation& x) { return x.kind == k; });
}

ScheduleBuilder builder(std::size_t n) {
  const FpqaConfig cfg = FpqaConfig::for_qubits(n);
  const AodLines idle = parked_lines(cfg);
  return ScheduleBuilder(cfg, n, AodState{idle.row_y, idle.col_x, {}});
}

} // namespace

TEST(Validate, EmptyScheduleOk) {
  EXPECT_TRUE(validate(bare(4)).empty());
  EXPECT_TRUE(validate(Schedule{}).empty());
}

TEST(Validate, SwappedRowsIsOneMovementViolation) {
  Schedule s = bare(4);
  std::vector<double> rows = s.initial_aod.row_y;
  std::swap(rows[0], rows[1]);
  s.stages.emplace_back(MoveStage{rows, s.initial_aod.col_x, 1.0});
  const auto v = validate(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::MovementOrder);
  EXPECT_EQ(v[0].stage, 0u);
}

TEST(Validate, SampleCircuitScheduleOk) {
  const Schedule s = route_generic(fixtures::sample_circuit(), fixtures::sample_config());
  EXPECT_TRUE(validate(s).empty());
}

TEST(Validate, UnrecycledAncilla) {
  ScheduleBuilder b = builder(4);
  b.transfer({{b.allocate_ancilla(), Site{0, 0}, true}});
  b.measure();
  EXPECT_TRUE(has_kind(validate(std::move(b).finish()), Violation::Kind::UnrecycledAncilla));
}

TEST(Validate, MissingAndUnintendedCoupling) {
  // Data atoms sit 2.6 apart: a Rydberg pulse claiming they interact fails.
  Schedule s = bare(4);
  s.stages.emplace_back(RydbergStage{{{0, 1}}, std::numbers::pi});
  EXPECT_TRUE(has_kind(validate(s), Violation::Kind::MissingCoupling));

  // An ancilla parked on atom 0 couples even if the pulse lists nothing.
  ScheduleBuilder b = builder(4);
  const AtomId a = b.allocate_ancilla();
  const std::vector<Site> at{{0, 0}};
  const AodLines l = place_on_diagonal(at, FpqaConfig::for_qubits(4));
  b.move(l.row_y, l.col_x);
  b.transfer({{a, Site{0, 0}, true}});
  Schedule t = std::move(b).finish();
  t.stages.emplace_back(RydbergStage{{}, std::numbers::pi});
  EXPECT_TRUE(has_kind(validate(t), Violation::Kind::UnintendedCoupling));
}

TEST(Validate, SeparationZone) {
  Schedule s = bare(4);
  AodState aod = s.initial_aod;
  aod.occupied[{0, 0}] = 4;
  s.initial_aod = aod;
  s.initial_layout.aod_atoms[4] = {0, 0};
  // Ancilla 1.7 r_b to the right of atom 0.
  std::vector<double> cols = aod.col_x;
  std::vector<double> rows = aod.row_y;
  cols[0] = 1.7;
  rows[0] = 0.0;
  s.stages.emplace_back(MoveStage{rows, cols, 1.0});
  s.stages.emplace_back(RydbergStage{{}, std::numbers::pi});
  s.stages.emplace_back(TransferStage{{{4, Site{0, 0}, false}}});
  const auto v = validate(s);
  EXPECT_TRUE(has_kind(v, Violation::Kind::RydbergSeparation));
}

TEST(Validate, TransferConflictAndUnknownAtom) {
  ScheduleBuilder b = builder(4);
  b.transfer({{4, Site{0, 0}, true}});
  b.transfer({{5, Site{0, 0}, true}});
  const auto v = validate(std::move(b).finish());
  EXPECT_TRUE(has_kind(v, Violation::Kind::TransferConflict));

  Schedule s = bare(2);
  s.stages.emplace_back(RamanStage{{{GateKind::H, 0.0, 9}}});
  EXPECT_TRUE(has_kind(validate(s), Violation::Kind::UnknownAtom));
}

TEST(Depth, CountsNonEmptyRydbergStagesOnly) {
  Schedule s = bare(2);
  EXPECT_EQ(depth(s), 0u);
  s.stages.emplace_back(RydbergStage{{}, std::numbers::pi});
  s.stages.emplace_back(RamanStage{{{GateKind::H, 0.0, 0}}});
  EXPECT_EQ(depth(s), 0u);
}

TEST(Depth, SingleCzIsCopyGateRecycle) {
  const Schedule s = route_generic(Circuit(2, {Gate::cz(0, 1)}), FpqaConfig::for_qubits(2));
  EXPECT_EQ(depth(s), 3u);
}

TEST(Depth, InvariantUnderRamanAndMoveInsertion) {
  Schedule s = route_generic(random_circuit(6, 12, 4), FpqaConfig::for_qubits(6));
  const std::size_t d = depth(s);
  std::vector<Stage> padded;
  for (Stage& st : s.stages) {
    padded.emplace_back(RamanStage{{{GateKind::H, 0.0, 0}}});
    padded.push_back(std::move(st));
  }
  s.stages = std::move(padded);
  EXPECT_EQ(depth(s), d);
}

TEST(ScheduleJson, RoundTrip) {
  const Schedule s = route_generic(random_circuit(5, 10, 9), FpqaConfig::for_qubits(5));
  const nlohmann::json j = s;
  const Schedule back = nlohmann::json::parse(j.dump()).get<Schedule>();
  EXPECT_EQ(back, s);
  EXPECT_TRUE(validate(back).empty());
}

TEST(ScheduleJson, StageTags) {
  const Schedule s = route_generic(Circuit(2, {Gate::cnot(0, 1)}), FpqaConfig::for_qubits(2));
  const nlohmann::json j = s;
  std::set<std::string> kinds;
  for (const auto& st : j.at("stages")) {
    kinds.insert(st.at("kind").get<std::string>());
  }
  EXPECT_EQ(kinds, (std::set<std::string>{"raman", "move", "rydberg", "transfer", "measure"}));
}

TEST(MovementCsv, HeaderAndRows) {
  const Schedule s = route_generic(Circuit(2, {Gate::cz(0, 1)}), FpqaConfig::for_qubits(2));
  const std::string csv = movement_csv(s);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "stage,atom,kind,x,y");
  std::size_t aod_rows = 0;
  while (std::getline(in, line)) {
    aod_rows += line.find(",aod,") != std::string::npos;
  }
  EXPECT_GT(aod_rows, 0u);
}

TEST(Fuse, InversePairsVanish) {
  ScheduleBuilder b = builder(2);
  b.raman({{GateKind::H, 0.0, 0}, {GateKind::S, 0.0, 1}});
  b.raman({{GateKind::H, 0.0, 0}, {GateKind::Sdg, 0.0, 1}});
  b.measure();
  const Schedule s = std::move(b).finish();
  ASSERT_EQ(s.stages.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<MeasureStage>(s.stages[0]));
}

TEST(Fuse, HadamardSandwichBecomesRx) {
  ScheduleBuilder b = builder(1);
  b.raman({{GateKind::H, 0.0, 0}});
  b.raman({{GateKind::RZ, 0.4, 0}});
  b.raman({{GateKind::H, 0.0, 0}});
  const Schedule s = std::move(b).finish();
  ASSERT_EQ(s.stages.size(), 1u);
  const auto& ops = std::get<RamanStage>(s.stages[0]).ops;
  ASSERT_EQ(ops.size(), 1u);
  EXPECT_EQ(ops[0].kind, GateKind::RX);
  EXPECT_NEAR(ops[0].angle, 0.4, 1e-12);
}

TEST(Fuse, GenericProductIsU3AndExact) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    Circuit c(1);
    ScheduleBuilder b = builder(1);
    for (int k = 0; k < 4; ++k) {
      const Gate g = k % 2 ? Gate::rx(0, ang(rng)) : Gate::rz(0, ang(rng));
      c.add(g);
      b.raman({{g.kind, g.angle, 0}});
    }
    const Schedule s = std::move(b).finish();
    ASSERT_EQ(s.stages.size(), 1u);
    EXPECT_EQ(std::get<RamanStage>(s.stages[0]).ops.size(), 1u);
    EXPECT_GT(equivalence(c, s, 5, t), 1 - 1e-12);
  }
}

TEST(Fuse, RunsStopAtInteractions) {
  // H on the ancilla target must survive around the CZ that uses it.
  const Schedule s = route_generic(Circuit(2, {Gate::cnot(0, 1)}), FpqaConfig::for_qubits(2));
  std::size_t g1 = 0;
  for (const Stage& st : s.stages) {
    if (const auto* r = std::get_if<RamanStage>(&st)) {
      g1 += r->ops.size();
    }
  }
  EXPECT_GT(g1, 0u);
  EXPECT_GT(equivalence(Circuit(2, {Gate::cnot(0, 1)}), s), 1 - 1e-9);
}

TEST(Fuse, Idempotent) {
  const Schedule s = route_generic(random_circuit(5, 15, 2), FpqaConfig::for_qubits(5));
  EXPECT_EQ(fuse_local_ops(s).stages.size(), s.stages.size());
  EXPECT_TRUE(validate(fuse_local_ops(s)).empty());
}
