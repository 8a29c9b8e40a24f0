#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "qpilot/bench.hpp"
#include "qpilot/compile.hpp"
#include "qpilot/error.hpp"
#include "qpilot/generic_router.hpp"
#include "qpilot/metrics.hpp"
#include "qpilot/qaoa_router.hpp"

using namespace qpilot;

namespace {

Metrics sample(std::size_t n, std::size_t t, std::size_t g1, std::size_t g2,
               std::vector<double> d) {
  Metrics m;
  m.n_atoms = n;
  m.depth = t;
  m.g1 = g1;
  m.g2 = g2;
  m.stage_distances = std::move(d);
  return m;
}

} // namespace

TEST(Evaluate, EmptyScheduleAllZero) {
  const Metrics m = evaluate(Schedule{});
  EXPECT_EQ(m, Metrics{});
  EXPECT_DOUBLE_EQ(m.mean_parallelism(), 0.0);
}

TEST(Evaluate, SingleCz) {
  const Schedule s = route_generic(Circuit(2, {Gate::cz(0, 1)}), FpqaConfig::for_qubits(2));
  const Metrics m = evaluate(s);
  EXPECT_EQ(m.g2, 3u);
  EXPECT_EQ(m.depth, 3u);
  EXPECT_EQ(m.n_atoms, 3u);
  EXPECT_EQ(m.parallelism_hist, (std::map<std::size_t, std::size_t>{{1, 3}}));
}

TEST(Evaluate, HistogramInvariants) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Schedule s = route_qaoa(random_graph(30, 0.2, seed), FpqaConfig::for_qubits(30));
    const Metrics m = evaluate(s);
    std::size_t pairs = 0;
    std::size_t stages = 0;
    for (const auto& [k, v] : m.parallelism_hist) {
      pairs += k * v;
      stages += v;
    }
    EXPECT_EQ(pairs, m.g2);
    EXPECT_EQ(stages, m.depth);
    EXPECT_NEAR(m.mean_parallelism() * static_cast<double>(m.depth), static_cast<double>(m.g2),
                1e-9);
    for (const double d : m.stage_distances) {
      EXPECT_GE(d, 0.0);
    }
  }
}

TEST(Evaluate, RejectsInvalidSchedule) {
  Schedule s = route_generic(Circuit(2, {Gate::cz(0, 1)}), FpqaConfig::for_qubits(2));
  s.stages.emplace_back(RydbergStage{{{0, 1}}, std::numbers::pi});
  EXPECT_THROW((void)evaluate(s), InvalidScheduleError);
  EXPECT_NO_THROW((void)evaluate(s, false));
}

TEST(Evaluate, Deterministic) {
  const Circuit c = random_circuit(20, 60, 3);
  EXPECT_EQ(evaluate(route_generic(c, FpqaConfig::for_qubits(20))),
            evaluate(route_generic(c, FpqaConfig::for_qubits(20))));
}

TEST(ErrorRate, PerfectMachine) {
  NoiseParams p;
  p.f1 = p.f2 = 1.0;
  EXPECT_DOUBLE_EQ(error_rate(sample(5, 4, 10, 6, {0.0, 0.0}), p), 0.0);
}

TEST(ErrorRate, WorkedExample) {
  const Metrics m = sample(5, 4, 10, 7, {0.25});
  const double want =
      1.0 - std::pow(0.999, 20) * std::pow(0.999, 10) * std::exp(-5.0 * (300e-6 * 0.5) / 1.5);
  EXPECT_NEAR(error_rate(m, NoiseParams{}), want, 1e-15);
}

TEST(ErrorRate, GateCountMode) {
  const Metrics m = sample(5, 4, 10, 7, {0.25});
  const double want =
      1.0 - std::pow(0.999, 7) * std::pow(0.999, 10) * std::exp(-5.0 * (300e-6 * 0.5) / 1.5);
  EXPECT_NEAR(error_rate(m, NoiseParams{}, ExponentMode::GateCount), want, 1e-15);
}

TEST(ErrorRate, HugeExponentsStayFinite) {
  const Metrics m = sample(100000, 100000, 1000000, 100, {1.0});
  const double e = error_rate(m, NoiseParams{});
  EXPECT_TRUE(std::isfinite(e));
  EXPECT_LE(e, 1.0);
  EXPECT_GT(e, 0.999);
}

TEST(ErrorRate, Monotonicity) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    NoiseParams p{0.99 + 0.01 * u(rng), 0.99 + 0.01 * u(rng), 0.5 + u(rng), 1e-4 + 1e-3 * u(rng)};
    Metrics m = sample(2 + rng() % 50, rng() % 100, rng() % 300, rng() % 300, {u(rng), u(rng)});
    const double e = error_rate(m, p);
    Metrics bigger = m;
    bigger.n_atoms += 1;
    EXPECT_GE(error_rate(bigger, p), e);
    bigger = m;
    bigger.depth += 1;
    EXPECT_GE(error_rate(bigger, p), e);
    bigger = m;
    bigger.g1 += 1;
    EXPECT_GE(error_rate(bigger, p), e);
    bigger = m;
    bigger.stage_distances[0] += 0.1;
    EXPECT_GE(error_rate(bigger, p), e);
    NoiseParams better = p;
    better.f1 = std::min(1.0, p.f1 + 1e-4);
    EXPECT_LE(error_rate(m, better), e);
    better = p;
    better.f2 = std::min(1.0, p.f2 + 1e-4);
    EXPECT_LE(error_rate(m, better), e);
  }
}

TEST(ErrorRate, ParameterChecks) {
  NoiseParams p;
  p.f1 = 0.0;
  EXPECT_THROW(p.check(), InvalidArgument);
  p = NoiseParams{};
  p.f2 = 1.1;
  EXPECT_THROW(p.check(), InvalidArgument);
  p = NoiseParams{};
  p.t2 = 0.0;
  EXPECT_THROW((void)error_rate(Metrics{}, p), InvalidArgument);
}

TEST(MetricsJson, RoundTrip) {
  const Metrics m = evaluate(route_qaoa(random_graph(12, 0.4, 2), FpqaConfig::for_qubits(12)));
  const nlohmann::json j = m;
  EXPECT_EQ(j.get<Metrics>(), m);
  const NoiseParams p{0.99, 0.995, 2.0, 1e-4};
  const nlohmann::json jp = p;
  const NoiseParams q = jp.get<NoiseParams>();
  EXPECT_DOUBLE_EQ(q.f1, p.f1);
  EXPECT_DOUBLE_EQ(q.f2, p.f2);
  EXPECT_DOUBLE_EQ(q.t2, p.t2);
  EXPECT_DOUBLE_EQ(q.t0, p.t0);
}

TEST(Sweep, SingleWidthSingleEntry) {
  const Problem p = random_circuit(10, 20, 1);
  const std::vector<std::size_t> widths{4};
  const auto sw = sweep_array_width(p, widths);
  ASSERT_EQ(sw.size(), 1u);
  EXPECT_EQ(sw[0].width, 4u);
  EXPECT_EQ(argmin_width(sw), std::optional<std::size_t>{4});
}

TEST(Sweep, TiesGoToNarrowerWidth) {
  std::vector<SweepEntry> sw(3);
  sw[0].width = 64;
  sw[0].metrics.depth = 10;
  sw[1].width = 32;
  sw[1].metrics.depth = 10;
  sw[2].width = 128;
  sw[2].metrics.depth = 11;
  EXPECT_EQ(argmin_width(sw), std::optional<std::size_t>{32});
  EXPECT_FALSE(argmin_width(std::vector<SweepEntry>{}));
}

TEST(Sweep, CsvAndEpsilon) {
  const Problem p = random_graph(20, 0.3, 7);
  const std::vector<std::size_t> widths{4, 8, 32};
  const auto sw = sweep_array_width(p, widths);
  for (const auto& e : sw) {
    EXPECT_DOUBLE_EQ(e.epsilon, error_rate(e.metrics, NoiseParams{}));
  }
  const std::string csv = sweep_csv(sw);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "width,depth,g2,epsilon");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
