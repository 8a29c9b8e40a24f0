#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "qpilot/bench.hpp"
#include "qpilot/error.hpp"
#include "qpilot/qsim_router.hpp"
#include "qpilot/statevector.hpp"

using namespace qpilot;

namespace {

std::size_t progression_depth(std::size_t n) {
  std::size_t k = 0;
  std::size_t total = 0;
  while (total < n) {
    ++k;
    total += std::max<std::size_t>(1, 2 * (k - 1));
  }
  return k;
}

DominanceDag dag_of(const std::vector<Site>& pts) {
  const std::size_t cols = 16;
  FpqaConfig cfg = FpqaConfig::for_qubits(cols * cols, cols);
  std::vector<Qubit> qs;
  for (const Site& s : pts) {
    qs.push_back(static_cast<Qubit>(s.row * cols + s.col));
  }
  return DominanceDag::build(qs, cfg);
}

bool is_chain(const DominanceDag& d, const std::vector<std::size_t>& idx) {
  for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
    if (!d.edge(idx[i], idx[i + 1])) {
      return false;
    }
  }
  return true;
}

// Lexicographically smallest longest chain, by enumerating every subset.
std::vector<std::size_t> brute_chain(const DominanceDag& d) {
  std::vector<std::size_t> best;
  const std::size_t n = d.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        idx.push_back(i);
      }
    }
    if (!is_chain(d, idx)) {
      continue;
    }
    if (idx.size() > best.size() || (idx.size() == best.size() && idx < best)) {
      best = idx;
    }
  }
  return best;
}

std::size_t max_antichain(const DominanceDag& d) {
  std::size_t best = 0;
  for (std::size_t mask = 1; mask < (std::size_t{1} << d.size()); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < d.size() && ok; ++i) {
      for (std::size_t j = 0; j < d.size() && ok; ++j) {
        ok = !((mask >> i & 1) && (mask >> j & 1) && d.edge(i, j));
      }
    }
    if (ok) {
      best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(mask)));
    }
  }
  return best;
}

std::size_t two_qubit_layers(const Schedule& s) { return depth(s); }

} // namespace

TEST(FanoutPlan, TableValues) {
  EXPECT_EQ(fanout_plan(1).depth(), 1u);
  EXPECT_EQ(fanout_plan(7).depth(), 3u);
  EXPECT_EQ(fanout_plan(21).depth(), 5u);
  EXPECT_EQ(fanout_plan(22).depth(), 6u);
  EXPECT_EQ(fanout_plan(0).depth(), 0u);
}

TEST(FanoutPlan, ProgressionAndSqrtBound) {
  for (std::size_t n = 1; n <= 10000; ++n) {
    const std::size_t d = fanout_plan(n).depth();
    ASSERT_EQ(d, progression_depth(n)) << n;
    ASSERT_LE(d, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1) << n;
  }
}

TEST(FanoutPlan, LayersCopyFromExistingToFresh) {
  for (std::size_t n : {1u, 2u, 5u, 13u, 40u, 100u}) {
    const FanoutPlan p = fanout_plan(n);
    std::set<std::size_t> have;
    for (std::size_t k = 0; k < p.layers.size(); ++k) {
      std::set<std::size_t> sources;
      EXPECT_LE(p.layers[k].size(), std::max<std::size_t>(1, 2 * k));
      for (const auto& [src, dst] : p.layers[k]) {
        EXPECT_TRUE(src == kRoot || have.contains(src));
        EXPECT_FALSE(have.contains(dst));
        EXPECT_TRUE(sources.insert(src).second) << "source used twice in one layer";
        EXPECT_LT(dst, n);
      }
      for (const auto& [src, dst] : p.layers[k]) {
        have.insert(dst);
      }
    }
    EXPECT_EQ(have.size(), n);
  }
}

TEST(FanoutTree, CapacityError) {
  EXPECT_THROW((void)fanout_tree(0, 5, FpqaConfig::for_qubits(16, 4)), CapacityError);
  EXPECT_EQ(fanout_tree(0, 4, FpqaConfig::for_qubits(16, 4)).depth(), 3u);
}

TEST(LongestChain, TotalOrder) {
  EXPECT_EQ(longest_chain(dag_of({{0, 0}, {1, 1}, {2, 2}})).size(), 3u);
}

TEST(LongestChain, Antichain) {
  EXPECT_EQ(longest_chain(dag_of({{0, 1}, {1, 0}})).size(), 1u);
}

TEST(LongestChain, EmptyDagRejected) {
  EXPECT_THROW((void)longest_chain(DominanceDag{}), InvalidArgument);
}

TEST(LongestChain, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::size_t> coord(0, 5);
  for (int t = 0; t < 300; ++t) {
    std::set<Site> pts;
    const std::size_t want = 1 + t % 15;
    while (pts.size() < want) {
      pts.insert({coord(rng), coord(rng)});
    }
    const DominanceDag d = dag_of({pts.begin(), pts.end()});
    const auto chain = longest_chain(d);
    EXPECT_TRUE(is_chain(d, chain));
    EXPECT_EQ(chain, brute_chain(d));
  }
}

TEST(RoutePauli, ZZMatchesEvolutionCircuit) {
  const std::vector<PauliString> ps{parse_pauli("ZZ", 0.37)};
  const Schedule s = route_pauli(ps, FpqaConfig::for_qubits(2));
  EXPECT_TRUE(validate(s).empty());
  EXPECT_GT(equivalence(pauli_evolution_circuit(ps), s), 1 - 1e-9);
  // One target: one ancilla, one chain round, one fold, then the mirror.
  EXPECT_EQ(two_qubit_layers(s), 4u);
}

TEST(RoutePauli, SingleSupportIsOneRotation) {
  for (const char* text : {"IXI", "IIY", "ZII"}) {
    const std::vector<PauliString> ps{parse_pauli(text, 0.2)};
    const Schedule s = route_pauli(ps, FpqaConfig::for_qubits(3));
    EXPECT_EQ(depth(s), 0u);
    std::size_t ops = 0;
    for (const Stage& st : s.stages) {
      if (const auto* r = std::get_if<RamanStage>(&st)) {
        ops += r->ops.size();
      }
    }
    EXPECT_EQ(ops, 1u) << text;
    EXPECT_GT(equivalence(pauli_evolution_circuit(ps), s), 1 - 1e-9);
  }
}

TEST(RoutePauli, Errors) {
  const FpqaConfig cfg = FpqaConfig::for_qubits(3);
  const std::vector<PauliString> identity{parse_pauli("III", 0.1)};
  EXPECT_THROW((void)route_pauli(identity, cfg), InvalidArgument);
  const std::vector<PauliString> mixed{parse_pauli("XX", 0.1), parse_pauli("XXX", 0.1)};
  EXPECT_THROW((void)route_pauli(mixed, cfg), InvalidArgument);
}

TEST(RoutePauli, LayerCountPerString) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const auto ps = random_pauli_strings(25, 1, 0.4, t);
    const FpqaConfig cfg = FpqaConfig::for_qubits(25, 5);
    std::vector<PauliRouteInfo> info;
    const Schedule s = route_pauli(ps, cfg, &info);
    ASSERT_EQ(info.size(), 1u);
    EXPECT_EQ(depth(s), 2 * (info[0].fanout_depth + info[0].chain_rounds));
    EXPECT_EQ(info[0].root, ps[0].support().front());
  }
}

TEST(RoutePauli, ChainRoundsMatchGreedyBruteForce) {
  const FpqaConfig cfg = FpqaConfig::for_qubits(25, 5);
  const std::size_t cap = std::min(cfg.aod_rows, cfg.aod_cols);
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto ps = random_pauli_strings(25, 1, 0.35, seed);
    auto support = ps[0].support();
    if (support.size() < 2 || support.size() > 11) {
      continue;
    }
    std::vector<Qubit> targets(support.begin() + 1, support.end());
    const std::size_t m = std::min(targets.size(), cap);
    std::size_t rounds = 0;
    std::size_t lower = max_antichain(DominanceDag::build(targets, cfg));
    while (!targets.empty()) {
      const DominanceDag d = DominanceDag::build(targets, cfg);
      auto chain = brute_chain(d);
      chain.resize(std::min(chain.size(), m));
      std::set<Qubit> used;
      for (const std::size_t i : chain) {
        used.insert(d.nodes[i]);
      }
      std::erase_if(targets, [&](Qubit q) { return used.contains(q); });
      ++rounds;
    }
    std::vector<PauliRouteInfo> info;
    (void)route_pauli(ps, cfg, &info);
    EXPECT_EQ(info[0].chain_rounds, rounds) << "seed " << seed;
    EXPECT_GE(info[0].chain_rounds, lower);
    EXPECT_EQ(info[0].ancillas, m);
  }
}

TEST(RoutePauli, OracleRandomStrings) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const auto ps = random_pauli_strings(n, 3, 0.6, seed, 0.1 + 0.05 * static_cast<double>(seed));
    const Schedule s = route_pauli(ps, FpqaConfig::for_qubits(n));
    EXPECT_TRUE(validate(s).empty());
    EXPECT_GT(equivalence(pauli_evolution_circuit(ps), s, 10, seed), 1 - 1e-9) << seed;
  }
}

TEST(RoutePauli, WideArrayOracle) {
  // Single-row arrays give every ancilla its own column slot.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ps = random_pauli_strings(5, 4, 0.7, seed);
    const Schedule s = route_pauli(ps, FpqaConfig::for_qubits(5, 8));
    EXPECT_TRUE(validate(s).empty());
    EXPECT_GT(equivalence(pauli_evolution_circuit(ps), s, 5, seed), 1 - 1e-9);
  }
}

TEST(RoutePauli, LegalOnLargeInstances) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 20 + 4 * seed;
    const auto ps = random_pauli_strings(n, 5, 0.1 + 0.02 * static_cast<double>(seed % 10), seed);
    const Schedule s = route_pauli(ps, FpqaConfig::for_qubits(n));
    const auto v = validate(s);
    EXPECT_TRUE(v.empty()) << seed << " " << (v.empty() ? "" : v.front().detail);
  }
}
