#include <gtest/gtest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "qpilot/arch.hpp"
#include "qpilot/error.hpp"
#include "qpilot/placement.hpp"

using namespace qpilot;

namespace {

FpqaConfig grid(std::size_t rows, std::size_t cols) {
  FpqaConfig c;
  c.slm_rows = c.aod_rows = rows;
  c.slm_cols = c.aod_cols = cols;
  return c;
}

AodState lines(std::vector<double> rows, std::vector<double> cols) {
  AodState s;
  s.row_y = std::move(rows);
  s.col_x = std::move(cols);
  return s;
}

} // namespace

TEST(ReadingOrder, ThreeOnTwoByTwo) {
  const AtomLayout l = reading_order_mapping(3, grid(2, 2));
  EXPECT_EQ(l.slm_atoms.at(0), (Site{0, 0}));
  EXPECT_EQ(l.slm_atoms.at(1), (Site{0, 1}));
  EXPECT_EQ(l.slm_atoms.at(2), (Site{1, 0}));
  EXPECT_TRUE(l.aod_atoms.empty());
}

TEST(ReadingOrder, CapacityExceeded) {
  EXPECT_THROW((void)reading_order_mapping(5, grid(2, 2)), CapacityError);
}

TEST(ReadingOrder, FourOnWideGridStayInRowZero) {
  const AtomLayout l = reading_order_mapping(4, grid(16, 16));
  for (const auto& [q, site] : l.slm_atoms) {
    EXPECT_EQ(site.row, 0u);
    EXPECT_EQ(site.col, q);
  }
}

TEST(Config, DefaultsAreConsistent) {
  const FpqaConfig c;
  EXPECT_NO_THROW(c.check());
  EXPECT_DOUBLE_EQ(c.separation(), 2.5);
  // Room left between two neighbours' parking spots must stay above 2.5 r_b.
  const double off = c.parking_offset();
  EXPECT_GT(off, 0.0);
  EXPECT_LT(off, c.rydberg_radius);
  EXPECT_GT(c.site_spacing - 2 * off, c.separation());
  EXPECT_GT(std::hypot(c.site_spacing - off, 0.0), c.separation());
}

TEST(Config, WideSpacingUsesInteractionOffset) {
  FpqaConfig c;
  c.site_spacing = 6.0;
  EXPECT_DOUBLE_EQ(c.parking_offset(), c.interaction_offset);
}

TEST(Config, RejectsImpossibleGeometry) {
  FpqaConfig c;
  c.site_spacing = 2.5;
  EXPECT_THROW(c.check(), InvalidArgument);
  c = FpqaConfig{};
  c.interaction_offset = 1.0;
  EXPECT_THROW(c.check(), InvalidArgument);
}

TEST(Config, ForQubitsShapes) {
  const FpqaConfig sq = FpqaConfig::for_qubits(10);
  EXPECT_EQ(sq.slm_cols, 4u);
  EXPECT_EQ(sq.slm_rows, 3u);
  EXPECT_EQ(sq.aod_rows, sq.slm_rows);
  EXPECT_EQ(sq.aod_cols, sq.slm_cols);
  const FpqaConfig wide = FpqaConfig::for_qubits(100, 128);
  EXPECT_EQ(wide.slm_rows, 1u);
  EXPECT_EQ(wide.slm_cols, 128u);
}

TEST(Config, JsonRoundTrip) {
  FpqaConfig c = FpqaConfig::for_qubits(30, 8);
  c.site_spacing = 3.0;
  const nlohmann::json j = c;
  EXPECT_EQ(j.at("slm_cols"), 8);
  EXPECT_EQ(j.get<FpqaConfig>(), c);
}

TEST(CheckMove, OrderKept) {
  EXPECT_FALSE(check_move(lines({0, 1, 2}, {0}), lines({0.5, 1.5, 2.5}, {0})));
}

TEST(CheckMove, CrossingRows) {
  const auto v = check_move(lines({0, 1, 2}, {0}), lines({1.5, 1.0, 2.5}, {0}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->axis, MoveViolation::Axis::Row);
  EXPECT_EQ(v->first, 0u);
  EXPECT_EQ(v->second, 1u);
}

TEST(CheckMove, NoMoveIsFine) {
  EXPECT_FALSE(check_move(lines({0}, {0, 1}), lines({0}, {0, 1})));
}

TEST(CheckMove, CoincidentColumnsRejected) {
  const auto v = check_move(lines({0}, {0, 1}), lines({0}, {1, 1}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->axis, MoveViolation::Axis::Col);
}

TEST(CheckMove, DimensionMismatch) {
  EXPECT_THROW((void)check_move(lines({0, 1}, {0}), lines({0}, {0})), InvalidArgument);
}

TEST(CheckMove, Idempotent) {
  const AodState a = lines({0, 1}, {0, 2});
  const AodState b = lines({0.2, 3}, {-1, 5});
  EXPECT_EQ(check_move(a, b), check_move(a, b));
  EXPECT_FALSE(check_move(b, b));
}

TEST(RydbergPairs, Classification) {
  const FpqaConfig c;
  const std::vector<PlacedAtom> close{{0, {0, 0}}, {1, {0.5, 0}}};
  auto r = rydberg_pairs(close, c);
  EXPECT_EQ(r.coupled, (std::vector<AtomPair>{{0, 1}}));
  EXPECT_TRUE(r.violations.empty());

  const std::vector<PlacedAtom> ambiguous{{0, {0, 0}}, {1, {1.7, 0}}};
  r = rydberg_pairs(ambiguous, c);
  EXPECT_TRUE(r.coupled.empty());
  EXPECT_EQ(r.violations, (std::vector<AtomPair>{{0, 1}}));

  const std::vector<PlacedAtom> far{{0, {0, 0}}, {1, {3, 0}}};
  r = rydberg_pairs(far, c);
  EXPECT_TRUE(r.coupled.empty());
  EXPECT_TRUE(r.violations.empty());
}

TEST(RydbergPairs, BoundariesInclusive) {
  const FpqaConfig c;
  const std::vector<PlacedAtom> at_radius{{3, {0, 0}}, {7, {0, 1.0}}};
  EXPECT_EQ(rydberg_pairs(at_radius, c).coupled, (std::vector<AtomPair>{{3, 7}}));
  const std::vector<PlacedAtom> at_sep{{3, {0, 0}}, {7, {2.5, 0}}};
  EXPECT_EQ(rydberg_pairs(at_sep, c).violations, (std::vector<AtomPair>{{3, 7}}));
}

TEST(RydbergPairs, SymmetricAndTranslationInvariant) {
  const FpqaConfig c;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coord(0.0, 12.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<PlacedAtom> atoms;
    for (AtomId id = 0; id < 30; ++id) {
      atoms.push_back({id, {coord(rng), coord(rng)}});
    }
    const RydbergPairs base = rydberg_pairs(atoms, c);
    std::vector<PlacedAtom> shifted = atoms;
    for (auto& a : shifted) {
      a.pos.x += 101.25;
      a.pos.y -= 57.5;
    }
    std::reverse(shifted.begin(), shifted.end());
    const RydbergPairs moved = rydberg_pairs(shifted, c);
    EXPECT_EQ(base.coupled, moved.coupled);
    EXPECT_EQ(base.violations, moved.violations);

    // Brute force over all pairs.
    std::vector<AtomPair> coupled;
    std::vector<AtomPair> bad;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        const double d = distance(atoms[i].pos, atoms[j].pos);
        if (d <= 1.0) {
          coupled.emplace_back(atoms[i].id, atoms[j].id);
        } else if (d <= 2.5) {
          bad.emplace_back(atoms[i].id, atoms[j].id);
        }
      }
    }
    std::sort(coupled.begin(), coupled.end());
    std::sort(bad.begin(), bad.end());
    EXPECT_EQ(base.coupled, coupled);
    EXPECT_EQ(base.violations, bad);
  }
}

TEST(MoveDuration, Values) {
  EXPECT_DOUBLE_EQ(move_duration(0.0, 300e-6), 0.0);
  EXPECT_DOUBLE_EQ(move_duration(1.0, 300e-6), 300e-6);
  EXPECT_DOUBLE_EQ(move_duration(0.25, 300e-6), 150e-6);
  EXPECT_THROW((void)move_duration(-0.1, 300e-6), InvalidArgument);
}

TEST(MaxDisplacement, OccupiedCrossingsOnly) {
  AodState a = lines({0, 10}, {0, 10});
  AodState b = lines({3, 10}, {4, 100});
  a.occupied[{0, 0}] = 7;
  b.occupied = a.occupied;
  EXPECT_DOUBLE_EQ(max_displacement(a, b), 5.0);
}

TEST(Placement, DiagonalSitesStayCoupledAndOrdered) {
  const FpqaConfig c = FpqaConfig::for_qubits(16, 4);
  const std::vector<Site> sites{{0, 0}, {0, 2}, {1, 2}, {3, 3}};
  const AodLines l = place_on_diagonal(sites, c);
  for (std::size_t k = 0; k + 1 < l.row_y.size(); ++k) {
    EXPECT_LT(l.row_y[k], l.row_y[k + 1]);
    EXPECT_LT(l.col_x[k], l.col_x[k + 1]);
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    const Point p = c.site_position(sites[k]);
    EXPECT_LE(distance(p, {l.col_x[k], l.row_y[k]}), c.parking_offset() + 1e-12);
  }
  EXPECT_THROW((void)place_on_diagonal(std::vector<Site>(5), c), CapacityError);
}

TEST(Placement, ParkedLinesLeaveTheArray) {
  const FpqaConfig c = FpqaConfig::for_qubits(9, 3);
  const AodLines l = parked_lines(c);
  for (const double y : l.row_y) {
    EXPECT_GT(y, c.max_y() + c.separation());
  }
  for (const double x : l.col_x) {
    EXPECT_GT(x, c.max_x() + c.separation());
  }
}
