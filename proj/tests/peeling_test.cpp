#include "peelkit/generators.hpp"
#include "peelkit/peeling.hpp"
#include "lp_engine.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

namespace peelkit {
namespace {

const Engine kPlanarEngines[] = {Engine::Automatic, Engine::HullChain, Engine::LinearProgram};

std::set<std::size_t> id_set(const PointSet& x) { return {x.ids().begin(), x.ids().end()}; }

TEST(ExtremePoints, SquareWithMidpointsGivesCorners) {
    const PointSet x = testing::square_with_midpoints();
    for (Engine e : kPlanarEngines) {
        EXPECT_EQ(extreme_points(x, e), (std::vector<std::size_t>{0, 2, 4, 6})) << static_cast<int>(e);
    }
    EXPECT_EQ(extreme_points_oracle(x), (std::vector<std::size_t>{0, 2, 4, 6}));
}

TEST(ExtremePoints, DocumentedExamples) {
    EXPECT_EQ(extreme_points(gen_collinear(7)), (std::vector<std::size_t>{0, 6}));
    EXPECT_EQ(extreme_points(gen_convex_position(5)).size(), 5u);
    EXPECT_EQ(extreme_points(gen_grid(2, 9)), (std::vector<std::size_t>{0, 2, 6, 8}));
    const PointSet square_centre = PointSet::from_points({{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}, {0.0, 0.0}});
    EXPECT_EQ(extreme_points_oracle(square_centre), (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(extreme_points_oracle(PointSet(2, {0.1, 0.2, 0.3, 0.4})), (std::vector<std::size_t>{0, 1}));
}

TEST(PeelStep, DocumentedExamples) {
    EXPECT_TRUE(peel_step(gen_convex_position(6)).empty());
    EXPECT_EQ(peel_step(gen_grid(2, 9)).ids(), (std::vector<std::size_t>{1, 3, 4, 5, 7}));
    EXPECT_EQ(peel_step(gen_collinear(7)).ids(), (std::vector<std::size_t>{1, 2, 3, 4, 5}));
    EXPECT_EQ(layer_number(PointSet(2, {0.1, 0.1})), 1u);
    EXPECT_EQ(layer_number(gen_collinear(50)), 25u);
}

TEST(ExtremePoints, TinySets) {
    for (Engine e : kPlanarEngines) {
        EXPECT_THROW(extreme_points(PointSet(2, {}), e), InvalidArgument);
        EXPECT_EQ(extreme_points(PointSet(2, {0.1, 0.2}), e), (std::vector<std::size_t>{0}));
        EXPECT_EQ(extreme_points(PointSet(2, {0.1, 0.2, 0.3, 0.4}), e), (std::vector<std::size_t>{0, 1}));
        // middle point of three collinear points is not extreme
        EXPECT_EQ(extreme_points(PointSet(2, {0.0, 0.0, 0.2, 0.2, 0.1, 0.1}), e), (std::vector<std::size_t>{0, 1}));
    }
}

TEST(ExtremePoints, OneDimension) {
    const PointSet x(1, {0.3, -0.2, 0.0, 0.9});
    EXPECT_EQ(extreme_points(x), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(extreme_points(x, Engine::LinearProgram), (std::vector<std::size_t>{1, 3}));
    EXPECT_EQ(layer_number(x), 2u);
}

TEST(ExtremePoints, ChainRejectsNonPlanar) {
    EXPECT_THROW(extreme_points(PointSet(3, {0.1, 0.1, 0.1}), Engine::HullChain), InvalidArgument);
}

TEST(ExtremePoints, OracleRejectsLargeInput) {
    EXPECT_THROW(extreme_points_oracle(gen_convex_position(kOracleMaxPoints + 1)), InvalidArgument);
}

TEST(ExtremePoints, CubeVerticesAndCentre) {
    const double h = 0.5;
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({i & 1 ? h : -h, i & 2 ? h : -h, i & 4 ? h : -h});
    pts.push_back({0.0, 0.0, 0.0});
    pts.push_back({h, 0.0, 0.0});  // face centre
    pts.push_back({h, h, 0.0});    // edge midpoint
    const PointSet x = PointSet::from_points(pts);
    const std::vector<std::size_t> corners{0, 1, 2, 3, 4, 5, 6, 7};
    EXPECT_EQ(extreme_points(x), corners);
    EXPECT_EQ(extreme_points_oracle(x), corners);
}

TEST(Peel, CollinearLayerNumbers) {
    for (std::uint64_t n = 1; n <= 60; ++n) {
        const PointSet x = gen_collinear(n);
        for (Engine e : kPlanarEngines) EXPECT_EQ(layer_number(x, e), (n + 1) / 2) << "n = " << n;
    }
}

TEST(Peel, FrozenGridLayers) {
    const LayerAssignment g3 = peel(gen_grid(2, 9));
    EXPECT_EQ(g3.layer_count, 3u);
    EXPECT_EQ(g3.layer_sizes, (std::vector<std::size_t>{4, 4, 1}));
    const LayerAssignment g4 = peel(gen_grid(2, 16));
    EXPECT_EQ(g4.layer_count, 3u);
    EXPECT_EQ(g4.layer_sizes, (std::vector<std::size_t>{4, 8, 4}));
    const PointSet cube = gen_grid(3, 27);
    const LayerAssignment g333 = peel(cube);
    EXPECT_EQ(g333.layer_count, 4u);
    EXPECT_EQ(g333.layer_sizes, (std::vector<std::size_t>{8, 12, 6, 1}));
    EXPECT_EQ(peel(cube, Engine::Oracle).layer_sizes, g333.layer_sizes);
}

TEST(Peel, LayerOfIsConsistentWithSizes) {
    const PointSet x = testing::lattice_points(2, 60, 3, 5);
    const LayerAssignment a = peel(x);
    ASSERT_EQ(a.layer_of.size(), x.size());
    std::vector<std::size_t> counts(a.layer_count, 0);
    for (auto l : a.layer_of) {
        ASSERT_GE(l, 1u);
        ASSERT_LE(l, a.layer_count);
        ++counts[l - 1];
    }
    EXPECT_EQ(counts, a.layer_sizes);
    for (auto s : a.layer_sizes) EXPECT_GE(s, 1u);
}

TEST(Peel, EnginesAgreeOnRandomPlanarSets) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const PointSet x = seed % 2 ? testing::random_points(2, 300, seed) : testing::lattice_points(2, 120, seed, 8);
        const LayerAssignment chain = peel(x, Engine::HullChain);
        const LayerAssignment lp = peel(x, Engine::LinearProgram);
        EXPECT_EQ(chain.layer_of, lp.layer_of) << "seed " << seed;
    }
}

TEST(Peel, EmptySet) {
    EXPECT_EQ(peel(PointSet(2, {})).layer_count, 0u);
    EXPECT_THROW(layer_number(PointSet(2, {})), InvalidArgument);
}

TEST(Peel, BoundsHoldOnRandomSets) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t dim = 2 + seed % 2;
        const PointSet x = testing::random_points(dim, 10 + seed * 5, seed);
        const std::size_t l = layer_number(x);
        EXPECT_GE(l, 1u);
        EXPECT_LE(l, (x.size() + 1) / 2);
    }
}

TEST(PeelStep, PreservesIdsAndOrder) {
    const PointSet x = testing::square_with_midpoints();
    const PointSet y = peel_step(x);
    EXPECT_EQ(y.ids(), (std::vector<std::size_t>{1, 3, 5, 7}));
    EXPECT_EQ(peel_step(y).size(), 0u);
}

TEST(PeelStep, MonotoneUnderSubsets) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 2 + trial % 2;
        const PointSet x = trial % 3 == 0 ? testing::lattice_points(dim, 80, trial, 4)
                                          : testing::random_points(dim, 40 + trial, trial);
        const auto keep = testing::random_positions(x.size(), 0.6, rng);
        if (keep.empty()) continue;
        const PointSet y = x.subset(keep);
        const auto inner_x = id_set(peel_step(x));
        const PointSet inner_y = peel_step(y);
        for (auto id : inner_y.ids()) EXPECT_TRUE(inner_x.count(id)) << "trial " << trial;
        EXPECT_LE(layer_number(y), layer_number(x)) << "trial " << trial;
    }
}

TEST(LpEngine, ReportsHowDecisionsWereMade) {
    detail::LpStats stats;
    // Layer sizes cross-checked against an independent floating hull code on the integer grid.
    const LayerAssignment a = detail::lp_peel(gen_grid(3, 125), &stats);
    EXPECT_EQ(a.layer_count, 9u);
    EXPECT_EQ(a.layer_sizes, (std::vector<std::size_t>{8, 24, 12, 24, 24, 14, 12, 6, 1}));
    EXPECT_EQ(peel(gen_grid(3, 64)).layer_sizes, (std::vector<std::size_t>{8, 24, 24, 8}));
    EXPECT_EQ(peel(gen_grid(2, 25)).layer_sizes, (std::vector<std::size_t>{4, 8, 4, 4, 4, 1}));
    EXPECT_GT(stats.float_certified + stats.exact_fallbacks + stats.cached, 0u);
}

TEST(LpEngine, WitnessesAreExact) {
    const PointSet x = testing::lattice_points(3, 50, 5, 3);
    std::vector<std::size_t> all(x.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    for (std::size_t p = 0; p < x.size(); ++p) {
        std::vector<std::size_t> others;
        for (auto q : all) {
            if (q != p) others.push_back(q);
        }
        const auto d = detail::decide_point(x, p, others);
        if (!d.extreme) EXPECT_TRUE(detail::verify_convex_combination(x, p, d.witness)) << p;
    }
}

TEST(CapDiagnostic, ConvexPositionSquare) {
    const PointSet x = PointSet::from_points({{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}});
    const CapDiagnostic c = cap_diagnostic(x, 0.5);
    EXPECT_GE(c.max_cap_count, 1u);
    EXPECT_EQ(c.inner_layer_number, 0u);
    EXPECT_EQ(c.layer_number, 1u);
    EXPECT_TRUE(c.bound_holds);
}

TEST(CapDiagnostic, AllPointsInside) {
    const PointSet x = testing::random_points(2, 100, 4);
    std::vector<double> coords(x.coords().begin(), x.coords().end());
    for (auto& c : coords) c *= 0.25;
    const PointSet inner(2, coords);
    const CapDiagnostic c = cap_diagnostic(inner, 0.5);
    EXPECT_EQ(c.max_cap_count, 0u);
    EXPECT_EQ(c.inner_layer_number, c.layer_number);
    EXPECT_TRUE(c.bound_holds);
}

TEST(CapDiagnostic, RandomDiskSets) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PointSet x = gen_uniform_ball(2, 200, seed);
        EXPECT_TRUE(cap_diagnostic(x, 0.5).bound_holds) << seed;
    }
}

TEST(CapDiagnostic, FrozenCounts) {
    // four points on the unit circle at 0, 10, 20 and 180 degrees, inner radius cos(15 deg):
    // a tangent cap around 10 degrees spans +-15 degrees and holds three of them.
    std::vector<std::vector<double>> pts;
    for (double deg : {0.0, 10.0, 20.0, 180.0}) {
        const double t = deg * std::numbers::pi / 180.0;
        pts.push_back({std::cos(t), std::sin(t)});
    }
    const CapDiagnostic c = cap_diagnostic(PointSet::from_points(pts), std::cos(15.0 * std::numbers::pi / 180.0));
    EXPECT_EQ(c.max_cap_count, 3u);
    EXPECT_EQ(c.layer_number, 1u);
}

TEST(CapDiagnostic, ValidatesInput) {
    EXPECT_THROW(cap_diagnostic(PointSet(3, {0.1, 0.1, 0.1}), 0.5), InvalidArgument);
    EXPECT_THROW(cap_diagnostic(PointSet(2, {0.1, 0.1}), 0.0), InvalidArgument);
    EXPECT_THROW(cap_diagnostic(PointSet(2, {0.1, 0.1}), 1.0), InvalidArgument);
}

} // namespace
} // namespace peelkit
