#include "peelkit/evenness.hpp"
#include "peelkit/generators.hpp"
#include "peelkit/peeling.hpp"
#include "onion_checks.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace peelkit {
namespace {

TEST(Collinear, Layout) {
    const PointSet one = gen_collinear(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(layer_number(gen_collinear(2)), 1u);
    const PointSet seven = gen_collinear(7);
    EXPECT_DOUBLE_EQ(seven[0][0], -0.9);
    EXPECT_DOUBLE_EQ(seven[6][0], 0.9);
    for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(seven[i][1], 0.0);
    EXPECT_EQ(layer_number(seven), 4u);
    EXPECT_THROW(gen_collinear(0), InvalidArgument);
}

TEST(ConvexPosition, RegularPolygon) {
    EXPECT_THROW(gen_convex_position(2), InvalidArgument);
    EXPECT_EQ(layer_number(gen_convex_position(3)), 1u);
    EXPECT_EQ(layer_number(gen_convex_position(1000)), 1u);
    EXPECT_NEAR(min_pairwise_distance(gen_convex_position(4)), std::numbers::sqrt2, 1e-15);
}

TEST(UniformBall, DeterministicAndInside) {
    const PointSet a = gen_uniform_ball(3, 500, 42);
    const PointSet b = gen_uniform_ball(3, 500, 42);
    ASSERT_EQ(a.size(), 500u);
    EXPECT_TRUE(std::equal(a.coords().begin(), a.coords().end(), b.coords().begin()));
    const PointSet c = gen_uniform_ball(3, 500, 43);
    EXPECT_FALSE(std::equal(a.coords().begin(), a.coords().end(), c.coords().begin()));
    const PointSet one = gen_uniform_ball(2, 1, 9);
    EXPECT_LE(std::hypot(one[0][0], one[0][1]), 1.0);
    EXPECT_THROW(gen_uniform_ball(1, 10, 0), InvalidArgument);
}

TEST(UniformBall, InnerDiskFraction) {
    const PointSet x = gen_uniform_ball(2, 10000, 5);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < x.size(); ++i) inside += std::hypot(x[i][0], x[i][1]) <= 0.5;
    EXPECT_NEAR(static_cast<double>(inside) / 10000.0, 0.25, 0.02);
}

TEST(Grid, SizesAndScaling) {
    EXPECT_EQ(gen_grid(2, 9).size(), 9u);
    EXPECT_EQ(gen_grid(2, 10).size(), 16u);
    EXPECT_EQ(gen_grid(3, 27).size(), 27u);
    EXPECT_EQ(gen_grid(3, 28).size(), 64u);
    EXPECT_EQ(layer_number(gen_grid(2, 4)), 1u);
    const PointSet g = gen_grid(2, 100);
    double max_norm = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) max_norm = std::max(max_norm, std::hypot(g[i][0], g[i][1]));
    EXPECT_LE(max_norm, 1.0);
    EXPECT_GT(max_norm, 1.0 - 0x1p-22);
    EXPECT_THROW(gen_grid(1, 4), InvalidArgument);
}

TEST(Grid, SymmetricLayerSizes) {
    for (std::uint64_t side : {5, 8, 11, 16}) {
        const auto sizes = peel(gen_grid(2, side * side)).layer_sizes;
        for (std::size_t s : sizes) {
            if (s > 1) EXPECT_EQ(s % 4, 0u) << "side " << side;
        }
    }
}

TEST(IntegerRoots, Exact) {
    EXPECT_EQ(integer_root_floor(15, 4), 1u);
    EXPECT_EQ(integer_root_floor(16, 4), 2u);
    EXPECT_EQ(integer_root_floor(80, 4), 2u);
    EXPECT_EQ(integer_root_floor(81, 4), 3u);
    EXPECT_EQ(integer_root_floor(1ull << 40, 4), 1024u);
    EXPECT_EQ(integer_root_floor((1ull << 40) - 1, 4), 1023u);
    EXPECT_EQ(integer_root_ceil(9, 2), 3u);
    EXPECT_EQ(integer_root_ceil(10, 2), 4u);
    EXPECT_EQ(integer_root_ceil(1, 3), 1u);
    EXPECT_EQ(integer_root_ceil(28, 3), 4u);
    EXPECT_EQ(integer_root_ceil(0, 2), 0u);
}

TEST(MidpointPolygon, Examples) {
    const auto diamond = midpoint_polygon({{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}});
    ASSERT_EQ(diamond.size(), 4u);
    EXPECT_EQ(diamond[0], (std::vector<double>{0.0, 0.5}));
    EXPECT_EQ(diamond[1], (std::vector<double>{-0.5, 0.0}));
    const std::size_t k = 7;
    std::vector<std::vector<double>> poly;
    for (std::size_t i = 0; i < k; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / k;
        poly.push_back({0.8 * std::cos(t), 0.8 * std::sin(t)});
    }
    for (const auto& m : midpoint_polygon(poly)) {
        EXPECT_NEAR(std::hypot(m[0], m[1]), 0.8 * std::cos(std::numbers::pi / k), 1e-15);
    }
    EXPECT_THROW(midpoint_polygon({{0.0, 0.0}, {1.0, 0.0}}), InvalidArgument);
}

TEST(Onion, ParametersFollowConstruction) {
    const OnionSet onion = gen_onion(1u << 16, 4.0);
    const auto& p = onion.params;
    EXPECT_NEAR(p.beta, 4.0 * std::numbers::sqrt2 / std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_DOUBLE_EQ(p.C, 4.0 * std::numbers::pi * std::numbers::pi);
    EXPECT_EQ(p.M, 6u);   // floor(256 / 39.48)
    EXPECT_EQ(p.k, 16u);  // 2^(16/4)
    ASSERT_EQ(p.ring_count.size(), 6u);
    ASSERT_EQ(p.ring_edge_length.size(), 6u);
    for (std::size_t j = 1; j <= p.M; ++j) {
        const double radius = j * p.C / 256.0;
        EXPECT_NEAR(p.ring_edge_length[j - 1], 2.0 * radius * std::sin(std::numbers::pi / 16.0), 1e-15);
        const auto fit = static_cast<std::uint64_t>(std::floor(p.ring_edge_length[j - 1] / p.min_spacing()));
        const std::uint64_t m = fit >= 2 ? fit - 1 : 0;
        EXPECT_EQ(p.ring_edge_interior[j - 1], m);
        EXPECT_EQ(p.ring_count[j - 1], p.k * (m + 1));
    }
    // ring 1 has a vertex on the positive x-axis
    EXPECT_EQ(onion.points[0][1], 0.0);
    EXPECT_GT(onion.points[0][0], 0.0);
}

TEST(Onion, FrozenSizes) {
    // Computed once from the construction and frozen.
    EXPECT_EQ(build_onion(1u << 18, 4.0).points.size(), 5940u);
    EXPECT_EQ(build_onion(1u << 20, 4.0).points.size(), 24800u);
}

TEST(Onion, StructuralChecks) {
    for (double alpha : {2.0, 4.0}) {
        for (std::uint64_t n : {1ull << 14, 1ull << 16, 1ull << 18}) {
            const OnionSet onion = gen_onion(n, alpha);
            std::string why;
            EXPECT_TRUE(testing::onion_min_distance_holds(onion)) << n << " " << alpha;
            EXPECT_TRUE(testing::onion_containment_holds(onion, &why)) << why;
            EXPECT_TRUE(testing::onion_ring_counts_hold(onion, &why)) << why;
            EXPECT_TRUE(testing::onion_peels_outside_in(onion, peel(onion.points), &why)) << why;
        }
    }
}

TEST(Onion, EdgePointsAreExactlyCollinear) {
    const OnionSet onion = gen_onion(1u << 16, 4.0);
    // Ring 1 vertices only are extreme: the interior edge points are collinear.
    const auto ext = extreme_points(onion.points);
    std::size_t from_outer = 0;
    const auto [b, e] = onion.ring_range(onion.params.M);
    for (auto i : ext) from_outer += (i >= b && i < e);
    EXPECT_EQ(from_outer, ext.size());
    EXPECT_EQ(ext.size(), onion.params.k);
}

TEST(Onion, RejectsTooSmallN) {
    const std::uint64_t min_n = onion_min_n(4.0);
    EXPECT_NO_THROW(build_onion(min_n, 4.0));
    try {
        build_onion(min_n - 1, 4.0);
        FAIL() << "expected an error";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find(std::to_string(min_n)), std::string::npos);
    }
}

TEST(Onion, CertifiedForItsSize) {
    const OnionSet onion = gen_onion(1u << 16, 4.0);
    const EvennessReport r = certify_min_distance(onion.points, 1e9);
    EXPECT_EQ(r.verdict, EvennessVerdict::Certified);
}

} // namespace
} // namespace peelkit
