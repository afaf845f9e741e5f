#pragma once

#include "peelkit/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace peelkit {

/// Derived parameters of the nested-polygon ("onion") construction.
struct OnionParams {
    std::uint64_t n = 0;
    double alpha = 0.0;
    double beta = 0.0;
    double C = 0.0;
    std::uint64_t M = 0;  ///< number of rings
    std::uint64_t k = 0;  ///< vertices per ring
    std::vector<double> ring_edge_length;   ///< l_j, j = 1..M
    std::vector<std::uint64_t> ring_count;  ///< |Q_j|, j = 1..M
    /// Points per edge interior, j = 1..M.
    std::vector<std::uint64_t> ring_edge_interior;

    double min_spacing() const;  ///< beta / sqrt(n)
};

struct OnionSet {
    PointSet points;  ///< rings emitted from j = 1 outwards; each ring starts at its vertices
    OnionParams params;

    /// Position range [begin, end) of ring j (1-based) in points.
    std::pair<std::size_t, std::size_t> ring_range(std::size_t j) const;
    /// The k vertices of P_j in counter-clockwise order, as stored in points.
    std::vector<std::vector<double>> ring_vertices(std::size_t j) const;
};

PointSet gen_collinear(std::uint64_t n);
PointSet gen_convex_position(std::uint64_t n);
PointSet gen_uniform_ball(int dim, std::uint64_t n, std::uint64_t seed);
PointSet gen_grid(int dim, std::uint64_t n);

/// The nested regular polygon construction. Fails when there are no rings
/// (n < C^2) and when the finished set violates the minimum-distance guarantee
/// beta / sqrt(n). c_override replaces C = max(2 beta, 4 pi^2) for exploratory runs.
OnionSet gen_onion(std::uint64_t n, double alpha, std::optional<double> c_override = std::nullopt);

/// Same construction without the a-posteriori minimum-distance check.
OnionSet build_onion(std::uint64_t n, double alpha, std::optional<double> c_override = std::nullopt);

/// Smallest n for which the construction has at least one ring.
std::uint64_t onion_min_n(double alpha, std::optional<double> c_override = std::nullopt);

/// Polygon through the midpoints of consecutive edges.
std::vector<std::vector<double>> midpoint_polygon(const std::vector<std::vector<double>>& vertices);

/// floor(n^(1/root)) computed exactly on integers.
std::uint64_t integer_root_floor(std::uint64_t n, int root);
/// ceil(n^(1/root)) computed exactly on integers.
std::uint64_t integer_root_ceil(std::uint64_t n, int root);

} // namespace peelkit
