#pragma once

#include "peelkit/geometry.hpp"

#include <cstddef>
#include <vector>

namespace peelkit {

/// Strategy used to decide which points are extreme.
enum class Engine {
    Automatic,      ///< d = 1 direct, d = 2 hull chain, d >= 3 linear programming
    HullChain,      ///< monotone chain with strict turns; d = 2 only
    LinearProgram,  ///< per-point feasibility solve with exact certificates; any d
    Oracle,         ///< exhaustive exact Caratheodory search; desk-scale inputs only
};

/// Result of peeling a point set to exhaustion.
struct LayerAssignment {
    /// Layer (1-based) at which the point at each position was removed.
    std::vector<std::size_t> layer_of;
    /// L(X): number of peeling steps.
    std::size_t layer_count = 0;
    /// Number of points removed at each step.
    std::vector<std::size_t> layer_sizes;
};

/// Positions (ascending) of the points of X that are not in the convex hull of
/// the remaining points. Points in the relative interior of a hull edge or
/// facet are not extreme.
std::vector<std::size_t> extreme_points(const PointSet& points, Engine engine = Engine::Automatic);

/// Independent exact oracle for extreme_points; |X| <= 60 and d <= 4.
std::vector<std::size_t> extreme_points_oracle(const PointSet& points);

inline constexpr std::size_t kOracleMaxPoints = 60;
inline constexpr std::size_t kOracleMaxDim = 4;

/// X minus its extreme points, in the original order and with ids preserved.
PointSet peel_step(const PointSet& points, Engine engine = Engine::Automatic);

LayerAssignment peel(const PointSet& points, Engine engine = Engine::Automatic);

std::size_t layer_number(const PointSet& points, Engine engine = Engine::Automatic);

/// Cap-count bound check for concentric disks: the unit disk and a disk of
/// radius inner_radius, both centred at the origin.
struct CapDiagnostic {
    double inner_radius = 0.0;
    std::size_t max_cap_count = 0;
    std::size_t inner_layer_number = 0;
    std::size_t layer_number = 0;
    bool bound_holds = false;
};

/// Planar only. Caps are cut by lines tangent to the inner disk; the maximum is
/// taken over a uniform grid of at least 4|X| tangent directions plus the two
/// tangents through every point outside the inner disk.
CapDiagnostic cap_diagnostic(const PointSet& points, double inner_radius);

} // namespace peelkit
