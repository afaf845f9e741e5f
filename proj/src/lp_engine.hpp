#pragma once

#include "peelkit/peeling.hpp"

#include <span>
#include <vector>

namespace peelkit::detail {

/// Counters describing how extremeness decisions were reached.
struct LpStats {
    std::size_t float_certified = 0;  ///< floating solve, certificate verified exactly
    std::size_t exact_fallbacks = 0;  ///< exact rational solve was needed
    std::size_t cached = 0;           ///< non-extreme by a still-valid earlier witness
};

struct Decision {
    bool extreme = false;
    /// Positions whose convex hull contains the point (empty when extreme).
    std::vector<std::size_t> witness;
};

/// Decides whether points[p] lies outside conv(points[others]).
Decision decide_point(const PointSet& points, std::size_t p, std::span<const std::size_t> others,
                      LpStats* stats = nullptr);

/// True when points[p] is a convex combination of points[support], checked in
/// exact rational arithmetic.
bool verify_convex_combination(const PointSet& points, std::size_t p,
                               std::span<const std::size_t> support);

/// True when a.(q - points[p]) < 0 exactly for every q in points[others].
bool verify_separation(const PointSet& points, std::size_t p, std::span<const std::size_t> others,
                       std::span<const double> direction);

std::vector<std::size_t> lp_extreme_points(const PointSet& points, LpStats* stats = nullptr);
LayerAssignment lp_peel(const PointSet& points, LpStats* stats = nullptr);

std::vector<std::size_t> chain_extreme_points(const PointSet& points);
LayerAssignment chain_peel(const PointSet& points);

} // namespace peelkit::detail
