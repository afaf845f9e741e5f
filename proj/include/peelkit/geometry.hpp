#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace peelkit {

/// Raised for precondition violations: bad dimensions, sizes, parameters.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using PointView = std::span<const double>;

/// Slack on the unit-ball containment check; generators put points exactly on
/// the unit sphere and rounding may push the norm a hair above 1.
inline constexpr double kUnitBallSlack = 1e-12;

/// Immutable, duplicate-free list of points in the closed unit ball of R^d.
///
/// Coordinates are stored row-major. Every point carries an id; for a freshly
/// built set the ids are 0..n-1, and subsets keep the ids of the set they were
/// taken from, so peeled survivors can always be traced back to the input.
class PointSet {
public:
    PointSet() = default;

    /// Validates finiteness, unit-ball containment and distinctness.
    PointSet(std::size_t dim, std::vector<double> coords, std::string label = {});
    PointSet(std::size_t dim, std::vector<double> coords, std::vector<std::size_t> ids,
             std::string label);

    static PointSet from_points(const std::vector<std::vector<double>>& points,
                                std::string label = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    const std::string& label() const noexcept { return label_; }

    PointView operator[](std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::size_t id(std::size_t i) const { return ids_[i]; }
    const std::vector<std::size_t>& ids() const noexcept { return ids_; }
    std::span<const double> coords() const noexcept { return coords_; }

    /// Points at the given positions, in the given order, keeping their ids.
    PointSet subset(std::span<const std::size_t> positions) const;

    PointSet relabeled(std::string label) const;

private:
    std::size_t dim_ = 0;
    std::vector<double> coords_;
    std::vector<std::size_t> ids_;
    std::string label_;
};

double squared_distance(PointView p, PointView q);
double distance(PointView p, PointView q);

/// Minimum Euclidean distance over unordered pairs. Bit-identical to the
/// exhaustive scan: both take the square root of the same minimal squared distance.
double min_pairwise_distance(const PointSet& points);

/// Exhaustive O(n^2) reference for min_pairwise_distance.
double min_pairwise_distance_exhaustive(const PointSet& points);

/// Volume of the unit d-ball, pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(int dim);

enum class Orientation { CW = -1, COLLINEAR = 0, CCW = 1 };

/// Exact sign of det[q - p, r - p] over the given binary64 coordinates.
Orientation orientation(PointView p, PointView q, PointView r);

} // namespace peelkit
