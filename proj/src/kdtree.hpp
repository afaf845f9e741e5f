#pragma once

#include "peelkit/geometry.hpp"

#include <vector>

namespace peelkit::detail {

/// Static k-d tree over a PointSet for ball counting and nearest-neighbour
/// distances. Ball membership uses the exact predicate of count_in_ball.
class KdTree {
public:
    explicit KdTree(const PointSet& points);

    /// |{ p : |p - center| <= radius }|, decided exactly.
    std::size_t count_within(PointView center, double radius) const;

    /// The k smallest squared distances from center to the points, ascending.
    std::vector<double> nearest_squared(PointView center, std::size_t k) const;

private:
    struct Node {
        std::size_t begin = 0;
        std::size_t end = 0;
        std::size_t left = 0;
        std::size_t right = 0;  // 0 = leaf
        std::vector<double> lo;
        std::vector<double> hi;
    };

    std::size_t build(std::size_t begin, std::size_t end);
    double min_dist_sq(const Node& node, PointView c) const;
    double max_dist_sq(const Node& node, PointView c) const;
    void count_rec(std::size_t node, PointView c, double r, double r2, std::size_t& acc) const;
    void knn_rec(std::size_t node, PointView c, std::size_t k, std::vector<double>& heap) const;

    const PointSet& points_;
    std::size_t dim_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

} // namespace peelkit::detail
