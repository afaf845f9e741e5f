#include "kdtree.hpp"

#include "exact.hpp"

#include <algorithm>
#include <numeric>

namespace peelkit::detail {
namespace {

constexpr std::size_t kLeafSize = 16;
// Whole-node accept/reject margins; anything closer is decided point by point.
constexpr double kInside = 1.0 - 1e-9;
constexpr double kOutside = 1.0 + 1e-9;

} // namespace

KdTree::KdTree(const PointSet& points) : points_(points), dim_(points.dim()) {
    order_.resize(points.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    nodes_.reserve(2 * points.size() / kLeafSize + 2);
    if (!points.empty()) build(0, points.size());
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    Node node;
    node.begin = begin;
    node.end = end;
    node.lo.assign(dim_, 0.0);
    node.hi.assign(dim_, 0.0);
    for (std::size_t k = 0; k < dim_; ++k) {
        node.lo[k] = node.hi[k] = points_[order_[begin]][k];
    }
    for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const double x = points_[order_[i]][k];
            node.lo[k] = std::min(node.lo[k], x);
            node.hi[k] = std::max(node.hi[k], x);
        }
    }
    if (end - begin > kLeafSize) {
        std::size_t axis = 0;
        for (std::size_t k = 1; k < dim_; ++k) {
            if (node.hi[k] - node.lo[k] > node.hi[axis] - node.lo[axis]) axis = k;
        }
        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                         order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end),
                         [&](std::size_t a, std::size_t b) { return points_[a][axis] < points_[b][axis]; });
        node.left = build(begin, mid);
        node.right = build(mid, end);
    }
    nodes_[id] = std::move(node);
    return id;
}

double KdTree::min_dist_sq(const Node& node, PointView c) const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        double d = 0.0;
        if (c[k] < node.lo[k]) d = node.lo[k] - c[k];
        else if (c[k] > node.hi[k]) d = c[k] - node.hi[k];
        s += d * d;
    }
    return s;
}

double KdTree::max_dist_sq(const Node& node, PointView c) const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double d = std::max(std::abs(c[k] - node.lo[k]), std::abs(c[k] - node.hi[k]));
        s += d * d;
    }
    return s;
}

void KdTree::count_rec(std::size_t id, PointView c, double r, double r2, std::size_t& acc) const {
    const Node& node = nodes_[id];
    if (min_dist_sq(node, c) > r2 * kOutside) return;
    if (max_dist_sq(node, c) <= r2 * kInside) {
        acc += node.end - node.begin;
        return;
    }
    if (node.right == 0) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
            if (exact::in_closed_ball(points_[order_[i]], c, r)) ++acc;
        }
        return;
    }
    count_rec(node.left, c, r, r2, acc);
    count_rec(node.right, c, r, r2, acc);
}

std::size_t KdTree::count_within(PointView center, double radius) const {
    if (nodes_.empty()) return 0;
    std::size_t acc = 0;
    count_rec(0, center, radius, radius * radius, acc);
    return acc;
}

void KdTree::knn_rec(std::size_t id, PointView c, std::size_t k, std::vector<double>& heap) const {
    const Node& node = nodes_[id];
    if (heap.size() == k && min_dist_sq(node, c) > heap.front()) return;
    if (node.right == 0) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
            const double d2 = squared_distance(points_[order_[i]], c);
            if (heap.size() < k) {
                heap.push_back(d2);
                std::push_heap(heap.begin(), heap.end());
            } else if (d2 < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = d2;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        return;
    }
    const Node& l = nodes_[node.left];
    const Node& r = nodes_[node.right];
    if (min_dist_sq(l, c) <= min_dist_sq(r, c)) {
        knn_rec(node.left, c, k, heap);
        knn_rec(node.right, c, k, heap);
    } else {
        knn_rec(node.right, c, k, heap);
        knn_rec(node.left, c, k, heap);
    }
}

std::vector<double> KdTree::nearest_squared(PointView center, std::size_t k) const {
    std::vector<double> heap;
    if (nodes_.empty() || k == 0) return heap;
    heap.reserve(k);
    knn_rec(0, center, k, heap);
    std::sort_heap(heap.begin(), heap.end());
    return heap;
}

} // namespace peelkit::detail
