#include "peelkit/peeling.hpp"

#include "exact.hpp"
#include "lp_engine.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace peelkit {
namespace detail {
namespace {

using Vec2 = std::array<double, 2>;

inline bool left_turn(const Vec2& a, const Vec2& b, const Vec2& c) {
    return exact::orient2d(a[0], a[1], b[0], b[1], c[0], c[1]) > 0;
}

// Marks the strict hull vertices among pts[alive] (alive sorted lexicographically).
void mark_hull(const std::vector<Vec2>& pts, const std::vector<std::size_t>& alive,
               std::vector<std::size_t>& stack, std::vector<char>& on_hull) {
    if (alive.size() <= 2) {
        for (std::size_t i : alive) on_hull[i] = 1;
        return;
    }
    auto chain = [&](auto begin, auto end) {
        stack.clear();
        for (auto it = begin; it != end; ++it) {
            while (stack.size() >= 2 &&
                   !left_turn(pts[stack[stack.size() - 2]], pts[stack.back()], pts[*it])) {
                stack.pop_back();
            }
            stack.push_back(*it);
        }
        for (std::size_t i : stack) on_hull[i] = 1;
    };
    chain(alive.begin(), alive.end());
    chain(alive.rbegin(), alive.rend());
}

struct SortedPlanar {
    std::vector<Vec2> pts;               // sorted lexicographically
    std::vector<std::size_t> position;   // sorted rank -> position in the input
};

SortedPlanar sort_planar(const PointSet& points) {
    if (points.dim() != 2) throw InvalidArgument("hull-chain engine requires 2-dimensional points");
    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto pa = points[a];
        const auto pb = points[b];
        return pa[0] < pb[0] || (pa[0] == pb[0] && pa[1] < pb[1]);
    });
    SortedPlanar out;
    out.pts.resize(n);
    out.position = order;
    for (std::size_t r = 0; r < n; ++r) out.pts[r] = {points[order[r]][0], points[order[r]][1]};
    return out;
}

} // namespace

std::vector<std::size_t> chain_extreme_points(const PointSet& points) {
    if (points.empty()) throw InvalidArgument("extreme_points of an empty set");
    const auto sorted = sort_planar(points);
    std::vector<std::size_t> alive(points.size());
    std::iota(alive.begin(), alive.end(), std::size_t{0});
    std::vector<char> on_hull(points.size(), 0);
    std::vector<std::size_t> stack;
    mark_hull(sorted.pts, alive, stack, on_hull);
    std::vector<std::size_t> result;
    for (std::size_t r = 0; r < on_hull.size(); ++r) {
        if (on_hull[r]) result.push_back(sorted.position[r]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

LayerAssignment chain_peel(const PointSet& points) {
    const auto sorted = sort_planar(points);
    const std::size_t n = points.size();
    LayerAssignment out;
    out.layer_of.assign(n, 0);
    std::vector<std::size_t> alive(n);
    std::iota(alive.begin(), alive.end(), std::size_t{0});
    std::vector<char> on_hull(n, 0);
    std::vector<std::size_t> stack;
    stack.reserve(n);
    while (!alive.empty()) {
        const std::size_t layer = ++out.layer_count;
        mark_hull(sorted.pts, alive, stack, on_hull);
        std::size_t removed = 0;
        std::size_t kept = 0;
        for (std::size_t r : alive) {
            if (on_hull[r]) {
                out.layer_of[sorted.position[r]] = layer;
                ++removed;
            } else {
                alive[kept++] = r;
            }
        }
        alive.resize(kept);
        out.layer_sizes.push_back(removed);
    }
    return out;
}

} // namespace detail

namespace {

std::vector<std::size_t> trivial_extreme_points(const PointSet& points) {
    // d = 1: the minimum and the maximum.
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i][0] < points[lo][0]) lo = i;
        if (points[i][0] > points[hi][0]) hi = i;
    }
    std::vector<std::size_t> out{lo};
    if (hi != lo) out.push_back(hi);
    std::sort(out.begin(), out.end());
    return out;
}

Engine resolve(const PointSet& points, Engine engine) {
    if (engine == Engine::Automatic) {
        return points.dim() == 2 ? Engine::HullChain : Engine::LinearProgram;
    }
    return engine;
}

LayerAssignment generic_peel(const PointSet& points, Engine engine) {
    const std::size_t n = points.size();
    LayerAssignment out;
    out.layer_of.assign(n, 0);
    std::vector<std::size_t> positions(n);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    PointSet current = points;
    while (!current.empty()) {
        const std::size_t layer = ++out.layer_count;
        const auto ext = extreme_points(current, engine);
        std::vector<char> is_ext(current.size(), 0);
        for (std::size_t e : ext) {
            is_ext[e] = 1;
            out.layer_of[positions[e]] = layer;
        }
        out.layer_sizes.push_back(ext.size());
        std::vector<std::size_t> keep;
        std::vector<std::size_t> next_positions;
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (!is_ext[i]) {
                keep.push_back(i);
                next_positions.push_back(positions[i]);
            }
        }
        current = current.subset(keep);
        positions = std::move(next_positions);
    }
    return out;
}

} // namespace

std::vector<std::size_t> extreme_points(const PointSet& points, Engine engine) {
    if (points.empty()) throw InvalidArgument("extreme_points of an empty set");
    switch (resolve(points, engine)) {
    case Engine::HullChain:
        return detail::chain_extreme_points(points);
    case Engine::Oracle:
        return extreme_points_oracle(points);
    case Engine::LinearProgram:
    case Engine::Automatic:
        break;
    }
    if (points.dim() == 1 && engine == Engine::Automatic) return trivial_extreme_points(points);
    return detail::lp_extreme_points(points);
}

PointSet peel_step(const PointSet& points, Engine engine) {
    const auto ext = extreme_points(points, engine);
    std::vector<std::size_t> keep;
    keep.reserve(points.size() - ext.size());
    std::size_t e = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (e < ext.size() && ext[e] == i) {
            ++e;
        } else {
            keep.push_back(i);
        }
    }
    return points.subset(keep);
}

LayerAssignment peel(const PointSet& points, Engine engine) {
    if (points.empty()) return {};
    switch (resolve(points, engine)) {
    case Engine::HullChain:
        return detail::chain_peel(points);
    case Engine::LinearProgram:
        if (points.dim() == 1 && engine == Engine::Automatic) return generic_peel(points, engine);
        return detail::lp_peel(points);
    case Engine::Oracle:
    case Engine::Automatic:
        break;
    }
    return generic_peel(points, Engine::Oracle);
}

std::size_t layer_number(const PointSet& points, Engine engine) {
    if (points.empty()) throw InvalidArgument("layer_number of an empty set");
    return peel(points, engine).layer_count;
}

} // namespace peelkit
