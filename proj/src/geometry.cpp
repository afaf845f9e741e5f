#include "peelkit/geometry.hpp"

#include "exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace peelkit {
namespace {

void check_same_dim(PointView p, PointView q) {
    if (p.size() != q.size()) {
        throw InvalidArgument("dimension mismatch: " + std::to_string(p.size()) + " vs " +
                              std::to_string(q.size()));
    }
}

} // namespace

PointSet::PointSet(std::size_t dim, std::vector<double> coords, std::string label)
    : PointSet(dim, std::move(coords), {}, std::move(label)) {}

PointSet::PointSet(std::size_t dim, std::vector<double> coords, std::vector<std::size_t> ids,
                   std::string label)
    : dim_(dim), coords_(std::move(coords)), ids_(std::move(ids)), label_(std::move(label)) {
    if (dim_ == 0) throw InvalidArgument("point set dimension must be at least 1");
    if (coords_.size() % dim_ != 0) {
        throw InvalidArgument("coordinate count is not a multiple of the dimension");
    }
    const std::size_t n = coords_.size() / dim_;
    if (ids_.empty()) {
        ids_.resize(n);
        std::iota(ids_.begin(), ids_.end(), std::size_t{0});
    } else if (ids_.size() != n) {
        throw InvalidArgument("id count does not match point count");
    }
    for (std::size_t i = 0; i < n; ++i) {
        double norm_sq = 0.0;
        for (double x : (*this)[i]) {
            if (!std::isfinite(x)) {
                throw InvalidArgument("point " + std::to_string(i) + " has a non-finite coordinate");
            }
            norm_sq += x * x;
        }
        if (std::sqrt(norm_sq) > 1.0 + kUnitBallSlack) {
            throw InvalidArgument("point " + std::to_string(i) + " lies outside the unit ball");
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [this](std::size_t a, std::size_t b) {
        const auto pa = (*this)[a];
        const auto pb = (*this)[b];
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t k = 1; k < n; ++k) {
        const auto pa = (*this)[order[k - 1]];
        const auto pb = (*this)[order[k]];
        if (std::equal(pa.begin(), pa.end(), pb.begin())) {
            throw InvalidArgument("duplicate points at positions " + std::to_string(order[k - 1]) +
                                  " and " + std::to_string(order[k]));
        }
    }
}

PointSet PointSet::from_points(const std::vector<std::vector<double>>& points, std::string label) {
    if (points.empty()) throw InvalidArgument("cannot infer dimension of an empty point list");
    const std::size_t dim = points.front().size();
    std::vector<double> coords;
    coords.reserve(points.size() * dim);
    for (const auto& p : points) {
        if (p.size() != dim) throw InvalidArgument("points have mixed dimensions");
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointSet(dim, std::move(coords), std::move(label));
}

PointSet PointSet::subset(std::span<const std::size_t> positions) const {
    PointSet out;
    out.dim_ = dim_;
    out.label_ = label_;
    out.coords_.reserve(positions.size() * dim_);
    out.ids_.reserve(positions.size());
    for (std::size_t pos : positions) {
        if (pos >= size()) throw InvalidArgument("subset position out of range");
        const auto p = (*this)[pos];
        out.coords_.insert(out.coords_.end(), p.begin(), p.end());
        out.ids_.push_back(ids_[pos]);
    }
    // Rows of a valid set stay valid; only repeated positions could break the invariant.
    std::vector<std::size_t> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidArgument("subset positions must be distinct");
    }
    return out;
}

PointSet PointSet::relabeled(std::string label) const {
    PointSet out = *this;
    out.label_ = std::move(label);
    return out;
}

double squared_distance(PointView p, PointView q) {
    check_same_dim(p, q);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double diff = p[i] - q[i];
        sum += diff * diff;
    }
    return sum;
}

double distance(PointView p, PointView q) { return std::sqrt(squared_distance(p, q)); }

double min_pairwise_distance_exhaustive(const PointSet& points) {
    if (points.size() < 2) throw InvalidArgument("min_pairwise_distance needs at least 2 points");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            best = std::min(best, squared_distance(points[i], points[j]));
        }
    }
    return std::sqrt(best);
}

double min_pairwise_distance(const PointSet& points) {
    if (points.size() < 2) throw InvalidArgument("min_pairwise_distance needs at least 2 points");
    const std::size_t n = points.size();
    const std::size_t dim = points.dim();

    // Sweep along a fixed direction with irrational-looking components; any pair
    // closer than the current best is within that distance along the direction.
    std::vector<double> dir(dim);
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        dir[k] = 1.0 + std::sin(1.7 * static_cast<double>(k) + 0.3);
        norm += dir[k] * dir[k];
    }
    norm = std::sqrt(norm);
    for (double& c : dir) c /= norm;

    std::vector<std::pair<double, std::size_t>> keyed(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) s += dir[k] * points[i][k];
        keyed[i] = {s, i};
    }
    std::sort(keyed.begin(), keyed.end());

    // Projections of unit-ball points carry absolute error far below this.
    constexpr double kSlack = 1e-12;
    double best_sq = std::numeric_limits<double>::infinity();
    double best = best_sq;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (keyed[b].first - keyed[a].first > best + kSlack) break;
            const double d2 = squared_distance(points[keyed[a].second], points[keyed[b].second]);
            if (d2 < best_sq) {
                best_sq = d2;
                best = std::sqrt(d2);
            }
        }
    }
    return std::sqrt(best_sq);
}

double unit_ball_volume(int dim) {
    if (dim < 1) throw InvalidArgument("unit_ball_volume: dimension must be >= 1");
    const double half = 0.5 * dim;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

Orientation orientation(PointView p, PointView q, PointView r) {
    if (p.size() != 2 || q.size() != 2 || r.size() != 2) {
        throw InvalidArgument("orientation is defined for 2-dimensional points only");
    }
    return static_cast<Orientation>(exact::orient2d(p[0], p[1], q[0], q[1], r[0], r[1]));
}

} // namespace peelkit
