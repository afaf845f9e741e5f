#include "lp_engine.hpp"

#include "exact.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <cmath>

namespace peelkit::detail {
namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr std::size_t kMaxFloatIterations = 400;

} // namespace

bool verify_convex_combination(const PointSet& points, std::size_t p,
                               std::span<const std::size_t> support) {
    if (support.empty()) return false;
    const std::size_t dim = points.dim();
    const std::size_t rows = dim + 1;
    const std::size_t cols = support.size();
    const std::size_t width = cols + 1;
    // [q_s - p ; 1] lambda = [0 ; 1]
    std::vector<mpq_class> m(rows * width);
    for (std::size_t s = 0; s < cols; ++s) {
        for (std::size_t k = 0; k < dim; ++k) {
            m[k * width + s] = mpq_class(points[support[s]][k]) - mpq_class(points[p][k]);
        }
        m[dim * width + s] = 1;
    }
    m[dim * width + cols] = 1;

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(m[piv * width + c]) == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < width; ++j) std::swap(m[r * width + j], m[piv * width + j]);
        const mpq_class lead = m[r * width + c];
        for (std::size_t j = 0; j < width; ++j) m[r * width + j] /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i * width + c]) == 0) continue;
            const mpq_class f = m[i * width + c];
            for (std::size_t j = 0; j < width; ++j) m[i * width + j] -= f * m[r * width + j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (sgn(m[i * width + cols]) != 0) return false;  // inconsistent
    }
    // Free variables are set to zero; the pivot variables then equal the rhs.
    for (std::size_t i = 0; i < r; ++i) {
        if (sgn(m[i * width + cols]) < 0) return false;
    }
    return true;
}

bool verify_separation(const PointSet& points, std::size_t p, std::span<const std::size_t> others,
                       std::span<const double> direction) {
    const std::size_t dim = points.dim();
    const auto origin = points[p];
    double a_abs = 0.0;
    for (double a : direction) {
        if (!std::isfinite(a)) return false;
        a_abs += std::abs(a);
    }
    if (a_abs == 0.0) return false;
    const double gamma = static_cast<double>(dim + 3) * 0x1p-52;

    std::vector<double> lhs(2 * dim);
    std::vector<double> rhs(2 * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        lhs[k] = direction[k];
        lhs[dim + k] = -direction[k];
        rhs[dim + k] = origin[k];
    }
    for (std::size_t o : others) {
        const auto q = points[o];
        double value = 0.0;
        double magnitude = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            value += direction[k] * (q[k] - origin[k]);
            magnitude += std::abs(direction[k]) * (std::abs(q[k]) + std::abs(origin[k]));
        }
        if (value < -gamma * magnitude) continue;
        for (std::size_t k = 0; k < dim; ++k) rhs[k] = q[k];
        if (exact::sign_of_dot(lhs, rhs) >= 0) return false;
    }
    return true;
}

Decision decide_point(const PointSet& points, std::size_t p, std::span<const std::size_t> others,
                      LpStats* stats) {
    Decision decision;
    if (others.empty()) {
        decision.extreme = true;
        if (stats) ++stats->float_certified;
        return decision;
    }
    const std::size_t dim = points.dim();
    const std::size_t rows = dim + 1;
    const std::size_t m = others.size();
    const auto origin = points[p];

    {
        std::vector<double> columns(m * rows);
        for (std::size_t j = 0; j < m; ++j) {
            const auto q = points[others[j]];
            for (std::size_t k = 0; k < dim; ++k) columns[j * rows + k] = q[k] - origin[k];
            columns[j * rows + dim] = 1.0;
        }
        std::vector<double> rhs(rows, 0.0);
        rhs[dim] = 1.0;
        const auto res = lp::phase_one<double>(columns, m, rows, rhs, kPivotTolerance,
                                               kMaxFloatIterations);
        if (res.status == lp::Phase1Status::Feasible) {
            std::vector<std::size_t> support;
            for (std::size_t j : res.support) support.push_back(others[j]);
            if (verify_convex_combination(points, p, support)) {
                if (stats) ++stats->float_certified;
                decision.witness = std::move(support);
                return decision;
            }
        } else if (res.status == lp::Phase1Status::Infeasible) {
            const std::span<const double> direction(res.farkas.data(), dim);
            if (verify_separation(points, p, others, direction)) {
                if (stats) ++stats->float_certified;
                decision.extreme = true;
                return decision;
            }
        }
    }

    if (stats) ++stats->exact_fallbacks;
    std::vector<mpq_class> columns(m * rows);
    for (std::size_t j = 0; j < m; ++j) {
        const auto q = points[others[j]];
        for (std::size_t k = 0; k < dim; ++k) {
            columns[j * rows + k] = mpq_class(q[k]) - mpq_class(origin[k]);
        }
        columns[j * rows + dim] = 1;
    }
    std::vector<mpq_class> rhs(rows, mpq_class(0));
    rhs[dim] = 1;
    const auto res = lp::phase_one<mpq_class>(columns, m, rows, rhs, 0.0, 0);
    if (res.status == lp::Phase1Status::Feasible) {
        for (std::size_t j : res.support) decision.witness.push_back(others[j]);
    } else {
        decision.extreme = true;
    }
    return decision;
}

std::vector<std::size_t> lp_extreme_points(const PointSet& points, LpStats* stats) {
    if (points.empty()) throw InvalidArgument("extreme_points of an empty set");
    const std::size_t n = points.size();
    std::vector<std::size_t> result;
    std::vector<std::size_t> others;
    others.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        others.clear();
        for (std::size_t q = 0; q < n; ++q) {
            if (q != p) others.push_back(q);
        }
        if (decide_point(points, p, others, stats).extreme) result.push_back(p);
    }
    return result;
}

LayerAssignment lp_peel(const PointSet& points, LpStats* stats) {
    const std::size_t n = points.size();
    LayerAssignment out;
    out.layer_of.assign(n, 0);
    std::vector<char> alive(n, 1);
    std::vector<std::vector<std::size_t>> witness(n);
    std::vector<std::size_t> survivors(n);
    for (std::size_t i = 0; i < n; ++i) survivors[i] = i;

    std::vector<std::size_t> others;
    std::vector<std::size_t> removed;
    others.reserve(n);
    while (!survivors.empty()) {
        const std::size_t layer = ++out.layer_count;
        removed.clear();
        for (std::size_t p : survivors) {
            const auto& w = witness[p];
            if (!w.empty() && std::all_of(w.begin(), w.end(), [&](std::size_t q) { return alive[q]; })) {
                if (stats) ++stats->cached;
                continue;
            }
            others.clear();
            for (std::size_t q : survivors) {
                if (q != p) others.push_back(q);
            }
            Decision d = decide_point(points, p, others, stats);
            if (d.extreme) {
                removed.push_back(p);
            } else {
                witness[p] = std::move(d.witness);
            }
        }
        // Every nonempty set has an extreme point; this guards termination.
        if (removed.empty()) throw std::logic_error("peeling step removed no point");
        for (std::size_t p : removed) {
            alive[p] = 0;
            out.layer_of[p] = layer;
        }
        out.layer_sizes.push_back(removed.size());
        std::erase_if(survivors, [&](std::size_t p) { return !alive[p]; });
    }
    return out;
}

} // namespace peelkit::detail
