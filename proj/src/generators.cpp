#include "peelkit/generators.hpp"

#include "peelkit/evenness.hpp"
#include "peelkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace peelkit {
namespace {

// Onion coordinates live on the lattice 2^-52 Z^2 so that edge points can be
// placed exactly on their edges.
constexpr double kLatticeUnit = 0x1p-52;

bool pow_le(std::uint64_t base, int exponent, std::uint64_t limit) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < exponent; ++i) {
        acc *= base;
        if (acc > limit) return false;
    }
    return true;
}

std::string format_double(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

std::uint64_t integer_root_floor(std::uint64_t n, int root) {
    if (root < 1) throw InvalidArgument("integer root order must be positive");
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / root));
    while (r > 0 && !pow_le(r, root, n)) --r;
    while (pow_le(r + 1, root, n)) ++r;
    return r;
}

std::uint64_t integer_root_ceil(std::uint64_t n, int root) {
    const std::uint64_t r = integer_root_floor(n, root);
    if (n == 0) return 0;
    // r^root <= n; it equals n exactly iff r^root is not <= n - 1.
    return pow_le(r, root, n - 1) ? r + 1 : r;
}

double OnionParams::min_spacing() const { return beta / std::sqrt(static_cast<double>(n)); }

std::pair<std::size_t, std::size_t> OnionSet::ring_range(std::size_t j) const {
    if (j < 1 || j > params.M) throw InvalidArgument("ring index out of range");
    std::size_t begin = 0;
    for (std::size_t r = 1; r < j; ++r) begin += params.ring_count[r - 1];
    return {begin, begin + params.ring_count[j - 1]};
}

std::vector<std::vector<double>> OnionSet::ring_vertices(std::size_t j) const {
    const auto [begin, end] = ring_range(j);
    std::vector<std::vector<double>> out;
    out.reserve(params.k);
    for (std::size_t i = begin; i < begin + params.k; ++i) {
        out.emplace_back(points[i].begin(), points[i].end());
    }
    return out;
}

PointSet gen_collinear(std::uint64_t n) {
    if (n < 1) throw InvalidArgument("gen_collinear: n must be >= 1");
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = n == 1 ? 0.0 : -0.9 + 1.8 * static_cast<double>(i) / static_cast<double>(n - 1);
        coords.push_back(x);
        coords.push_back(0.0);
    }
    return PointSet(2, std::move(coords), "collinear n=" + std::to_string(n));
}

PointSet gen_convex_position(std::uint64_t n) {
    if (n < 3) throw InvalidArgument("gen_convex_position: n must be >= 3");
    std::vector<double> coords;
    coords.reserve(2 * n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        coords.push_back(std::cos(theta));
        coords.push_back(std::sin(theta));
    }
    return PointSet(2, std::move(coords), "convex n=" + std::to_string(n));
}

PointSet gen_uniform_ball(int dim, std::uint64_t n, std::uint64_t seed) {
    if (dim < 2) throw InvalidArgument("gen_uniform_ball: d must be >= 2");
    if (n < 1) throw InvalidArgument("gen_uniform_ball: n must be >= 1");
    std::mt19937_64 rng(splitmix64(seed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto d = static_cast<std::size_t>(dim);

    std::set<std::vector<double>> seen;
    std::vector<double> coords;
    coords.reserve(n * d);
    std::vector<double> p(d);
    while (seen.size() < n) {
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& c : p) {
                c = gauss(rng);
                norm += c * c;
            }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        const double radius = std::pow(unit(rng), 1.0 / dim);
        for (double& c : p) c = c / norm * radius;
        if (seen.insert(p).second) coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointSet(d, std::move(coords),
                    "uniform_ball d=" + std::to_string(dim) + " n=" + std::to_string(n) +
                        " seed=" + std::to_string(seed));
}

PointSet gen_grid(int dim, std::uint64_t n) {
    if (dim < 2) throw InvalidArgument("gen_grid: d must be >= 2");
    if (n < 1) throw InvalidArgument("gen_grid: n must be >= 1");
    const std::uint64_t side = integer_root_ceil(n, dim);
    const auto d = static_cast<std::size_t>(dim);
    std::uint64_t total = 1;
    for (int i = 0; i < dim; ++i) total *= side;

    // Spacing for corner distance 1, truncated to a 24-bit mantissa so that every
    // coordinate (integer times half the spacing) is exact.
    double half_step = 0.0;
    if (side > 1) {
        const double step = 2.0 / (static_cast<double>(side - 1) * std::sqrt(static_cast<double>(dim)));
        int e = 0;
        const double f = std::frexp(step, &e);
        half_step = 0.5 * std::ldexp(std::floor(std::ldexp(f, 24)), e - 24);
    }
    std::vector<double> coords;
    coords.reserve(total * d);
    std::vector<std::uint64_t> index(d, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        for (std::size_t k = 0; k < d; ++k) {
            const auto offset = 2 * static_cast<std::int64_t>(index[k]) - static_cast<std::int64_t>(side - 1);
            coords.push_back(static_cast<double>(offset) * half_step);
        }
        for (std::size_t k = d; k-- > 0;) {
            if (++index[k] < side) break;
            index[k] = 0;
        }
    }
    return PointSet(d, std::move(coords),
                    "grid d=" + std::to_string(dim) + " n=" + std::to_string(n) +
                        " side=" + std::to_string(side));
}

std::uint64_t onion_min_n(double alpha, std::optional<double> c_override) {
    const double beta = beta_for_alpha(2, alpha);
    const double c = c_override.value_or(std::max(2.0 * beta, 4.0 * std::numbers::pi * std::numbers::pi));
    auto n = static_cast<std::uint64_t>(std::ceil(c * c));
    while (n > 1 && std::floor(std::sqrt(static_cast<double>(n - 1)) / c) >= 1.0) --n;
    while (std::floor(std::sqrt(static_cast<double>(n)) / c) < 1.0) ++n;
    return n;
}

OnionSet build_onion(std::uint64_t n, double alpha, std::optional<double> c_override) {
    OnionParams params;
    params.n = n;
    params.alpha = alpha;
    params.beta = beta_for_alpha(2, alpha);
    params.C = c_override.value_or(std::max(2.0 * params.beta, 4.0 * std::numbers::pi * std::numbers::pi));
    if (!(params.C > 0.0)) throw InvalidArgument("gen_onion: C must be positive");
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    params.M = static_cast<std::uint64_t>(std::floor(sqrt_n / params.C));
    if (params.M == 0) {
        throw InvalidArgument("gen_onion: no rings for n=" + std::to_string(n) + " (M = 0); need n >= " +
                              std::to_string(onion_min_n(alpha, c_override)));
    }
    params.k = integer_root_floor(n, 4);
    if (params.k < 3) throw InvalidArgument("gen_onion: n too small for polygons (k < 3)");

    const std::uint64_t k = params.k;
    const double spacing = params.min_spacing();
    const double sin_half = std::sin(std::numbers::pi / static_cast<double>(k));
    std::vector<double> cos_t(k);
    std::vector<double> sin_t(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        cos_t[i] = std::cos(theta);
        sin_t[i] = std::sin(theta);
    }

    std::vector<double> coords;
    std::vector<std::int64_t> vx(k);
    std::vector<std::int64_t> vy(k);
    for (std::uint64_t j = 1; j <= params.M; ++j) {
        const double radius = static_cast<double>(j) * params.C / sqrt_n;
        const double edge = 2.0 * radius * sin_half;
        const double fit = std::floor(edge / spacing);
        const std::uint64_t interior = fit >= 2.0 ? static_cast<std::uint64_t>(fit) - 1 : 0;
        const auto parts = static_cast<std::int64_t>(interior + 1);
        params.ring_edge_length.push_back(edge);
        params.ring_edge_interior.push_back(interior);
        params.ring_count.push_back(k * (interior + 1));

        // All vertices of the ring are congruent to the first one modulo `parts`,
        // so every edge vector is divisible by `parts`.
        const auto x0 = static_cast<std::int64_t>(std::llround(radius / kLatticeUnit));
        for (std::uint64_t i = 0; i < k; ++i) {
            const double tx = radius * cos_t[i] / kLatticeUnit;
            const double ty = radius * sin_t[i] / kLatticeUnit;
            vx[i] = x0 + parts * std::llround((tx - static_cast<double>(x0)) / static_cast<double>(parts));
            vy[i] = parts * std::llround(ty / static_cast<double>(parts));
        }
        for (std::uint64_t i = 0; i < k; ++i) {
            coords.push_back(static_cast<double>(vx[i]) * kLatticeUnit);
            coords.push_back(static_cast<double>(vy[i]) * kLatticeUnit);
        }
        for (std::uint64_t i = 0; i < k; ++i) {
            const std::uint64_t nxt = (i + 1) % k;
            const std::int64_t dx = (vx[nxt] - vx[i]) / parts;
            const std::int64_t dy = (vy[nxt] - vy[i]) / parts;
            for (std::int64_t t = 1; t < parts; ++t) {
                coords.push_back(static_cast<double>(vx[i] + t * dx) * kLatticeUnit);
                coords.push_back(static_cast<double>(vy[i] + t * dy) * kLatticeUnit);
            }
        }
    }
    std::string label = "onion n=" + std::to_string(n) + " alpha=" + format_double(alpha);
    if (c_override) label += " C=" + format_double(*c_override);
    return OnionSet{PointSet(2, std::move(coords), std::move(label)), std::move(params)};
}

OnionSet gen_onion(std::uint64_t n, double alpha, std::optional<double> c_override) {
    OnionSet out = build_onion(n, alpha, c_override);
    const double delta = min_pairwise_distance(out.points);
    const double spacing = out.params.min_spacing();
    if (delta < spacing) {
        std::ostringstream os;
        os.precision(17);
        os << "gen_onion: minimum distance " << delta << " is below beta/sqrt(n) = " << spacing
           << " for n=" << n << " alpha=" << alpha
           << " (the innermost ring's vertices are too close together)";
        throw InvalidArgument(os.str());
    }
    return out;
}

std::vector<std::vector<double>> midpoint_polygon(const std::vector<std::vector<double>>& vertices) {
    if (vertices.size() < 3) throw InvalidArgument("midpoint_polygon needs at least 3 vertices");
    const std::size_t dim = vertices.front().size();
    std::vector<std::vector<double>> out;
    out.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& a = vertices[i];
        const auto& b = vertices[(i + 1) % vertices.size()];
        if (a.size() != dim || b.size() != dim) throw InvalidArgument("midpoint_polygon: mixed dimensions");
        std::vector<double> m(dim);
        for (std::size_t c = 0; c < dim; ++c) m[c] = 0.5 * (a[c] + b[c]);
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace peelkit
