#include "peelkit/evenness.hpp"

#include "exact.hpp"
#include "kdtree.hpp"
#include "peelkit/rng.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <random>

namespace peelkit {
namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

constexpr double kGuardBand = 1e-12;

void check_dim(int dim) {
    if (dim < 1) throw InvalidArgument("dimension must be >= 1");
}

EvennessWitness make_witness(PointView center, double radius, std::size_t count, std::uint64_t bound) {
    return EvennessWitness{std::vector<double>(center.begin(), center.end()), radius, count, bound};
}

// A radius a few ulps above sqrt(radius_sq): radius_sq is a rounded squared
// distance, and the closed ball must contain the point it was measured to.
double covering_radius(double radius_sq) {
    return std::sqrt(radius_sq) * (1.0 + 0x1p-48);
}

} // namespace

double f_d(int dim, double beta) {
    check_dim(dim);
    if (!(beta > 0.0)) throw InvalidArgument("f_d: beta must be positive");
    const double d = dim;
    const double c_root = std::pow(unit_ball_volume(dim), 1.0 / d);
    return std::pow(4.0 * std::sqrt(d) / (c_root * beta) + 1.0, d);
}

double beta_for_alpha(int dim, double alpha) {
    check_dim(dim);
    if (!(alpha > 1.0)) throw InvalidArgument("beta_for_alpha: alpha must be > 1");
    const double d = dim;
    const double c_root = std::pow(unit_ball_volume(dim), 1.0 / d);
    // alpha^(1/d) - 1 without cancellation for alpha near 1
    const double root_minus_one = std::expm1(std::log1p(alpha - 1.0) / d);
    return 4.0 * std::sqrt(d) / (c_root * root_minus_one);
}

std::uint64_t evenness_bound(double alpha, std::uint64_t n, int dim, double radius) {
    check_dim(dim);
    const double value = alpha * static_cast<double>(n) * unit_ball_volume(dim) * std::pow(radius, dim);
    if (!std::isfinite(value) || value >= 0x1p62) return std::numeric_limits<std::uint64_t>::max();
    const double nearest = std::round(value);
    if (std::abs(value - nearest) > kGuardBand * std::max(1.0, value)) {
        return static_cast<std::uint64_t>(std::ceil(value));
    }
    const Wide half_d = Wide(dim) / 2;
    const Wide volume = boost::multiprecision::pow(boost::math::constants::pi<Wide>(), half_d) /
                        boost::math::tgamma(half_d + 1);
    const Wide wide = Wide(alpha) * Wide(n) * volume * boost::multiprecision::pow(Wide(radius), dim);
    return static_cast<std::uint64_t>(boost::multiprecision::ceil(wide));
}

std::size_t count_in_ball(const PointSet& points, PointView center, double radius) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (exact::in_closed_ball(points[i], center, radius)) ++count;
    }
    return count;
}

const char* to_string(EvennessMethod method) {
    return method == EvennessMethod::MinDistanceCertificate ? "min_distance_certificate" : "ball_probe";
}

const char* to_string(EvennessVerdict verdict) {
    switch (verdict) {
    case EvennessVerdict::Certified: return "certified";
    case EvennessVerdict::Refuted: return "refuted";
    case EvennessVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

EvennessReport certify_min_distance(const PointSet& points, double alpha) {
    if (!(alpha > 1.0)) throw InvalidArgument("alpha must be > 1");
    if (points.size() < 2) throw InvalidArgument("certify_min_distance needs at least 2 points");
    const int dim = static_cast<int>(points.dim());
    EvennessReport report;
    report.alpha = alpha;
    report.method = EvennessMethod::MinDistanceCertificate;
    const double delta = min_pairwise_distance(points);
    const double beta_star = delta * std::pow(static_cast<double>(points.size()), 1.0 / dim);
    const double level = f_d(dim, beta_star);
    report.beta_star = beta_star;
    report.certified_level = level;
    report.verdict = level <= alpha ? EvennessVerdict::Certified : EvennessVerdict::Inconclusive;
    return report;
}

EvennessReport probe_evenness(const PointSet& points, double alpha, const ProbeOptions& options) {
    if (!(alpha > 1.0)) throw InvalidArgument("alpha must be > 1");
    if (options.probes < 1) throw InvalidArgument("probes must be >= 1");
    EvennessReport report;
    report.alpha = alpha;
    report.method = EvennessMethod::BallProbe;
    report.verdict = EvennessVerdict::Inconclusive;
    if (points.empty()) return report;

    const int dim = static_cast<int>(points.dim());
    const std::uint64_t n = points.size();
    const detail::KdTree tree(points);

    auto test_ball = [&](PointView center, double radius) {
        ++report.balls_tested;
        const std::size_t count = tree.count_within(center, radius);
        const std::uint64_t bound = evenness_bound(alpha, n, dim, radius);
        if (count > bound) {
            report.verdict = EvennessVerdict::Refuted;
            report.witness = make_witness(center, radius, count, bound);
            return true;
        }
        return false;
    };

    std::mt19937_64 rng(splitmix64(options.seed));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> center(points.dim());
    for (std::uint64_t t = 0; t < options.probes; ++t) {
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& c : center) {
                c = gauss(rng);
                norm += c * c;
            }
        } while (norm == 0.0);
        norm = std::sqrt(norm);
        const double scale = std::pow(unit(rng), 1.0 / dim) / norm;
        for (double& c : center) c *= scale;
        const double radius = 1.0 - unit(rng);  // (0, 1]
        if (test_ball(center, radius)) return report;
    }

    const std::size_t max_rank = std::min<std::size_t>(options.max_neighbor_rank, n - 1);
    for (std::size_t i = 0; i < n && max_rank > 0; ++i) {
        // Entry 0 is the point itself.
        const auto d2 = tree.nearest_squared(points[i], max_rank + 1);
        for (std::size_t rank = 1; rank <= max_rank; rank *= 2) {
            if (test_ball(points[i], covering_radius(d2[rank]))) return report;
        }
    }
    return report;
}

} // namespace peelkit
