#include "peelkit/peeling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace peelkit {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double angle) {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;
    return a;
}

} // namespace

CapDiagnostic cap_diagnostic(const PointSet& points, double inner_radius) {
    if (!(inner_radius > 0.0 && inner_radius < 1.0)) {
        throw InvalidArgument("cap_diagnostic: inner_radius must lie in (0, 1)");
    }
    if (points.dim() != 2) throw InvalidArgument("cap_diagnostic is planar only");

    CapDiagnostic out;
    out.inner_radius = inner_radius;
    out.layer_number = points.empty() ? 0 : layer_number(points);

    std::vector<std::size_t> inner;
    // A point at angle phi and radius r >= rho lies in the cap of the tangent line
    // with normal angle theta iff |theta - phi| <= acos(rho / r) (mod 2 pi).
    std::vector<double> starts;
    std::vector<double> ends;
    std::vector<double> candidates;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double x = points[i][0];
        const double y = points[i][1];
        const double r = std::hypot(x, y);
        if (r <= inner_radius) inner.push_back(i);
        if (r < inner_radius) continue;
        const double phi = std::atan2(y, x);
        const double half = std::acos(std::min(1.0, inner_radius / r));
        const double lo = wrap(phi - half);
        const double hi = wrap(phi + half);
        candidates.push_back(lo);
        candidates.push_back(hi);
        if (lo <= hi) {
            starts.push_back(lo);
            ends.push_back(hi);
        } else {
            starts.push_back(lo);
            ends.push_back(kTwoPi);
            starts.push_back(0.0);
            ends.push_back(hi);
        }
    }
    const std::size_t grid = std::max<std::size_t>(16, 4 * points.size());
    for (std::size_t g = 0; g < grid; ++g) {
        candidates.push_back(kTwoPi * static_cast<double>(g) / static_cast<double>(grid));
    }

    std::sort(starts.begin(), starts.end());
    std::sort(ends.begin(), ends.end());
    std::size_t best = 0;
    for (double theta : candidates) {
        // #intervals with start <= theta minus #intervals with end < theta
        const auto opened = static_cast<std::size_t>(
            std::upper_bound(starts.begin(), starts.end(), theta) - starts.begin());
        const auto closed = static_cast<std::size_t>(
            std::lower_bound(ends.begin(), ends.end(), theta) - ends.begin());
        best = std::max(best, opened - closed);
    }
    out.max_cap_count = best;
    out.inner_layer_number = inner.empty() ? 0 : layer_number(points.subset(inner));
    out.bound_holds = out.layer_number <= out.max_cap_count + out.inner_layer_number;
    return out;
}

} // namespace peelkit
