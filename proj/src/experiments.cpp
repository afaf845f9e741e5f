#include "peelkit/experiments.hpp"

#include "peelkit/generators.hpp"
#include "peelkit/peeling.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace peelkit {

const char* to_string(Family family) {
    switch (family) {
    case Family::Collinear: return "collinear";
    case Family::Convex: return "convex";
    case Family::UniformBall: return "uniform_ball";
    case Family::Grid: return "grid";
    case Family::Onion: return "onion";
    }
    return "collinear";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::Collinear, Family::Convex, Family::UniformBall, Family::Grid, Family::Onion}) {
        if (name == to_string(f)) return f;
    }
    throw InvalidArgument("unknown family '" + std::string(name) +
                          "' (expected collinear, convex, uniform_ball, grid or onion)");
}

bool is_deterministic(Family family) { return family != Family::UniformBall; }

PointSet generate_family(Family family, int dim, std::uint64_t n, std::uint64_t seed,
                         const FamilyParams& params) {
    switch (family) {
    case Family::Collinear:
    case Family::Convex:
    case Family::Onion:
        if (dim != 2) throw InvalidArgument(std::string(to_string(family)) + " family is planar (d = 2)");
        break;
    case Family::UniformBall:
    case Family::Grid:
        break;
    }
    switch (family) {
    case Family::Collinear: return gen_collinear(n);
    case Family::Convex: return gen_convex_position(n);
    case Family::UniformBall: return gen_uniform_ball(dim, n, seed);
    case Family::Grid: return gen_grid(dim, n);
    case Family::Onion: return gen_onion(n, params.alpha, params.onion_c).points;
    }
    throw InvalidArgument("unknown family");
}

std::vector<ExperimentRecord> run_sweep(Family family, int dim, const std::vector<std::uint64_t>& n_list,
                                        const std::vector<std::uint64_t>& seeds,
                                        const SweepOptions& options) {
    if (n_list.empty()) throw InvalidArgument("run_sweep: n_list is empty");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) throw InvalidArgument("run_sweep: n_list must be strictly increasing");
    }
    if (seeds.empty()) throw InvalidArgument("run_sweep: seeds is empty");
    if (is_deterministic(family) && seeds.size() != 1) {
        throw InvalidArgument(std::string("run_sweep: family ") + to_string(family) +
                              " is deterministic; pass a single seed");
    }

    struct Cell {
        std::uint64_t n;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (auto n : n_list) {
        for (auto s : seeds) cells.push_back({n, s});
    }
    std::vector<ExperimentRecord> records(cells.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                const auto start = std::chrono::steady_clock::now();
                const PointSet points = generate_family(family, dim, cells[i].n, cells[i].seed, options.params);
                const std::size_t layers = layer_number(points);
                const auto elapsed = std::chrono::steady_clock::now() - start;
                ExperimentRecord& rec = records[i];
                rec.family = family;
                rec.d = dim;
                rec.n_param = cells[i].n;
                rec.actual_size = points.size();
                rec.layer_number = layers;
                rec.seed = cells[i].seed;
                rec.wall_time_ms = options.record_timings
                                       ? std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()
                                       : 0;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cells.size();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(cells.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

ExponentFit fit_power_law(std::span<const double> sizes, std::span<const double> layers) {
    if (sizes.size() != layers.size()) throw InvalidArgument("fit_power_law: length mismatch");
    if (sizes.size() < 2) throw InvalidArgument("fit_power_law: need at least 2 sizes");
    const std::size_t m = sizes.size();
    std::vector<double> x(m);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(sizes[i] > 0.0) || !(layers[i] > 0.0)) throw InvalidArgument("fit_power_law: values must be positive");
        x[i] = std::log(sizes[i]);
        y[i] = std::log(layers[i]);
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw InvalidArgument("fit_power_law: need at least 2 distinct sizes");
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.point_count = m;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

std::vector<LogLogRow> loglog_table(std::span<const ExperimentRecord> records) {
    std::vector<LogLogRow> rows;
    std::vector<std::size_t> counts;
    for (const auto& r : records) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const LogLogRow& row) { return row.n_param == r.n_param; });
        if (it == rows.end()) {
            rows.push_back({r.n_param, 0.0, 0.0});
            counts.push_back(0);
            it = rows.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - rows.begin());
        it->mean_size += static_cast<double>(r.actual_size);
        it->mean_layers += static_cast<double>(r.layer_number);
        ++counts[idx];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].mean_size /= static_cast<double>(counts[i]);
        rows[i].mean_layers /= static_cast<double>(counts[i]);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.n_param < b.n_param; });
    return rows;
}

ExponentFit fit_exponent(std::span<const ExperimentRecord> records) {
    for (const auto& r : records) {
        if (r.layer_number < 1) throw InvalidArgument("fit_exponent: layer numbers must be >= 1");
    }
    const auto rows = loglog_table(records);
    if (rows.size() < 2) throw InvalidArgument("fit_exponent: need at least 2 distinct sizes");
    std::vector<double> sizes;
    std::vector<double> layers;
    for (const auto& row : rows) {
        sizes.push_back(row.mean_size);
        layers.push_back(row.mean_layers);
    }
    return fit_power_law(sizes, layers);
}

bool check_claim(const ExponentFit& fit, double target_slope, double tolerance) {
    if (!(tolerance > 0.0)) throw InvalidArgument("check_claim: tolerance must be positive");
    return std::abs(fit.slope - target_slope) <= tolerance;
}

} // namespace peelkit
