#pragma once

#include "peelkit/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace peelkit {

enum class Family { Collinear, Convex, UniformBall, Grid, Onion };

const char* to_string(Family family);
Family parse_family(std::string_view name);
/// Families whose output does not depend on the seed.
bool is_deterministic(Family family);

struct FamilyParams {
    double alpha = 4.0;               ///< onion only
    std::optional<double> onion_c;    ///< onion only: overrides C
};

/// Builds the point set for one sweep cell.
PointSet generate_family(Family family, int dim, std::uint64_t n, std::uint64_t seed,
                         const FamilyParams& params);

struct ExperimentRecord {
    Family family = Family::Collinear;
    int d = 2;
    std::uint64_t n_param = 0;
    std::uint64_t actual_size = 0;
    std::uint64_t layer_number = 0;
    std::uint64_t seed = 0;
    std::int64_t wall_time_ms = 0;

    bool operator==(const ExperimentRecord&) const = default;
};

struct SweepOptions {
    FamilyParams params;
    unsigned threads = 1;
    /// When false, wall_time_ms is written as 0 so output is byte-reproducible.
    bool record_timings = true;
};

/// One record per (n, seed), ordered by n then seed regardless of threading.
std::vector<ExperimentRecord> run_sweep(Family family, int dim, const std::vector<std::uint64_t>& n_list,
                                        const std::vector<std::uint64_t>& seeds,
                                        const SweepOptions& options = {});

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t point_count = 0;
};

/// Least squares of log(layers) on log(sizes).
ExponentFit fit_power_law(std::span<const double> sizes, std::span<const double> layers);

/// Averages size and layer number over the seeds of each n_param, then fits.
ExponentFit fit_exponent(std::span<const ExperimentRecord> records);

bool check_claim(const ExponentFit& fit, double target_slope, double tolerance);

/// Per-size means used by fit_exponent, for plotting.
struct LogLogRow {
    std::uint64_t n_param = 0;
    double mean_size = 0.0;
    double mean_layers = 0.0;
};
std::vector<LogLogRow> loglog_table(std::span<const ExperimentRecord> records);

} // namespace peelkit
