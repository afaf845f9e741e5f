#pragma once

#include "peelkit/evenness.hpp"
#include "peelkit/experiments.hpp"
#include "peelkit/generators.hpp"
#include "peelkit/geometry.hpp"
#include "peelkit/peeling.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

namespace peelkit {

/// Malformed input file; line is 1-based, 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Point-set text format:
///   # dim=<d> label=<label>
///   # format=1
///   x_1,...,x_d        (one point per line, %.17g)
/// Further lines starting with '#' and blank lines are ignored on read.
void write_point_set(std::ostream& out, const PointSet& points);
PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
void write_point_set_file(const std::string& path, const PointSet& points);

/// `# format=1`, `index,layer`, one row per point, then `# L=<layer_count>`.
void write_layers_csv(std::ostream& out, const LayerAssignment& layers);

void write_onion_params_json(std::ostream& out, const OnionParams& params);
void write_evenness_json(std::ostream& out, const EvennessReport& report);

/// `# format=1` then `family,d,n_param,actual_size,layer_number,seed,wall_time_ms`.
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records);
void write_fit_json(std::ostream& out, const ExponentFit& fit);
/// `# format=1` then `n_param,mean_size,mean_layers,log_size,log_layers`.
void write_loglog_csv(std::ostream& out, std::span<const LogLogRow> rows);

} // namespace peelkit
