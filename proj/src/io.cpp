#include "peelkit/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace peelkit {
namespace {

using nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& field, std::size_t line) {
    const std::string t = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ParseError(line, "not a number: '" + t + "'");
    }
    return value;
}

// Parses "# dim=<d> label=<rest of line>".
std::pair<std::size_t, std::string> parse_header(const std::string& text) {
    const std::string prefix = "# dim=";
    if (text.rfind(prefix, 0) != 0) throw ParseError(1, "expected header '# dim=<d> label=<label>'");
    const std::string rest = text.substr(prefix.size());
    const auto space = rest.find(' ');
    const std::string dim_text = rest.substr(0, space);
    std::size_t dim = 0;
    const auto [ptr, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
    if (ec != std::errc() || ptr != dim_text.data() + dim_text.size() || dim < 1) {
        throw ParseError(1, "bad dimension '" + dim_text + "'");
    }
    std::string label;
    if (space != std::string::npos) {
        const std::string tail = rest.substr(space + 1);
        if (tail.rfind("label=", 0) != 0) throw ParseError(1, "expected 'label=' after dimension");
        label = trim(tail.substr(6));
    }
    return {dim, label};
}

ordered_json witness_json(const EvennessWitness& w) {
    return ordered_json{{"center", w.center}, {"radius", w.radius}, {"count", w.count}, {"bound", w.bound}};
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

void write_point_set(std::ostream& out, const PointSet& points) {
    out << "# dim=" << points.dim() << " label=" << points.label() << '\n';
    out << "# format=1\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const PointView p = points[i];
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) out << ',';
            out << format_double(p[k]);
        }
        out << '\n';
    }
}

PointSet read_point_set(std::istream& in) {
    std::string text;
    if (!std::getline(in, text)) throw ParseError(1, "empty file");
    const auto [dim, label] = parse_header(trim(text));
    std::vector<double> coords;
    std::size_t line = 1;
    while (std::getline(in, text)) {
        ++line;
        const std::string t = trim(text);
        if (t.empty() || t[0] == '#') continue;
        std::size_t fields = 0;
        std::size_t start = 0;
        for (;;) {
            const auto comma = t.find(',', start);
            coords.push_back(parse_number(t.substr(start, comma - start), line));
            ++fields;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields != dim) {
            throw ParseError(line, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(fields));
        }
    }
    try {
        return PointSet(dim, std::move(coords), label);
    } catch (const InvalidArgument& e) {
        throw ParseError(0, e.what());
    }
}

PointSet read_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return read_point_set(in);
}

void write_point_set_file(const std::string& path, const PointSet& points) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    write_point_set(out, points);
}

void write_layers_csv(std::ostream& out, const LayerAssignment& layers) {
    out << "# format=1\n";
    out << "index,layer\n";
    for (std::size_t i = 0; i < layers.layer_of.size(); ++i) out << i << ',' << layers.layer_of[i] << '\n';
    out << "# L=" << layers.layer_count << '\n';
}

void write_onion_params_json(std::ostream& out, const OnionParams& params) {
    ordered_json j;
    j["format"] = 1;
    j["n"] = params.n;
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    j["C"] = params.C;
    j["M"] = params.M;
    j["k"] = params.k;
    j["ring_edge_length"] = params.ring_edge_length;
    j["ring_count"] = params.ring_count;
    out << j.dump(2) << '\n';
}

void write_evenness_json(std::ostream& out, const EvennessReport& report) {
    ordered_json j;
    j["format"] = 1;
    j["alpha"] = report.alpha;
    j["method"] = to_string(report.method);
    j["verdict"] = to_string(report.verdict);
    if (report.witness) j["witness"] = witness_json(*report.witness);
    if (report.beta_star) j["beta_star"] = *report.beta_star;
    if (report.certified_level) j["certified_level"] = *report.certified_level;
    if (report.method == EvennessMethod::BallProbe) j["balls_tested"] = report.balls_tested;
    out << j.dump(2) << '\n';
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
    out << "# format=1\n";
    out << "family,d,n_param,actual_size,layer_number,seed,wall_time_ms\n";
    for (const auto& r : records) {
        out << to_string(r.family) << ',' << r.d << ',' << r.n_param << ',' << r.actual_size << ','
            << r.layer_number << ',' << r.seed << ',' << r.wall_time_ms << '\n';
    }
}

void write_fit_json(std::ostream& out, const ExponentFit& fit) {
    ordered_json j;
    j["format"] = 1;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["point_count"] = fit.point_count;
    out << j.dump(2) << '\n';
}

void write_loglog_csv(std::ostream& out, std::span<const LogLogRow> rows) {
    out << "# format=1\n";
    out << "n_param,mean_size,mean_layers,log_size,log_layers\n";
    for (const auto& r : rows) {
        out << r.n_param << ',' << format_double(r.mean_size) << ',' << format_double(r.mean_layers) << ','
            << format_double(std::log(r.mean_size)) << ',' << format_double(std::log(r.mean_layers)) << '\n';
    }
}

} // namespace peelkit
