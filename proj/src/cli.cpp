#include "peelkit/cli.hpp"

#include "peelkit/evenness.hpp"
#include "peelkit/experiments.hpp"
#include "peelkit/generators.hpp"
#include "peelkit/io.hpp"
#include "peelkit/peeling.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

namespace peelkit {
namespace {

using nlohmann::ordered_json;

struct GenerateArgs {
    std::string family;
    int d = 2;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    double alpha = 4.0;
    std::optional<double> onion_c;
    std::string output;
    std::string params_output;
};

struct PeelArgs {
    std::string input;
    std::string output;
    std::string engine = "auto";
    std::optional<double> inner_radius;
    std::string cap_output;
};

struct CheckEvenArgs {
    std::string input;
    std::string output;
    double alpha = 0.0;
    std::uint64_t probes = 1000;
    std::uint64_t seed = 0;
    std::size_t max_rank = 64;
};

struct ExperimentArgs {
    std::string family;
    int d = 2;
    std::vector<std::uint64_t> n_list;
    std::vector<std::uint64_t> seeds{0};
    double alpha = 4.0;
    std::optional<double> onion_c;
    unsigned threads = 1;
    bool timings = false;
    std::string output;
    std::string fit_output;
    std::string loglog_output;
    std::optional<double> target_slope;
    double tolerance = 0.1;
};

struct OracleArgs {
    std::string input;
    std::string family;
    int d = 2;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string engine = "auto";
};

const std::map<std::string, Engine> kEngines{
    {"auto", Engine::Automatic}, {"chain", Engine::HullChain}, {"lp", Engine::LinearProgram}, {"oracle", Engine::Oracle}};

// Runs fn with out redirected to path when path is non-empty.
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw InvalidArgument("cannot write '" + path + "'");
    fn(file);
}

PointSet load(const std::string& path) {
    if (path == "-") return read_point_set(std::cin);
    return read_point_set_file(path);
}

int do_generate(const GenerateArgs& a, std::ostream& out) {
    const Family family = parse_family(a.family);
    if (family == Family::Onion) {
        const OnionSet onion = gen_onion(a.n, a.alpha, a.onion_c);
        with_output(a.output, out, [&](std::ostream& o) { write_point_set(o, onion.points); });
        std::string sidecar = a.params_output;
        if (sidecar.empty() && !a.output.empty()) sidecar = a.output + ".params.json";
        if (!sidecar.empty()) {
            with_output(sidecar, out, [&](std::ostream& o) { write_onion_params_json(o, onion.params); });
        }
        return kExitOk;
    }
    const PointSet points = generate_family(family, a.d, a.n, a.seed, FamilyParams{a.alpha, a.onion_c});
    with_output(a.output, out, [&](std::ostream& o) { write_point_set(o, points); });
    return kExitOk;
}

int do_peel(const PeelArgs& a, std::ostream& out, std::ostream& err) {
    const PointSet points = load(a.input);
    if (points.empty()) throw InvalidArgument("point set is empty");
    const LayerAssignment layers = peel(points, kEngines.at(a.engine));
    with_output(a.output, out, [&](std::ostream& o) { write_layers_csv(o, layers); });
    if (!a.inner_radius) return kExitOk;
    const CapDiagnostic cap = cap_diagnostic(points, *a.inner_radius);
    with_output(a.cap_output, err, [&](std::ostream& o) {
        ordered_json j;
        j["format"] = 1;
        j["inner_radius"] = cap.inner_radius;
        j["max_cap_count"] = cap.max_cap_count;
        j["inner_layer_number"] = cap.inner_layer_number;
        j["layer_number"] = cap.layer_number;
        j["bound_holds"] = cap.bound_holds;
        o << j.dump(2) << '\n';
    });
    return cap.bound_holds ? kExitOk : kExitRefuted;
}

int do_check_even(const CheckEvenArgs& a, std::ostream& out) {
    const PointSet points = load(a.input);
    if (points.empty()) throw InvalidArgument("point set is empty");
    EvennessReport report;
    if (points.size() >= 2) report = certify_min_distance(points, a.alpha);
    if (report.verdict != EvennessVerdict::Certified) {
        report = probe_evenness(points, a.alpha, ProbeOptions{a.probes, a.seed, a.max_rank});
    }
    with_output(a.output, out, [&](std::ostream& o) { write_evenness_json(o, report); });
    return report.verdict == EvennessVerdict::Refuted ? kExitRefuted : kExitOk;
}

int do_experiment(const ExperimentArgs& a, std::ostream& out) {
    const Family family = parse_family(a.family);
    if (a.threads < 1) throw InvalidArgument("--threads must be >= 1");
    SweepOptions options;
    options.params = FamilyParams{a.alpha, a.onion_c};
    options.threads = a.threads;
    options.record_timings = a.timings;
    const auto records = run_sweep(family, a.d, a.n_list, a.seeds, options);
    with_output(a.output, out, [&](std::ostream& o) { write_records_csv(o, records); });
    if (!a.loglog_output.empty()) {
        const auto rows = loglog_table(records);
        with_output(a.loglog_output, out, [&](std::ostream& o) { write_loglog_csv(o, rows); });
    }
    if (a.n_list.size() < 2) return kExitOk;
    const ExponentFit fit = fit_exponent(records);
    with_output(a.fit_output, out, [&](std::ostream& o) { write_fit_json(o, fit); });
    if (a.target_slope && !check_claim(fit, *a.target_slope, a.tolerance)) return kExitRefuted;
    return kExitOk;
}

int do_oracle_verify(const OracleArgs& a, std::ostream& out) {
    if (a.input.empty() == a.family.empty()) throw InvalidArgument("pass exactly one of --input or --family");
    PointSet points = a.input.empty() ? generate_family(parse_family(a.family), a.d, a.n, a.seed, {}) : load(a.input);
    if (points.size() > kOracleMaxPoints || points.dim() > kOracleMaxDim) {
        throw InvalidArgument("oracle-verify supports at most " + std::to_string(kOracleMaxPoints) +
                              " points in dimension <= " + std::to_string(kOracleMaxDim));
    }
    const Engine engine = kEngines.at(a.engine);
    std::size_t steps = 0;
    std::optional<std::size_t> mismatch_step;
    while (!points.empty()) {
        ++steps;
        const auto fast = extreme_points(points, engine);
        const auto slow = extreme_points_oracle(points);
        if (fast != slow) {
            mismatch_step = steps;
            break;
        }
        points = peel_step(points, engine);
    }
    ordered_json j;
    j["format"] = 1;
    j["engine"] = a.engine;
    j["steps_checked"] = steps;
    j["agrees"] = !mismatch_step.has_value();
    if (mismatch_step) j["first_mismatch_step"] = *mismatch_step;
    out << j.dump(2) << '\n';
    return mismatch_step ? kExitRefuted : kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convex layers of point sets: generators, peeling, evenness checks and scaling sweeps.", "peelkit"};
    app.option_defaults()->always_capture_default();
    app.set_version_flag("--version", PEELKIT_VERSION);
    app.require_subcommand(1);

    const auto engine_check = CLI::IsMember({"auto", "chain", "lp", "oracle"});
    const auto family_check = CLI::IsMember({"collinear", "convex", "uniform_ball", "grid", "onion"});

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a point set of the given family");
    generate->add_option("--family", gen.family, "collinear, convex, uniform_ball, grid or onion")
        ->required()->check(family_check);
    generate->add_option("--d", gen.d, "Dimension (collinear, convex and onion are planar)");
    generate->add_option("--n", gen.n, "Size parameter")->required();
    generate->add_option("--seed", gen.seed, "Random seed (uniform_ball)");
    generate->add_option("--alpha", gen.alpha, "Evenness target (onion)");
    generate->add_option("--onion-c", gen.onion_c, "Override the ring spacing constant C (onion, exploratory)");
    generate->add_option("-o,--output", gen.output, "Point-set file; standard output when empty");
    generate->add_option("--params-output", gen.params_output,
                         "Onion parameter JSON; defaults to <output>.params.json when --output is set");

    PeelArgs pl;
    auto* peel_cmd = app.add_subcommand("peel", "Peel a point set and write the layer of every point");
    peel_cmd->add_option("-i,--input", pl.input, "Point-set file, '-' for standard input")->required();
    peel_cmd->add_option("-o,--output", pl.output, "Layer CSV; standard output when empty");
    peel_cmd->add_option("--engine", pl.engine, "auto, chain, lp or oracle")->check(engine_check);
    peel_cmd->add_option("--inner-radius", pl.inner_radius, "Also run the cap diagnostic with this inner disk radius");
    peel_cmd->add_option("--cap-output", pl.cap_output, "Cap diagnostic JSON; standard error when empty");

    CheckEvenArgs ce;
    auto* check = app.add_subcommand("check-even", "Certify or refute that a point set is alpha-evenly distributed");
    check->add_option("-i,--input", ce.input, "Point-set file, '-' for standard input")->required();
    check->add_option("-o,--output", ce.output, "Report JSON; standard output when empty");
    check->add_option("--alpha", ce.alpha, "Evenness parameter, > 1")->required();
    check->add_option("--probes", ce.probes, "Random balls tested before the neighbour balls");
    check->add_option("--seed", ce.seed, "Random seed for the probe");
    check->add_option("--max-rank", ce.max_rank, "Largest neighbour rank for the per-point balls");

    ExperimentArgs ex;
    auto* experiment = app.add_subcommand("experiment", "Sweep sizes, peel each set and fit L against |X|");
    experiment->add_option("--family", ex.family, "collinear, convex, uniform_ball, grid or onion")
        ->required()->check(family_check);
    experiment->add_option("--d", ex.d, "Dimension");
    experiment->add_option("--n-list", ex.n_list, "Strictly increasing sizes, comma separated")
        ->required()->delimiter(',');
    experiment->add_option("--seeds", ex.seeds, "Seeds, comma separated; one seed for deterministic families")
        ->delimiter(',');
    experiment->add_option("--alpha", ex.alpha, "Evenness target (onion)");
    experiment->add_option("--onion-c", ex.onion_c, "Override C (onion, exploratory)");
    experiment->add_option("--threads", ex.threads, "Worker threads");
    experiment->add_flag("--timings", ex.timings, "Record wall-clock times; otherwise wall_time_ms is 0");
    experiment->add_option("-o,--output", ex.output, "Records CSV; standard output when empty");
    experiment->add_option("--fit-output", ex.fit_output, "Fit JSON; standard output when empty");
    experiment->add_option("--loglog-output", ex.loglog_output, "Optional per-size log-log table CSV");
    experiment->add_option("--target-slope", ex.target_slope, "Exit 2 when the fitted slope misses this value");
    experiment->add_option("--tolerance", ex.tolerance, "Allowed |slope - target|");

    OracleArgs ov;
    auto* oracle = app.add_subcommand("oracle-verify", "Compare every peel step against the exhaustive oracle");
    oracle->add_option("-i,--input", ov.input, "Point-set file, '-' for standard input");
    oracle->add_option("--family", ov.family, "Generate instead of reading a file")->check(family_check);
    oracle->add_option("--d", ov.d, "Dimension (with --family)");
    oracle->add_option("--n", ov.n, "Size (with --family)");
    oracle->add_option("--seed", ov.seed, "Seed (with --family)");
    oracle->add_option("--engine", ov.engine, "Engine under test: auto, chain or lp")->check(engine_check);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << PEELKIT_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (msg.empty()) msg = e.get_name();
        err << "peelkit: " << msg << '\n';
        return kExitInvalid;
    }

    try {
        if (generate->parsed()) return do_generate(gen, out);
        if (peel_cmd->parsed()) return do_peel(pl, out, err);
        if (check->parsed()) return do_check_even(ce, out);
        if (experiment->parsed()) return do_experiment(ex, out);
        if (oracle->parsed()) return do_oracle_verify(ov, out);
    } catch (const ParseError& e) {
        err << "peelkit: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidArgument& e) {
        err << "peelkit: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "peelkit: internal error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

} // namespace peelkit
