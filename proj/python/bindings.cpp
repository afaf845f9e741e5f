#include "peelkit/evenness.hpp"
#include "peelkit/experiments.hpp"
#include "peelkit/generators.hpp"
#include "peelkit/geometry.hpp"
#include "peelkit/peeling.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace peelkit;

namespace {

PointSet point_set_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> array,
                              const std::string& label) {
    if (array.ndim() != 2) throw InvalidArgument("expected a 2-d array of shape (n, d)");
    const auto n = static_cast<std::size_t>(array.shape(0));
    const auto d = static_cast<std::size_t>(array.shape(1));
    std::vector<double> coords(array.data(), array.data() + n * d);
    return PointSet(d, std::move(coords), label);
}

py::array_t<double> point_set_to_array(const PointSet& points) {
    py::array_t<double> out({points.size(), points.dim()});
    auto coords = points.coords();
    std::copy(coords.begin(), coords.end(), out.mutable_data());
    return out;
}

Engine parse_engine(const std::string& name) {
    if (name == "auto") return Engine::Automatic;
    if (name == "chain") return Engine::HullChain;
    if (name == "lp") return Engine::LinearProgram;
    if (name == "oracle") return Engine::Oracle;
    throw InvalidArgument("unknown engine '" + name + "'");
}

py::dict report_to_dict(const EvennessReport& report) {
    py::dict d;
    d["alpha"] = report.alpha;
    d["method"] = to_string(report.method);
    d["verdict"] = to_string(report.verdict);
    if (report.witness) {
        py::dict w;
        w["center"] = report.witness->center;
        w["radius"] = report.witness->radius;
        w["count"] = report.witness->count;
        w["bound"] = report.witness->bound;
        d["witness"] = w;
    } else {
        d["witness"] = py::none();
    }
    d["beta_star"] = report.beta_star ? py::cast(*report.beta_star) : py::none();
    d["certified_level"] = report.certified_level ? py::cast(*report.certified_level) : py::none();
    d["balls_tested"] = report.balls_tested;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Convex layer peeling, point set generators and evenness checks.";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::class_<PointSet>(m, "PointSet")
        .def(py::init(&point_set_from_array), py::arg("points"), py::arg("label") = "")
        .def_property_readonly("dim", &PointSet::dim)
        .def_property_readonly("label", &PointSet::label)
        .def_property_readonly("ids", &PointSet::ids)
        .def("to_numpy", &point_set_to_array)
        .def("__len__", &PointSet::size)
        .def("__repr__", [](const PointSet& p) {
            return "PointSet(n=" + std::to_string(p.size()) + ", dim=" + std::to_string(p.dim()) + ")";
        });

    py::class_<LayerAssignment>(m, "LayerAssignment")
        .def_readonly("layer_of", &LayerAssignment::layer_of)
        .def_readonly("layer_count", &LayerAssignment::layer_count)
        .def_readonly("layer_sizes", &LayerAssignment::layer_sizes);

    py::class_<OnionParams>(m, "OnionParams")
        .def_readonly("n", &OnionParams::n)
        .def_readonly("alpha", &OnionParams::alpha)
        .def_readonly("beta", &OnionParams::beta)
        .def_readonly("C", &OnionParams::C)
        .def_readonly("M", &OnionParams::M)
        .def_readonly("k", &OnionParams::k)
        .def_readonly("ring_edge_length", &OnionParams::ring_edge_length)
        .def_readonly("ring_count", &OnionParams::ring_count)
        .def("min_spacing", &OnionParams::min_spacing);

    m.def("extreme_points", [](const PointSet& p, const std::string& engine) {
        return extreme_points(p, parse_engine(engine));
    }, py::arg("points"), py::arg("engine") = "auto",
       "Positions of the strictly extreme points, ascending.");
    m.def("peel", [](const PointSet& p, const std::string& engine) {
        py::gil_scoped_release release;
        return peel(p, parse_engine(engine));
    }, py::arg("points"), py::arg("engine") = "auto");
    m.def("layer_number", [](const PointSet& p, const std::string& engine) {
        py::gil_scoped_release release;
        return layer_number(p, parse_engine(engine));
    }, py::arg("points"), py::arg("engine") = "auto");

    m.def("gen_collinear", &gen_collinear, py::arg("n"));
    m.def("gen_convex_position", &gen_convex_position, py::arg("n"));
    m.def("gen_uniform_ball", &gen_uniform_ball, py::arg("dim"), py::arg("n"), py::arg("seed"));
    m.def("gen_grid", &gen_grid, py::arg("dim"), py::arg("n"));
    m.def("gen_onion", [](std::uint64_t n, double alpha, std::optional<double> c) {
        OnionSet onion = gen_onion(n, alpha, c);
        return py::make_tuple(std::move(onion.points), std::move(onion.params));
    }, py::arg("n"), py::arg("alpha"), py::arg("onion_c") = py::none(),
       "Returns (points, params).");

    m.def("f_d", &f_d, py::arg("dim"), py::arg("beta"));
    m.def("beta_for_alpha", &beta_for_alpha, py::arg("dim"), py::arg("alpha"));
    m.def("certify_min_distance", [](const PointSet& p, double alpha) {
        return report_to_dict(certify_min_distance(p, alpha));
    }, py::arg("points"), py::arg("alpha"));
    m.def("probe_evenness", [](const PointSet& p, double alpha, std::uint64_t probes, std::uint64_t seed,
                               std::size_t max_rank) {
        EvennessReport report;
        {
            py::gil_scoped_release release;
            report = probe_evenness(p, alpha, ProbeOptions{probes, seed, max_rank});
        }
        return report_to_dict(report);
    }, py::arg("points"), py::arg("alpha"), py::arg("probes") = 1000, py::arg("seed") = 0,
       py::arg("max_rank") = 64);

    m.def("run_sweep", [](const std::string& family, int dim, const std::vector<std::uint64_t>& n_list,
                          const std::vector<std::uint64_t>& seeds, double alpha, unsigned threads) {
        SweepOptions options;
        options.params.alpha = alpha;
        options.threads = threads;
        options.record_timings = false;
        std::vector<ExperimentRecord> records;
        {
            py::gil_scoped_release release;
            records = run_sweep(parse_family(family), dim, n_list, seeds, options);
        }
        py::list out;
        for (const auto& r : records) {
            py::dict row;
            row["family"] = to_string(r.family);
            row["d"] = r.d;
            row["n_param"] = r.n_param;
            row["actual_size"] = r.actual_size;
            row["layer_number"] = r.layer_number;
            row["seed"] = r.seed;
            out.append(row);
        }
        return out;
    }, py::arg("family"), py::arg("dim"), py::arg("n_list"), py::arg("seeds") = std::vector<std::uint64_t>{0},
       py::arg("alpha") = 4.0, py::arg("threads") = 1);

    m.def("fit_power_law", [](const std::vector<double>& sizes, const std::vector<double>& layers) {
        const ExponentFit fit = fit_power_law(sizes, layers);
        py::dict d;
        d["slope"] = fit.slope;
        d["intercept"] = fit.intercept;
        d["r_squared"] = fit.r_squared;
        d["point_count"] = fit.point_count;
        return d;
    }, py::arg("sizes"), py::arg("layers"));

    m.attr("__version__") = PEELKIT_VERSION;
}
