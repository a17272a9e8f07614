#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "enrichfp/config.hpp"
#include "enrichfp/error.hpp"
#include "enrichfp/maps.hpp"
#include "enrichfp/report.hpp"
#include "enrichfp/run.hpp"
#include "enrichfp/solver.hpp"
#include "enrichfp/spaces.hpp"
#include "enrichfp/stability.hpp"

namespace py = pybind11;
using namespace enrichfp;

// Structured results cross the boundary as JSON text; the Python side decodes
// them, which keeps one serialization path for reports.

namespace {

Point point(const std::vector<double>& v) { return Point(v); }

Family family(const std::string& name) {
    auto f = parse_family(name);
    if (!f) throw Error(ErrorKind::validation, "unknown family '" + name + "'");
    return *f;
}

}  // namespace

PYBIND11_MODULE(_enrichfp, m) {
    m.doc() = "Convex metric spaces, enriched contraction checks and the averaged fixed-point iteration";
    m.attr("__version__") = std::string(version());

    static py::handle exc = py::exception<Error>(m, "EnrichfpError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(exc, ("[" + std::string(to_string(e.kind())) + "] " + e.what()).c_str());
        }
    });

    m.def("space_names", &builtin_space_names);
    m.def("pair_names", &builtin_pair_names);
    m.def("family_names", [] {
        std::vector<std::string> out;
        for (Family f : all_families()) out.emplace_back(to_string(f));
        return out;
    });

    m.def("metric", [](const std::string& space, const std::vector<double>& x, const std::vector<double>& y) {
        const auto& s = builtin_space(space);
        return metric_eval(s, point(x), point(y));
    }, py::arg("space"), py::arg("x"), py::arg("y"));

    m.def("convex_combine", [](const std::string& space, const std::vector<double>& x,
                               const std::vector<double>& y, double lam) {
        return convex_combine(builtin_space(space), point(x), point(y), lam).vec();
    }, py::arg("space"), py::arg("x"), py::arg("y"), py::arg("lam"));

    m.def("relate", [](const std::string& space, const std::vector<double>& x, const std::vector<double>& y) {
        return relate(builtin_space(space), point(x), point(y));
    }, py::arg("space"), py::arg("x"), py::arg("y"));

    m.def("apply", [](const std::string& pair, const std::string& which, const std::vector<double>& x) {
        const MapPair& p = builtin_pair(pair);
        const Point y = which == "s" ? p.s(point(x)) : p.t(point(x));
        return y.vec();
    }, py::arg("pair"), py::arg("which"), py::arg("x"));

    m.def("_solve", [](const std::string& space, const std::string& pair, const std::vector<double>& x0,
                       double lam, double tol, std::size_t max_iters, std::optional<double> a_hint) {
        const SolveOptions opts{lam, tol, max_iters, a_hint};
        const IterationTrace t = iterate_pair(builtin_space(space), builtin_pair(pair), point(x0), opts);
        Json j = to_json(t);
        Json pts = Json::array();
        for (const auto& p : t.points) pts.push_back(to_json(p));
        j["points"] = pts;
        return dump_document(j);
    }, py::arg("space"), py::arg("pair"), py::arg("x0"), py::arg("lam") = 0.5, py::arg("tol") = 1e-10,
       py::arg("max_iters") = 1'000'000, py::arg("a_hint") = py::none());

    m.def("_check_contraction", [](const std::string& space, const std::string& pair, const std::string& fam,
                                   double a, double alpha, double lam, double b, std::size_t n_samples,
                                   double tol, std::uint64_t seed) {
        const ContractionSpec spec{family(fam), a, alpha, lam, b};
        return dump_document(to_json(
            check_contraction(builtin_space(space), builtin_pair(pair), spec, n_samples, tol, seed)));
    }, py::arg("space"), py::arg("pair"), py::arg("family"), py::arg("a") = 0.5, py::arg("alpha") = 0.5,
       py::arg("lam") = 0.5, py::arg("b") = 0.0, py::arg("n_samples") = 10'000, py::arg("tol") = 1e-9,
       py::arg("seed") = 0);

    m.def("_check_space", [](const std::string& space, std::size_t n_samples, double tol, std::uint64_t seed) {
        const auto& s = builtin_space(space);
        Json j = Json::array({to_json(check_metric_axioms(s, n_samples, tol, seed)),
                              to_json(check_convexity_inequality(s, n_samples, tol, seed))});
        return dump_document(j);
    }, py::arg("space"), py::arg("n_samples") = 10'000, py::arg("tol") = 1e-9, py::arg("seed") = 0);

    m.def("_config_echo", [](const std::string& text, std::optional<std::string> mode) {
        std::optional<Mode> md;
        if (mode) {
            md = parse_mode(*mode);
            if (!md) throw Error(ErrorKind::validation, "unknown mode '" + *mode + "'");
        }
        return dump_document(config_to_json(parse_config(text, md)));
    }, py::arg("text"), py::arg("mode") = py::none());

    m.def("_run", [](const std::string& text, std::optional<std::string> mode, bool write_files) {
        std::optional<Mode> md;
        if (mode) {
            md = parse_mode(*mode);
            if (!md) throw Error(ErrorKind::validation, "unknown mode '" + *mode + "'");
        }
        const RunConfig cfg = parse_config(text, md);
        RunResult r;
        {
            py::gil_scoped_release release;
            r = run(cfg, {true, write_files});
        }
        return py::make_tuple(r.exit_status, dump_document(r.report));
    }, py::arg("text"), py::arg("mode") = py::none(), py::arg("write_files") = false);
}
