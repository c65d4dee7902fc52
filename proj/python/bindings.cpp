#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nilgeom/errors.hpp"
#include "nilgeom/incidence.hpp"
#include "nilgeom/nil_kernel.hpp"
#include "nilgeom/scene.hpp"
#include "nilgeom/triangle_surface.hpp"

namespace py = pybind11;
using namespace nilgeom;

namespace {

using Triple = std::array<double, 3>;

NilPoint pt(const Triple& t) { return {t[0], t[1], t[2]}; }
Triple tup(const NilPoint& p) { return {p.x, p.y, p.z}; }

std::array<ModelPoint, 3> pts3(const std::array<Triple, 3>& t) { return {pt(t[0]), pt(t[1]), pt(t[2])}; }

const Geometry& geometry_named(const std::string& name) { return geometry_for(parse_geometry_tag(name)); }

py::object extended(const ExtendedPoint& p)
{
    if (p.is_proper())
        return py::cast(tup(p.proper()));
    py::dict d;
    d["ideal"] = p.ideal().psi;
    return d;
}

py::dict report_dict(const IncidenceReport& r)
{
    py::dict out;
    out["verdict"] = std::string(to_string(r.verdict));
    py::dict residuals;
    for (const auto& res : r.residuals)
        residuals[py::str(res.name)] = py::make_tuple(res.value, res.tolerance);
    out["residuals"] = residuals;
    py::dict points;
    for (const auto& [name, p] : r.points)
        points[py::str(name)] = extended(p);
    out["points"] = points;
    out["note"] = r.note;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Translation curves, triangle surfaces and incidence checks in Nil geometry";

    // Messages start with the error code name, e.g. "ZeroLength: ...".
    py::register_exception<Error>(m, "NilGeomError", PyExc_ValueError);

    py::class_<TranslationCurve>(m, "TranslationCurve")
        .def(py::init([](const Triple& base, const Triple& dir) {
                 return TranslationCurve(pt(base), {dir[0], dir[1], dir[2]});
             }),
             py::arg("base"), py::arg("dir"))
        .def_property_readonly("base", [](const TranslationCurve& c) { return tup(c.base()); })
        .def_property_readonly("dir", [](const TranslationCurve& c) { return Triple{c.dir().u, c.dir().v, c.dir().w}; })
        .def("is_fibre", &TranslationCurve::is_fibre, py::arg("tol") = 1e-12)
        .def("__call__", [](const TranslationCurve& c, double t) { return tup(curve_eval(c, t)); });

    m.def("compose", [](const Triple& g, const Triple& h) {
        const auto r = compose({g[0], g[1], g[2]}, {h[0], h[1], h[2]});
        return Triple{r.x, r.y, r.z};
    });
    m.def("apply", [](const Triple& p, const Triple& g) { return tup(apply(pt(p), {g[0], g[1], g[2]})); });
    m.def("to_origin", [](const Triple& p) {
        const auto g = to_origin(pt(p));
        return Triple{g.x, g.y, g.z};
    });
    m.def("rotate", [](const Triple& p, double omega) { return tup(rotate(pt(p), omega)); });
    m.def(
        "curve_through",
        [](const Triple& a, const Triple& b, const std::string& geometry) {
            const auto c = geometry_named(geometry).curve_through(pt(a), pt(b));
            return py::make_tuple(c.curve, c.length);
        },
        py::arg("a"), py::arg("b"), py::arg("geometry") = "nil");
    m.def("curve_eval", [](const TranslationCurve& c, double t) { return tup(curve_eval(c, t)); });
    m.def(
        "distance",
        [](const Triple& a, const Triple& b, const std::string& geometry) {
            return geometry_named(geometry).distance(pt(a), pt(b));
        },
        py::arg("a"), py::arg("b"), py::arg("geometry") = "nil");
    m.def(
        "simple_ratio",
        [](const Triple& a, const Triple& p, const Triple& b, double tol, const std::string& geometry) {
            return geometry_named(geometry).simple_ratio(pt(a), pt(p), pt(b), tol);
        },
        py::arg("a"), py::arg("p"), py::arg("b"), py::arg("tol") = 1e-9, py::arg("geometry") = "nil");

    py::class_<TriangleSurface>(m, "TriangleSurface")
        .def(py::init([](const Triple& a0, const Triple& a1, const Triple& a2, const std::string& geometry) {
                 return TriangleSurface(pt(a0), pt(a1), pt(a2), geometry_named(geometry));
             }),
             py::arg("a0"), py::arg("a1"), py::arg("a2"), py::arg("geometry") = "nil")
        .def_property_readonly("vertices",
                               [](const TriangleSurface& s) {
                                   return std::array<Triple, 3>{tup(s.vertex(0)), tup(s.vertex(1)), tup(s.vertex(2))};
                               })
        .def("functional", [](const TriangleSurface& s, const Triple& p) { return surface_functional(s, pt(p)); })
        .def("contains", [](const TriangleSurface& s, const Triple& p, double tol) { return on_surface(s, pt(p), tol); },
             py::arg("p"), py::arg("tol") = 1e-9)
        .def("project", [](const TriangleSurface& s, const Triple& q) { return tup(project_to_surface(s, pt(q))); })
        .def("kind",
             [](const TriangleSurface& s) {
                 return classify(s).kind == SurfaceKind::FibreType ? "fibre" : "general";
             })
        .def(
            "mesh",
            [](const TriangleSurface& s, const std::array<double, 4>& b, int res) {
                const TriangleMesh mesh = sample_mesh(s, {b[0], b[1], b[2], b[3]}, res);
                std::vector<Triple> v;
                v.reserve(mesh.vertices.size());
                for (const auto& p : mesh.vertices)
                    v.push_back(tup(p));
                return py::make_tuple(v, mesh.faces);
            },
            py::arg("bounds"), py::arg("resolution") = 24);

    m.def(
        "intersect",
        [](const TranslationCurve& c1, const TranslationCurve& c2, const std::string& geometry) {
            return extended(intersect(c1, c2, geometry_named(geometry)));
        },
        py::arg("c1"), py::arg("c2"), py::arg("geometry") = "nil");
    m.def("check_menelaus", [](const TriangleSurface& s, const TranslationCurve& g) {
        return report_dict(check_menelaus(s, g));
    });
    m.def("check_desargues", [](const Triple& center, const std::array<Triple, 3>& a, const std::array<Triple, 3>& b,
                                const TriangleSurface& s) {
        return report_dict(check_desargues(pt(center), pts3(a), pts3(b), s));
    });
    m.def(
        "check_pappus",
        [](const std::array<Triple, 3>& a, const std::array<Triple, 3>& b, const TriangleSurface& s,
           const std::string& pairing) {
            return report_dict(check_pappus(pts3(a), pts3(b), s, {}, parse_pappus_pairing(pairing)));
        },
        py::arg("a"), py::arg("b"), py::arg("surface"), py::arg("pairing") = "direct");
    m.def(
        "perspective_points",
        [](const Triple& center, const std::array<Triple, 3>& a, const std::array<double, 3>& lambdas) {
            const auto b = perspective_points(pt(center), pts3(a), lambdas);
            return std::array<Triple, 3>{tup(b[0]), tup(b[1]), tup(b[2])};
        });

    m.def("check_scene", [](const std::string& path) {
        const auto report = scenes::run_checks(scenes::load_scene(path));
        return py::make_tuple(report.exit_code(), report.to_json());
    });
    m.def(
        "property_run",
        [](std::uint64_t seed, int trials, const std::string& geometry) {
            scenes::RunConfig config;
            config.seed = seed;
            config.trials = trials;
            config.geometry = parse_geometry_tag(geometry);
            return scenes::property_run(config).to_json();
        },
        py::arg("seed") = 42, py::arg("trials") = 100, py::arg("geometry") = "nil");
}
