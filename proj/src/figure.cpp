#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "nilgeom/errors.hpp"
#include "nilgeom/scene.hpp"

namespace nilgeom::scenes {

namespace {

constexpr double kCanvas = 800.0;
constexpr double kMargin = 48.0;

struct Polyline {
    std::string name;
    std::string kind; // side | curve
    std::vector<ModelPoint> samples;
};

std::string fmt(const char* spec, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v == 0.0 ? 0.0 : v); // no "-0"
    return buf;
}

std::string full(double v) { return fmt("%.17g", v); }

std::vector<ModelPoint> sample_curve(const Geometry& geo, const TranslationCurve& c, double t0, double t1, int n)
{
    std::vector<ModelPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(geo.eval(c, t0 + (t1 - t0) * i / (n - 1)));
    return out;
}

std::vector<Polyline> polylines(const Scene& scene, int samples)
{
    const Geometry& geo = scene.geometry_instance();
    std::vector<Polyline> out;
    for (const auto& [name, v] : scene.triangles) {
        static constexpr std::array<std::array<std::size_t, 2>, 3> kSides{{{0, 1}, {1, 2}, {2, 0}}};
        for (const auto& [i, j] : kSides) {
            const auto side = geo.curve_through(scene.point(v[i]), scene.point(v[j]));
            out.push_back({name + ":" + v[i] + v[j], "side", sample_curve(geo, side.curve, 0.0, side.length, samples)});
        }
    }
    for (const auto& c : scene.curves) {
        const TranslationCurve curve = scene.curve(c.name);
        double t0 = -1.0;
        double t1 = 1.0;
        if (c.through) {
            const double len = geo.distance(scene.point((*c.through)[0]), scene.point((*c.through)[1]));
            t0 = -0.25 * len;
            t1 = 1.25 * len;
        }
        out.push_back({c.name, "curve", sample_curve(geo, curve, t0, t1, samples)});
    }
    return out;
}

Bounds default_bounds(const Scene& scene, const std::string& triangle)
{
    const TriangleSurface surface = scene.triangle(triangle);
    Bounds b{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
             std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (const auto& p : surface.vertices()) {
        b.x0 = std::min(b.x0, p.x);
        b.x1 = std::max(b.x1, p.x);
        b.y0 = std::min(b.y0, p.y);
        b.y1 = std::max(b.y1, p.y);
    }
    const double pad = 0.1 * std::max({b.x1 - b.x0, b.y1 - b.y0, 1.0});
    return {b.x0 - pad, b.x1 + pad, b.y0 - pad, b.y1 + pad};
}

TriangleMesh scene_mesh(const Scene& scene, const FigureOptions& options)
{
    if (scene.triangles.empty())
        throw Error(ErrorCode::UnknownReference, "scene has no triangle to mesh");
    const std::string name = options.triangle.value_or(scene.triangles.front().first);
    const Bounds bounds = options.bounds.value_or(default_bounds(scene, name));
    return sample_mesh(scene.triangle(name), bounds, options.mesh_resolution);
}

std::string svg(const Scene& scene, bool xz, const FigureOptions& options)
{
    const auto lines = polylines(scene, options.curve_samples);
    const auto second = [xz](const ModelPoint& p) { return xz ? p.z : p.y; };

    double lo_a = std::numeric_limits<double>::max();
    double hi_a = std::numeric_limits<double>::lowest();
    double lo_b = lo_a;
    double hi_b = hi_a;
    const auto extend = [&](const ModelPoint& p) {
        lo_a = std::min(lo_a, p.x);
        hi_a = std::max(hi_a, p.x);
        lo_b = std::min(lo_b, second(p));
        hi_b = std::max(hi_b, second(p));
    };
    for (const auto& l : lines)
        std::for_each(l.samples.begin(), l.samples.end(), extend);
    for (const auto& [name, p] : scene.points)
        extend(p);
    if (lo_a > hi_a) {
        lo_a = lo_b = -1.0;
        hi_a = hi_b = 1.0;
    }
    const double span = std::max({hi_a - lo_a, hi_b - lo_b, 1e-9});
    const double scale = (kCanvas - 2.0 * kMargin) / span;
    const double off_a = kMargin + 0.5 * ((kCanvas - 2.0 * kMargin) - (hi_a - lo_a) * scale);
    const double off_b = kMargin + 0.5 * ((kCanvas - 2.0 * kMargin) - (hi_b - lo_b) * scale);
    const auto ax = [&](const ModelPoint& p) { return off_a + (p.x - lo_a) * scale; };
    const auto ay = [&](const ModelPoint& p) { return kCanvas - off_b - (second(p) - lo_b) * scale; };
    const auto px = [&](const ModelPoint& p) { return fmt("%.3f", ax(p)); };
    const auto py = [&](const ModelPoint& p) { return fmt("%.3f", ay(p)); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
        << "<title>" << scene.name << " (" << (xz ? "xz" : "xy") << " projection)</title>\n"
        << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    for (const auto& l : lines) {
        const char* stroke = l.kind == "side" ? "#1f3b73" : "#b5482a";
        out << "<polyline id=\"" << l.name << "\" fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < l.samples.size(); ++i)
            out << (i ? " " : "") << px(l.samples[i]) << "," << py(l.samples[i]);
        out << "\"/>\n";
    }
    for (const auto& [name, p] : scene.points) {
        out << "<circle cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"3.5\" fill=\"black\"/>\n";
        out << "<text x=\"" << fmt("%.3f", ax(p) + 6.0) << "\" y=\"" << fmt("%.3f", ay(p) - 6.0)
            << "\" font-family=\"sans-serif\" font-size=\"14\">" << name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string csv(const Scene& scene, const FigureOptions& options)
{
    std::ostringstream out;
    out << "name,kind,x,y,z\n";
    const auto row = [&](const std::string& name, const char* kind, const ModelPoint& p) {
        out << name << "," << kind << "," << full(p.x) << "," << full(p.y) << "," << full(p.z) << "\n";
    };
    for (const auto& [name, p] : scene.points)
        row(name, "point", p);
    for (const auto& l : polylines(scene, options.curve_samples))
        for (const auto& p : l.samples)
            row(l.name, "curve", p);
    if (!scene.triangles.empty()) {
        const std::string name = options.triangle.value_or(scene.triangles.front().first);
        for (const auto& p : scene_mesh(scene, options).vertices)
            row(name, "surface", p);
    }
    return out.str();
}

} // namespace

FigureTarget parse_figure_target(std::string_view text)
{
    if (text == "svg-xy" || text == "svg")
        return FigureTarget::SvgXY;
    if (text == "svg-xz" || text == "-xz")
        return FigureTarget::SvgXZ;
    if (text == "csv")
        return FigureTarget::Csv;
    if (text == "obj")
        return FigureTarget::Obj;
    throw Error(ErrorCode::UnsupportedTarget, "unsupported figure target '" + std::string(text) + "'");
}

std::string mesh_to_obj(const TriangleMesh& mesh)
{
    std::ostringstream out;
    for (const auto& v : mesh.vertices)
        out << "v " << full(v.x) << " " << full(v.y) << " " << full(v.z) << "\n";
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    return out.str();
}

std::string emit_figure(const Scene& scene, FigureTarget target, const FigureOptions& options)
{
    if (options.curve_samples < 64)
        throw Error(ErrorCode::InvalidArgument, "curves need at least 64 samples");
    switch (target) {
    case FigureTarget::SvgXY: return svg(scene, false, options);
    case FigureTarget::SvgXZ: return svg(scene, true, options);
    case FigureTarget::Csv: return csv(scene, options);
    case FigureTarget::Obj: return mesh_to_obj(scene_mesh(scene, options));
    }
    throw Error(ErrorCode::UnsupportedTarget, "unsupported figure target");
}

} // namespace nilgeom::scenes
