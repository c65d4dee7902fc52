// Writes the golden scenes into the given directory (default: scenes).
//
// Configurations are built in the exponential chart, where translation
// curves are straight and the triangle surface is the plane of the vertices,
// so every constructed point lies on the surface up to rounding.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "nilgeom/errors.hpp"
#include "nilgeom/scene.hpp"

namespace {

using namespace nilgeom;
using namespace nilgeom::scenes;

Eigen::Vector3d chart(const ModelPoint& p) { return {p.x, p.y, p.z - 0.5 * p.x * p.y}; }
ModelPoint unchart(const Eigen::Vector3d& e) { return {e.x(), e.y(), e.z() + 0.5 * e.x() * e.y()}; }

// A0 + alpha (A1 - A0) + beta (A2 - A0) in the chart.
ModelPoint affine(const std::array<ModelPoint, 3>& v, double alpha, double beta)
{
    const Eigen::Vector3d a0 = chart(v[0]);
    return unchart(a0 + alpha * (chart(v[1]) - a0) + beta * (chart(v[2]) - a0));
}

// Point at fraction t of the way from p to q along their connecting curve.
ModelPoint along(const ModelPoint& p, const ModelPoint& q, double t)
{
    const auto c = curve_through(p, q);
    return curve_eval(c.curve, t * c.length);
}

ModelPoint meet(const ModelPoint& a, const ModelPoint& b, const ModelPoint& c, const ModelPoint& d)
{
    const ExtendedPoint m = intersect(curve_through(a, b).curve, curve_through(c, d).curve);
    if (!m.is_proper())
        throw Error(ErrorCode::MissingIntersection, "golden construction produced an ideal meet");
    return m.proper();
}

class Builder {
public:
    Builder(std::string name, std::string description)
    {
        scene_.name = std::move(name);
        scene_.description = std::move(description);
    }

    Builder& point(const std::string& name, const ModelPoint& p)
    {
        scene_.points.emplace_back(name, p);
        return *this;
    }
    Builder& triangle(const std::string& name, std::array<std::string, 3> v)
    {
        scene_.triangles.emplace_back(name, std::move(v));
        return *this;
    }
    Builder& curve(const std::string& name, const std::string& p, const std::string& q)
    {
        CurveDef c;
        c.name = name;
        c.through = std::array<std::string, 2>{p, q};
        scene_.curves.push_back(std::move(c));
        return *this;
    }
    Builder& assertion(Assertion a)
    {
        scene_.assertions.push_back(std::move(a));
        return *this;
    }
    Builder& on_surface(const std::string& tri, const std::string& p)
    {
        Assertion a{};
        a.kind = AssertionKind::OnSurface;
        a.id = "on-surface:" + p;
        a.triangle = tri;
        a.point = p;
        return assertion(std::move(a));
    }
    Builder& collinear(const std::string& id, const std::string& p, const std::string& q, const std::string& r)
    {
        Assertion a{};
        a.kind = AssertionKind::Collinear;
        a.id = id;
        a.points = {p, q, r};
        return assertion(std::move(a));
    }
    Builder& menelaus(const std::string& id, const std::string& tri, const std::string& transversal)
    {
        Assertion a{};
        a.kind = AssertionKind::Menelaus;
        a.id = id;
        a.triangle = tri;
        a.transversal = transversal;
        return assertion(std::move(a));
    }

    const Scene& scene() const { return scene_; }

private:
    Scene scene_;
};

const std::array<ModelPoint, 3> kTriangle{{{-0.9, -0.6, 0.2}, {1.0, -0.4, -0.3}, {0.1, 0.95, 0.5}}};

Builder desargues_fig1(bool tampered)
{
    const auto& a = kTriangle;
    const ModelPoint s = affine(a, 0.3, 0.25);
    const std::array<double, 3> lambdas{0.45, 0.7, 0.55};
    const auto b = perspective_points(s, a, lambdas);
    ModelPoint m12 = meet(a[0], a[1], b[0], b[1]);
    const ModelPoint m13 = meet(a[0], a[2], b[0], b[2]);
    const ModelPoint m23 = meet(a[1], a[2], b[1], b[2]);
    if (tampered)
        m12.z += 0.1;

    Builder out(tampered ? "tampered" : "desargues_fig1",
                tampered ? "Desargues configuration with the stored meet M12 moved by 0.1 along z; the "
                           "collinearity and membership assertions on M12 must fail"
                         : "Triangles A1A2A3 and B1B2B3 in perspective from S on one translation triangle "
                           "surface; the meets of corresponding sides lie on one translation curve");
    out.point("A1", a[0]).point("A2", a[1]).point("A3", a[2]).point("S", s);
    out.point("B1", b[0]).point("B2", b[1]).point("B3", b[2]);
    out.point("M12", m12).point("M13", m13).point("M23", m23);
    out.triangle("A", {"A1", "A2", "A3"}).triangle("B", {"B1", "B2", "B3"});
    out.curve("SA1", "S", "A1").curve("SA2", "S", "A2").curve("SA3", "S", "A3");
    out.curve("B1B2", "B1", "B2").curve("B1B3", "B1", "B3").curve("B2B3", "B2", "B3");
    out.curve("axis", "M13", "M23");
    for (const char* p : {"S", "B1", "B2", "B3", "M12", "M13", "M23"})
        out.on_surface("A", p);
    Assertion d{};
    d.kind = AssertionKind::Desargues;
    d.id = "desargues";
    d.triangle = "A";
    d.center = "S";
    d.a = {"A1", "A2", "A3"};
    d.b = {"B1", "B2", "B3"};
    out.assertion(d);
    out.collinear("axis", "M12", "M13", "M23");
    return out;
}

Builder pappus(bool with_auxiliary)
{
    const auto& v = kTriangle;
    // ga from A0 towards side A1A2, gb from A1 towards side A2A0.
    const ModelPoint xa = affine(v, 0.45, 0.55);
    const ModelPoint xb = affine(v, 0.0, 0.6);
    const std::array<ModelPoint, 3> a{along(v[0], xa, 0.15), along(v[0], xa, 0.55), along(v[0], xa, 1.05)};
    const std::array<ModelPoint, 3> b{along(v[1], xb, 0.1), along(v[1], xb, 0.5), along(v[1], xb, 0.95)};
    const ModelPoint m1 = meet(a[0], b[0], a[2], b[1]);
    const ModelPoint m2 = meet(a[1], b[1], a[0], b[2]);
    const ModelPoint m3 = meet(a[2], b[2], a[1], b[0]);

    Builder out(with_auxiliary ? "pappus_fig3" : "pappus_fig2",
                with_auxiliary ? "Pappus hexagon A1B1A2B2A3B3 with the auxiliary triangle C12 C13 C23 cut out by "
                                 "A3B2, A1B3, A2B1, and the Menelaus transversals used to prove collinearity"
                               : "Pappus hexagon A1B1A2B2A3B3 with A_i on ga and B_i on gb; M1, M2, M3 lie on "
                                 "one translation curve");
    out.point("T1", v[0]).point("T2", v[1]).point("T3", v[2]);
    out.point("A1", a[0]).point("A2", a[1]).point("A3", a[2]);
    out.point("B1", b[0]).point("B2", b[1]).point("B3", b[2]);
    out.point("M1", m1).point("M2", m2).point("M3", m3);
    out.triangle("T", {"T1", "T2", "T3"});
    out.curve("ga", "A1", "A3").curve("gb", "B1", "B3").curve("axis", "M1", "M3");
    out.curve("A1B1", "A1", "B1").curve("A3B2", "A3", "B2").curve("A2B2", "A2", "B2");
    out.curve("A1B3", "A1", "B3").curve("A3B3", "A3", "B3").curve("A2B1", "A2", "B1");
    for (const char* p : {"A1", "A2", "A3", "B1", "B2", "B3", "M1", "M2", "M3"})
        out.on_surface("T", p);
    Assertion pa{};
    pa.kind = AssertionKind::Pappus;
    pa.id = "pappus";
    pa.triangle = "T";
    pa.a = {"A1", "A2", "A3"};
    pa.b = {"B1", "B2", "B3"};
    out.assertion(pa);
    out.collinear("axis", "M1", "M2", "M3");
    if (with_auxiliary) {
        out.point("C12", meet(a[2], b[1], a[0], b[2]));
        out.point("C13", meet(a[2], b[1], a[1], b[0]));
        out.point("C23", meet(a[0], b[2], a[1], b[0]));
        out.triangle("C", {"C12", "C13", "C23"});
        for (const char* t : {"ga", "gb", "axis", "A1B1", "A2B2", "A3B3"})
            out.menelaus(std::string("menelaus:C:") + t, "C", t);
    }
    return out;
}

Builder menelaus_scene()
{
    const auto& v = kTriangle;
    const ModelPoint p = affine(v, 0.35, 0.0);      // inside side A1A2
    const ModelPoint q = affine(v, -0.6, 1.6);      // on A2A3 beyond A3
    Builder out("menelaus", "Transversal through P on side A1A2 and Q on the extension of A2A3");
    out.point("A1", v[0]).point("A2", v[1]).point("A3", v[2]).point("P", p).point("Q", q);
    out.triangle("T", {"A1", "A2", "A3"}).curve("g", "P", "Q");
    out.on_surface("T", "P").on_surface("T", "Q");
    out.menelaus("menelaus", "T", "g");
    return out;
}

Builder fibre_menelaus_scene()
{
    // Vertical plane y = 0.25: a fibre-type triangle surface.
    const std::array<ModelPoint, 3> v{{{-0.8, 0.25, -0.5}, {0.9, 0.25, 0.1}, {0.2, 0.25, 0.9}}};
    const ModelPoint p = affine(v, 0.4, 0.0);
    const ModelPoint q = affine(v, 0.3, 0.7);
    Builder out("fibre_menelaus", "Menelaus on a fibre-type triangle in the vertical plane y = 0.25");
    out.point("A1", v[0]).point("A2", v[1]).point("A3", v[2]).point("P", p).point("Q", q);
    out.triangle("T", {"A1", "A2", "A3"}).curve("g", "P", "Q");
    out.menelaus("menelaus", "T", "g");
    return out;
}

Builder missing_intersection_scene()
{
    const auto& v = kTriangle;
    const ModelPoint p = affine(v, 0.4, 0.0);
    // Chart-parallel to side A3A1: the transversal never meets that side.
    const ModelPoint q = unchart(chart(p) + chart(v[0]) - chart(v[2]));
    Builder out("missing_intersection",
                "Transversal through a point of side A1A2 parallel to side A3A1; the Menelaus meet on A3A1 "
                "does not exist, so the check is inconclusive");
    out.point("A1", v[0]).point("A2", v[1]).point("A3", v[2]).point("P", p).point("Q", q);
    out.triangle("T", {"A1", "A2", "A3"}).curve("g", "P", "Q");
    out.menelaus("menelaus", "T", "g");
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    const std::filesystem::path dir = argc > 1 ? argv[1] : "scenes";
    std::filesystem::create_directories(dir);
    try {
        for (const auto& b : {desargues_fig1(false), desargues_fig1(true), pappus(false), pappus(true),
                              menelaus_scene(), fibre_menelaus_scene(), missing_intersection_scene()}) {
            const auto path = dir / (b.scene().name + ".json");
            std::ofstream(path, std::ios::binary) << dump_scene(b.scene());
            std::cout << path.string() << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
