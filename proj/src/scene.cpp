#include "nilgeom/scene.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nilgeom/errors.hpp"

namespace nilgeom::scenes {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(ErrorCode code, std::string_view origin, const std::string& path, const std::string& message)
{
    throw Error(code, std::string(origin) + ": " + path + ": " + message);
}

std::string position(std::string_view text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    // nlohmann reports the offset one past the offending character.
    return std::to_string(line) + ":" + std::to_string(column > 1 ? column - 1 : column);
}

class Reader {
public:
    explicit Reader(std::string_view origin) : origin_(origin) {}

    const json& member(const json& obj, const std::string& key, const std::string& path) const
    {
        if (!obj.is_object() || !obj.contains(key))
            fail(ErrorCode::ParseError, origin_, path, "missing field '" + key + "'");
        return obj.at(key);
    }

    std::string string(const json& v, const std::string& path) const
    {
        if (!v.is_string())
            fail(ErrorCode::ParseError, origin_, path, "expected a string");
        return v.get<std::string>();
    }

    double number(const json& v, const std::string& path) const
    {
        if (!v.is_number())
            fail(ErrorCode::ParseError, origin_, path, "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d))
            fail(ErrorCode::ParseError, origin_, path, "expected a finite number");
        return d;
    }

    std::array<double, 3> triple(const json& v, const std::string& path) const
    {
        if (!v.is_array() || v.size() != 3)
            fail(ErrorCode::ParseError, origin_, path, "expected an array of three numbers");
        return {number(v[0], path + "/0"), number(v[1], path + "/1"), number(v[2], path + "/2")};
    }

    std::array<std::string, 3> names3(const json& v, const std::string& path) const
    {
        if (!v.is_array() || v.size() != 3)
            fail(ErrorCode::ParseError, origin_, path, "expected an array of three names");
        return {string(v[0], path + "/0"), string(v[1], path + "/1"), string(v[2], path + "/2")};
    }

    const json& array(const json& root, const std::string& key) const
    {
        static const json empty = json::array();
        if (!root.contains(key))
            return empty;
        const json& v = root.at(key);
        if (!v.is_array())
            fail(ErrorCode::ParseError, origin_, "/" + key, "expected an array");
        return v;
    }

    std::string_view origin() const { return origin_; }

private:
    std::string_view origin_;
};

AssertionKind parse_kind(const std::string& type, std::string_view origin, const std::string& path)
{
    if (type == "on-surface")
        return AssertionKind::OnSurface;
    if (type == "collinear")
        return AssertionKind::Collinear;
    if (type == "menelaus")
        return AssertionKind::Menelaus;
    if (type == "desargues")
        return AssertionKind::Desargues;
    if (type == "pappus")
        return AssertionKind::Pappus;
    fail(ErrorCode::ParseError, origin, path, "unknown assertion type '" + type + "'");
}

json point_json(const ModelPoint& p) { return json::array({p.x, p.y, p.z}); }

} // namespace

std::string_view to_string(AssertionKind kind) noexcept
{
    switch (kind) {
    case AssertionKind::OnSurface: return "on-surface";
    case AssertionKind::Collinear: return "collinear";
    case AssertionKind::Menelaus: return "menelaus";
    case AssertionKind::Desargues: return "desargues";
    case AssertionKind::Pappus: return "pappus";
    }
    return "unknown";
}

bool Scene::has_point(std::string_view name) const
{
    return std::any_of(points.begin(), points.end(), [&](const auto& p) { return p.first == name; });
}

bool Scene::has_triangle(std::string_view name) const
{
    return std::any_of(triangles.begin(), triangles.end(), [&](const auto& t) { return t.first == name; });
}

bool Scene::has_curve(std::string_view name) const
{
    return std::any_of(curves.begin(), curves.end(), [&](const auto& c) { return c.name == name; });
}

const ModelPoint& Scene::point(std::string_view name) const
{
    for (const auto& [n, p] : points)
        if (n == name)
            return p;
    throw Error(ErrorCode::UnknownReference, "unknown point '" + std::string(name) + "'");
}

TriangleSurface Scene::triangle(std::string_view name) const
{
    for (const auto& [n, v] : triangles)
        if (n == name)
            return TriangleSurface(point(v[0]), point(v[1]), point(v[2]), geometry_instance());
    throw Error(ErrorCode::UnknownReference, "unknown triangle '" + std::string(name) + "'");
}

TranslationCurve Scene::curve(std::string_view name) const
{
    for (const auto& c : curves) {
        if (c.name != name)
            continue;
        if (c.through)
            return geometry_instance().curve_through(point((*c.through)[0]), point((*c.through)[1])).curve;
        const ModelPoint base = c.base_name ? point(*c.base_name) : *c.base;
        return TranslationCurve(base, *c.dir);
    }
    throw Error(ErrorCode::UnknownReference, "unknown curve '" + std::string(name) + "'");
}

Scene parse_scene(std::string_view text, std::string_view origin)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError,
                    std::string(origin) + ":" + position(text, e.byte) + ": malformed JSON (" + e.what() + ")");
    }
    if (!root.is_object())
        fail(ErrorCode::ParseError, origin, "/", "scene must be a JSON object");

    const Reader rd(origin);
    Scene scene;
    scene.name = root.contains("name") ? rd.string(root["name"], "/name") : std::string(origin);
    if (root.contains("description"))
        scene.description = rd.string(root["description"], "/description");
    if (root.contains("geometry")) {
        try {
            scene.geometry = parse_geometry_tag(rd.string(root["geometry"], "/geometry"));
        } catch (const Error& e) {
            fail(ErrorCode::ParseError, origin, "/geometry", e.what());
        }
    }

    std::set<std::string> names;
    const auto declare = [&](const std::string& name, const std::string& path) {
        if (name.empty())
            fail(ErrorCode::ParseError, origin, path, "names must be non-empty");
        if (!names.insert(name).second)
            fail(ErrorCode::DuplicateName, origin, path, "duplicate name '" + name + "'");
    };

    const json& pts = rd.array(root, "points");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string path = "/points/" + std::to_string(i);
        const std::string name = rd.string(rd.member(pts[i], "name", path), path + "/name");
        declare(name, path + "/name");
        const auto xyz = rd.triple(rd.member(pts[i], "at", path), path + "/at");
        scene.points.emplace_back(name, ModelPoint{xyz[0], xyz[1], xyz[2]});
    }

    const auto require_point = [&](const std::string& name, const std::string& path) {
        if (!scene.has_point(name))
            fail(ErrorCode::UnknownReference, origin, path, "unknown point '" + name + "'");
    };

    const json& tris = rd.array(root, "triangles");
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const std::string path = "/triangles/" + std::to_string(i);
        const std::string name = rd.string(rd.member(tris[i], "name", path), path + "/name");
        declare(name, path + "/name");
        const auto verts = rd.names3(rd.member(tris[i], "vertices", path), path + "/vertices");
        for (std::size_t k = 0; k < 3; ++k)
            require_point(verts[k], path + "/vertices/" + std::to_string(k));
        scene.triangles.emplace_back(name, verts);
    }

    const json& curves = rd.array(root, "curves");
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const std::string path = "/curves/" + std::to_string(i);
        const json& c = curves[i];
        CurveDef def;
        def.name = rd.string(rd.member(c, "name", path), path + "/name");
        declare(def.name, path + "/name");
        if (c.contains("through")) {
            const json& t = c["through"];
            if (!t.is_array() || t.size() != 2)
                fail(ErrorCode::ParseError, origin, path + "/through", "expected two point names");
            def.through = std::array<std::string, 2>{rd.string(t[0], path + "/through/0"),
                                                     rd.string(t[1], path + "/through/1")};
            require_point((*def.through)[0], path + "/through/0");
            require_point((*def.through)[1], path + "/through/1");
        } else {
            const json& base = rd.member(c, "base", path);
            if (base.is_string()) {
                def.base_name = base.get<std::string>();
                require_point(*def.base_name, path + "/base");
            } else {
                const auto xyz = rd.triple(base, path + "/base");
                def.base = ModelPoint{xyz[0], xyz[1], xyz[2]};
            }
            const json& dir = rd.member(c, "dir", path);
            if (dir.is_object()) {
                const double phi = rd.number(rd.member(dir, "phi", path + "/dir"), path + "/dir/phi");
                const double theta = rd.number(rd.member(dir, "theta", path + "/dir"), path + "/dir/theta");
                def.dir = from_geographic({phi, theta});
            } else {
                const auto uvw = rd.triple(dir, path + "/dir");
                def.dir = TangentVector{uvw[0], uvw[1], uvw[2]};
            }
            if (!(def.dir->norm() > 0.0))
                fail(ErrorCode::ParseError, origin, path + "/dir", "direction must be non-zero");
        }
        scene.curves.push_back(std::move(def));
    }

    const json& asserts = rd.array(root, "assertions");
    for (std::size_t i = 0; i < asserts.size(); ++i) {
        const std::string path = "/assertions/" + std::to_string(i);
        const json& a = asserts[i];
        const std::string type = rd.string(rd.member(a, "type", path), path + "/type");
        Assertion as;
        as.kind = parse_kind(type, origin, path + "/type");
        as.id = a.contains("id") ? rd.string(a["id"], path + "/id") : type + "#" + std::to_string(i);
        if (a.contains("tol")) {
            as.tol = rd.number(a["tol"], path + "/tol");
            if (!(*as.tol > 0.0))
                fail(ErrorCode::ParseError, origin, path + "/tol", "tolerance must be positive");
        }
        const auto require_triangle = [&] {
            as.triangle = rd.string(rd.member(a, "triangle", path), path + "/triangle");
            if (!scene.has_triangle(as.triangle))
                fail(ErrorCode::UnknownReference, origin, path + "/triangle", "unknown triangle '" + as.triangle + "'");
        };
        const auto read_names3 = [&](const char* key, std::array<std::string, 3>& out) {
            out = rd.names3(rd.member(a, key, path), path + "/" + key);
            for (std::size_t k = 0; k < 3; ++k)
                require_point(out[k], path + "/" + key + "/" + std::to_string(k));
        };

        switch (as.kind) {
        case AssertionKind::OnSurface:
            require_triangle();
            as.point = rd.string(rd.member(a, "point", path), path + "/point");
            require_point(as.point, path + "/point");
            break;
        case AssertionKind::Collinear: {
            const json& p = rd.member(a, "points", path);
            if (!p.is_array() || p.size() != 3)
                fail(ErrorCode::ParseError, origin, path + "/points", "expected three points");
            for (std::size_t k = 0; k < 3; ++k) {
                const std::string sub = path + "/points/" + std::to_string(k);
                if (p[k].is_object()) {
                    as.points.emplace_back(IdealPoint::from_direction(rd.number(rd.member(p[k], "ideal", sub), sub + "/ideal")));
                } else {
                    const std::string name = rd.string(p[k], sub);
                    require_point(name, sub);
                    as.points.emplace_back(name);
                }
            }
            break;
        }
        case AssertionKind::Menelaus:
            require_triangle();
            as.transversal = rd.string(rd.member(a, "transversal", path), path + "/transversal");
            if (!scene.has_curve(as.transversal))
                fail(ErrorCode::UnknownReference, origin, path + "/transversal", "unknown curve '" + as.transversal + "'");
            break;
        case AssertionKind::Desargues:
            require_triangle();
            as.center = rd.string(rd.member(a, "center", path), path + "/center");
            require_point(as.center, path + "/center");
            read_names3("a", as.a);
            read_names3("b", as.b);
            break;
        case AssertionKind::Pappus:
            require_triangle();
            read_names3("a", as.a);
            read_names3("b", as.b);
            if (a.contains("pairing")) {
                const std::string pairing = rd.string(a["pairing"], path + "/pairing");
                if (pairing != "direct" && pairing != "cross")
                    fail(ErrorCode::ParseError, origin, path + "/pairing", "pairing must be 'direct' or 'cross'");
                as.pairing = parse_pappus_pairing(pairing);
            }
            break;
        }
        scene.assertions.push_back(std::move(as));
    }
    return scene;
}

Scene load_scene(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, path.string() + ": cannot open scene file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path.string());
}

std::string dump_scene(const Scene& scene)
{
    json root = json::object();
    root["name"] = scene.name;
    if (!scene.description.empty())
        root["description"] = scene.description;
    root["geometry"] = std::string(to_string(scene.geometry));
    root["points"] = json::array();
    for (const auto& [name, p] : scene.points)
        root["points"].push_back({{"name", name}, {"at", point_json(p)}});
    root["triangles"] = json::array();
    for (const auto& [name, v] : scene.triangles)
        root["triangles"].push_back({{"name", name}, {"vertices", v}});
    root["curves"] = json::array();
    for (const auto& c : scene.curves) {
        json j = {{"name", c.name}};
        if (c.through) {
            j["through"] = *c.through;
        } else {
            j["base"] = c.base_name ? json(*c.base_name) : point_json(*c.base);
            j["dir"] = json::array({c.dir->u, c.dir->v, c.dir->w});
        }
        root["curves"].push_back(j);
    }
    root["assertions"] = json::array();
    for (const auto& a : scene.assertions) {
        json j = {{"id", a.id}, {"type", std::string(to_string(a.kind))}};
        switch (a.kind) {
        case AssertionKind::OnSurface:
            j["triangle"] = a.triangle;
            j["point"] = a.point;
            break;
        case AssertionKind::Collinear:
            j["points"] = json::array();
            for (const auto& p : a.points) {
                if (const auto* name = std::get_if<std::string>(&p))
                    j["points"].push_back(*name);
                else
                    j["points"].push_back({{"ideal", std::get<IdealPoint>(p).psi}});
            }
            break;
        case AssertionKind::Menelaus:
            j["triangle"] = a.triangle;
            j["transversal"] = a.transversal;
            break;
        case AssertionKind::Desargues:
            j["triangle"] = a.triangle;
            j["center"] = a.center;
            j["a"] = a.a;
            j["b"] = a.b;
            break;
        case AssertionKind::Pappus:
            j["triangle"] = a.triangle;
            j["a"] = a.a;
            j["b"] = a.b;
            j["pairing"] = std::string(to_string(a.pairing));
            break;
        }
        if (a.tol)
            j["tol"] = *a.tol;
        root["assertions"].push_back(j);
    }
    return root.dump(2) + "\n";
}

void RunConfig::validate() const
{
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(tolerances.algebraic) || !positive(tolerances.membership) || !positive(tolerances.collinearity) ||
        !positive(tolerances.product) || !positive(tolerances.identity))
        throw Error(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "trial count must be at least 1");
}

std::uint64_t seed_from_environment(std::uint64_t fallback)
{
    const char* env = std::getenv("NIL_INCIDENCE_SEED");
    if (env == nullptr || *env == '\0')
        return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0')
        throw Error(ErrorCode::InvalidArgument, "NIL_INCIDENCE_SEED must be an unsigned integer");
    return v;
}

} // namespace nilgeom::scenes
