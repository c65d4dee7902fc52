#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "nilgeom/errors.hpp"
#include "nilgeom/scene.hpp"

namespace nilgeom::scenes {

using json = nlohmann::json;

namespace {

Outcome outcome_of(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return Outcome::Pass;
    case Verdict::Fail: return Outcome::Fail;
    case Verdict::Inconclusive: return Outcome::Inconclusive;
    }
    return Outcome::Error;
}

std::array<ModelPoint, 3> resolve(const Scene& scene, const std::array<std::string, 3>& names)
{
    return {scene.point(names[0]), scene.point(names[1]), scene.point(names[2])};
}

IncidenceReport evaluate(const Scene& scene, const Assertion& a, Tolerances tol)
{
    const Geometry& geo = scene.geometry_instance();
    switch (a.kind) {
    case AssertionKind::OnSurface: {
        if (a.tol)
            tol.membership = *a.tol;
        const TriangleSurface surface = scene.triangle(a.triangle);
        const ModelPoint& p = scene.point(a.point);
        IncidenceReport r;
        const auto& v = surface.vertices();
        const bool at_vertex = std::any_of(v.begin(), v.end(), [&](const ModelPoint& q) {
            return model_distance(p, q) < kVertexSeparation;
        });
        r.residuals.push_back({"|F|", at_vertex ? 0.0 : std::abs(surface_functional(surface, p)), tol.membership});
        r.points.emplace_back(a.point, p);
        r.decide();
        return r;
    }
    case AssertionKind::Collinear: {
        if (a.tol)
            tol.collinearity = *a.tol;
        std::vector<ExtendedPoint> pts;
        IncidenceReport r;
        for (const auto& ref : a.points) {
            if (const auto* name = std::get_if<std::string>(&ref)) {
                pts.emplace_back(scene.point(*name));
                r.points.emplace_back(*name, pts.back());
            } else {
                pts.emplace_back(std::get<IdealPoint>(ref));
                r.points.emplace_back("ideal", pts.back());
            }
        }
        const Collinearity c = collinear({pts[0], pts[1], pts[2]}, tol.collinearity, geo);
        r.residuals.push_back({"collinearity", c.residual, tol.collinearity});
        r.decide();
        return r;
    }
    case AssertionKind::Menelaus:
        if (a.tol)
            tol.product = *a.tol;
        return check_menelaus(scene.triangle(a.triangle), scene.curve(a.transversal), tol);
    case AssertionKind::Desargues:
        if (a.tol)
            tol.collinearity = *a.tol;
        return check_desargues(scene.point(a.center), resolve(scene, a.a), resolve(scene, a.b),
                               scene.triangle(a.triangle), tol);
    case AssertionKind::Pappus:
        if (a.tol)
            tol.collinearity = *a.tol;
        return check_pappus(resolve(scene, a.a), resolve(scene, a.b), scene.triangle(a.triangle), tol, a.pairing);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown assertion kind");
}

json point_json(const ExtendedPoint& p)
{
    if (p.is_proper()) {
        const ModelPoint& q = p.proper();
        return json::array({q.x, q.y, q.z});
    }
    return json{{"ideal", p.ideal().psi}};
}

} // namespace

std::string_view to_string(Outcome o) noexcept
{
    switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::Error: return "error";
    }
    return "unknown";
}

int CheckReport::count(Outcome o) const
{
    return static_cast<int>(
        std::count_if(results.begin(), results.end(), [o](const AssertionResult& r) { return r.outcome == o; }));
}

int CheckReport::exit_code() const { return count(Outcome::Fail) + count(Outcome::Error) > 0 ? 1 : 0; }

std::string CheckReport::to_json() const
{
    json root = {{"scene", scene}};
    root["summary"] = {{"pass", count(Outcome::Pass)},
                       {"fail", count(Outcome::Fail)},
                       {"inconclusive", count(Outcome::Inconclusive)},
                       {"error", count(Outcome::Error)}};
    root["assertions"] = json::array();
    for (const auto& r : results) {
        json j = {{"id", r.id}, {"type", std::string(to_string(r.kind))}, {"outcome", std::string(to_string(r.outcome))}};
        j["residuals"] = json::array();
        for (const auto& res : r.report.residuals)
            j["residuals"].push_back(
                {{"name", res.name}, {"value", res.value}, {"tolerance", res.tolerance}, {"within", res.within()}});
        j["points"] = json::object();
        for (const auto& [name, p] : r.report.points)
            j["points"][name] = point_json(p);
        if (!r.report.note.empty())
            j["note"] = r.report.note;
        if (!r.error.empty())
            j["error"] = r.error;
        root["assertions"].push_back(j);
    }
    return root.dump(2) + "\n";
}

std::string CheckReport::summary() const
{
    std::ostringstream out;
    out.precision(3);
    out << std::scientific;
    for (const auto& r : results) {
        out << to_string(r.outcome) << "  " << r.id << " (" << to_string(r.kind) << ")";
        const auto worst = std::max_element(r.report.residuals.begin(), r.report.residuals.end(),
                                            [](const Residual& a, const Residual& b) {
                                                return a.value / a.tolerance < b.value / b.tolerance;
                                            });
        if (worst != r.report.residuals.end())
            out << "  " << worst->name << "=" << worst->value << " tol=" << worst->tolerance;
        if (!r.error.empty())
            out << "  " << r.error;
        else if (r.outcome != Outcome::Pass && !r.report.note.empty())
            out << "  " << r.report.note;
        out << "\n";
    }
    out << scene << ": " << count(Outcome::Pass) << " pass, " << count(Outcome::Fail) << " fail, "
        << count(Outcome::Inconclusive) << " inconclusive, " << count(Outcome::Error) << " error\n";
    return out.str();
}

CheckReport run_checks(const Scene& scene, const RunConfig& config)
{
    config.validate();
    CheckReport report;
    report.scene = scene.name;
    for (const auto& a : scene.assertions) {
        AssertionResult r{a.id, a.kind, Outcome::Error, {}, {}};
        try {
            r.report = evaluate(scene, a, config.tolerances);
            r.outcome = outcome_of(r.report.verdict);
        } catch (const Error& e) {
            r.outcome = Outcome::Error;
            r.error = e.what();
        } catch (const std::exception& e) {
            r.outcome = Outcome::Error;
            r.error = e.what();
        }
        report.results.push_back(std::move(r));
    }
    return report;
}

} // namespace nilgeom::scenes
