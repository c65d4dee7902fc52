#include "nilgeom/nil_kernel.hpp"

#include <algorithm>
#include <numbers>

#include "curve_search.hpp"
#include "nilgeom/errors.hpp"

namespace nilgeom {

namespace {

constexpr double kCoincident = 1e-12;

bool finite(const TangentVector& t) { return std::isfinite(t.u) && std::isfinite(t.v) && std::isfinite(t.w); }

// Logarithm of a translation: components of the unit-speed curve velocity
// times its length.
Eigen::Vector3d log_coords(const NilPoint& p) { return {p.x, p.y, p.z - 0.5 * p.x * p.y}; }

} // namespace

TranslationCurve::TranslationCurve(const NilPoint& base, const TangentVector& dir) : base_(base)
{
    const double n = dir.norm();
    if (!finite(dir) || !(n > 0.0))
        throw Error(ErrorCode::ZeroLength, "translation curve direction must be non-zero");
    dir_ = {dir.u / n, dir.v / n, dir.w / n};
}

NilTranslation compose(const NilTranslation& g, const NilTranslation& h)
{
    return {h.x + g.x, h.y + g.y, h.z + g.x * h.y + g.z};
}

NilPoint apply(const NilPoint& p, const NilTranslation& g)
{
    return {g.x + p.x, g.y + p.y, g.z + p.y * g.x + p.z};
}

NilTranslation to_origin(const NilPoint& p)
{
    return {-p.x, -p.y, p.x * p.y - p.z};
}

NilPoint rotate(const NilPoint& p, double omega)
{
    const double c = std::cos(omega);
    const double s = std::sin(omega);
    const double xy = p.x * p.y;
    return {p.x * c - p.y * s,
            p.x * s + p.y * c,
            p.z - 0.5 * xy + 0.25 * (p.x * p.x - p.y * p.y) * std::sin(2.0 * omega) + 0.5 * xy * std::cos(2.0 * omega)};
}

CurveThrough curve_from_origin(const NilPoint& b)
{
    const Eigen::Vector3d l = log_coords(b);
    const double length = l.norm();
    if (!(length > 0.0))
        throw Error(ErrorCode::ZeroLength, "curve endpoint coincides with the origin");
    return {TranslationCurve({}, to_tangent(l / length)), length};
}

CurveThrough curve_through(const NilPoint& a, const NilPoint& b)
{
    const NilPoint moved = apply(b, to_origin(a));
    if (moved.x == 0.0 && moved.y == 0.0 && moved.z == 0.0)
        throw Error(ErrorCode::ZeroLength, "curve endpoints coincide");
    const CurveThrough local = curve_from_origin(moved);
    return {TranslationCurve(a, local.curve.dir()), local.length};
}

NilPoint curve_eval(const TranslationCurve& c, double t)
{
    const auto& [u, v, w] = c.dir();
    const NilPoint local{u * t, v * t, 0.5 * u * v * t * t + w * t};
    // The base acts as the translation carrying the origin onto it.
    const NilPoint& b = c.base();
    return apply(local, NilTranslation{b.x, b.y, b.z});
}

TangentVector tangent_at(const TranslationCurve& c, double t)
{
    const auto& [u, v, w] = c.dir();
    const double x = c.base().x + u * t;
    return {u, v, v * x + w};
}

double translation_distance(const NilPoint& a, const NilPoint& b)
{
    return log_coords(apply(b, to_origin(a))).norm();
}

GeographicParams geographic(const TangentVector& dir)
{
    if (!finite(dir) || std::abs(dir.norm() - 1.0) > 1e-9)
        throw Error(ErrorCode::NotUnit, "geographic parameters need a unit direction");
    const double planar = std::hypot(dir.u, dir.v);
    const double theta = std::atan2(dir.w, planar);
    const double phi = planar < 1e-15 ? 0.0 : std::atan2(dir.v, dir.u);
    return {phi, theta};
}

TangentVector from_geographic(const GeographicParams& g)
{
    return {std::cos(g.theta) * std::cos(g.phi), std::cos(g.theta) * std::sin(g.phi), std::sin(g.theta)};
}

PlanarPoint project_xy(const NilPoint& p) { return {p.x, p.y}; }

double curve_parameter(const TranslationCurve& c, const NilPoint& p)
{
    return log_coords(apply(p, to_origin(c.base()))).dot(to_vec(c.dir()));
}

CurveDistance curve_distance(const TranslationCurve& c, const NilPoint& p)
{
    const auto found = detail::closest_parameter([&](double t) { return to_vec(curve_eval(c, t)); },
                                                 [&](double t) { return to_vec(tangent_at(c, t)); },
                                                 to_vec(p),
                                                 curve_parameter(c, p));
    return {found.distance, found.parameter};
}

double simple_ratio(const NilPoint& a, const NilPoint& p, const NilPoint& b, double membership_tol)
{
    if (translation_distance(a, p) <= kCoincident || translation_distance(p, b) <= kCoincident ||
        translation_distance(a, b) <= kCoincident)
        throw Error(ErrorCode::DegeneratePoints, "simple ratio needs three distinct points");

    const auto [curve, length] = curve_through(a, b);
    const double t = curve_parameter(curve, p);
    const double residual = model_distance(curve_eval(curve, t), p);
    if (residual > membership_tol * std::max({1.0, length, std::abs(t)}))
        throw Error(ErrorCode::NotOnCurve,
                    "point is " + std::to_string(residual) + " away from the translation curve");
    return t / (length - t);
}

} // namespace nilgeom
