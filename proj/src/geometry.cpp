#include "nilgeom/geometry.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Dense>

#include "curve_search.hpp"
#include "nilgeom/errors.hpp"

namespace nilgeom {

std::string_view to_string(GeometryTag tag) noexcept
{
    return tag == GeometryTag::Nil ? "nil" : "euclid";
}

GeometryTag parse_geometry_tag(std::string_view text)
{
    if (text == "nil")
        return GeometryTag::Nil;
    if (text == "euclid" || text == "euclidean")
        return GeometryTag::Euclidean;
    throw Error(ErrorCode::InvalidArgument, "unknown geometry '" + std::string(text) + "'");
}

CurveDistance Geometry::curve_distance(const TranslationCurve& c, const ModelPoint& p) const
{
    const auto found = detail::closest_parameter([&](double t) { return to_vec(eval(c, t)); },
                                                 [&](double t) { return to_vec(velocity(c, t)); },
                                                 to_vec(p),
                                                 curve_parameter(c, p));
    return {found.distance, found.parameter};
}

double Geometry::surface_functional(const std::array<ModelPoint, 3>& vertices, const ModelPoint& p) const
{
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        if (distance(p, vertices[i]) <= kVertexSeparation)
            throw Error(ErrorCode::AtVertex, "surface functional is undefined at a vertex");
        const auto through = curve_through(p, vertices[i]);
        m.col(i) = to_vec(velocity(through.curve, 0.0)).normalized();
    }
    return m.determinant();
}

namespace {

class NilGeometry final : public Geometry {
public:
    GeometryTag tag() const noexcept override { return GeometryTag::Nil; }
    CurveThrough curve_through(const ModelPoint& a, const ModelPoint& b) const override
    {
        return nilgeom::curve_through(a, b);
    }
    ModelPoint eval(const TranslationCurve& c, double t) const override { return curve_eval(c, t); }
    TangentVector velocity(const TranslationCurve& c, double t) const override { return tangent_at(c, t); }
    double distance(const ModelPoint& a, const ModelPoint& b) const override { return translation_distance(a, b); }
    double curve_parameter(const TranslationCurve& c, const ModelPoint& p) const override
    {
        return nilgeom::curve_parameter(c, p);
    }
    double simple_ratio(const ModelPoint& a, const ModelPoint& p, const ModelPoint& b, double tol) const override
    {
        return nilgeom::simple_ratio(a, p, b, tol);
    }
};

class EuclideanGeometry final : public Geometry {
public:
    GeometryTag tag() const noexcept override { return GeometryTag::Euclidean; }

    CurveThrough curve_through(const ModelPoint& a, const ModelPoint& b) const override
    {
        const Eigen::Vector3d d = to_vec(b) - to_vec(a);
        const double length = d.norm();
        if (!(length > 0.0))
            throw Error(ErrorCode::ZeroLength, "line endpoints coincide");
        return {TranslationCurve(a, to_tangent(d / length)), length};
    }

    ModelPoint eval(const TranslationCurve& c, double t) const override
    {
        return to_point(to_vec(c.base()) + t * to_vec(c.dir()));
    }

    TangentVector velocity(const TranslationCurve& c, double) const override { return c.dir(); }

    double distance(const ModelPoint& a, const ModelPoint& b) const override { return model_distance(a, b); }

    double curve_parameter(const TranslationCurve& c, const ModelPoint& p) const override
    {
        return (to_vec(p) - to_vec(c.base())).dot(to_vec(c.dir()));
    }

    double simple_ratio(const ModelPoint& a, const ModelPoint& p, const ModelPoint& b, double tol) const override
    {
        constexpr double kCoincident = 1e-12;
        if (distance(a, p) <= kCoincident || distance(p, b) <= kCoincident || distance(a, b) <= kCoincident)
            throw Error(ErrorCode::DegeneratePoints, "simple ratio needs three distinct points");
        const auto [line, length] = curve_through(a, b);
        const double t = curve_parameter(line, p);
        const double residual = model_distance(eval(line, t), p);
        if (residual > tol * std::max({1.0, length, std::abs(t)}))
            throw Error(ErrorCode::NotOnCurve, "point is " + std::to_string(residual) + " away from the line");
        return t / (length - t);
    }
};

} // namespace

const Geometry& nil_geometry() noexcept
{
    static const NilGeometry instance;
    return instance;
}

const Geometry& euclidean_geometry() noexcept
{
    static const EuclideanGeometry instance;
    return instance;
}

const Geometry& geometry_for(GeometryTag tag) noexcept
{
    return tag == GeometryTag::Nil ? nil_geometry() : euclidean_geometry();
}

} // namespace nilgeom
