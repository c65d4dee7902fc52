#pragma once

// Geometry abstraction: the operations the incidence theorems quantify over
// (connecting curve, evaluation, distance, simple ratio, surface functional).
// Incidence code is written against this table; Nil and Euclidean instances
// ship. Other Thurston geometries plug in by implementing the same virtuals.

#include <array>
#include <string_view>

#include "nilgeom/nil_kernel.hpp"

namespace nilgeom {

/// Points of every instance live in the same affine chart of the projective model.
using ModelPoint = NilPoint;

enum class GeometryTag { Euclidean, Nil };

std::string_view to_string(GeometryTag tag) noexcept;
GeometryTag parse_geometry_tag(std::string_view text);

class Geometry {
public:
    virtual ~Geometry() = default;

    virtual GeometryTag tag() const noexcept = 0;

    virtual CurveThrough curve_through(const ModelPoint& a, const ModelPoint& b) const = 0;
    virtual ModelPoint eval(const TranslationCurve& c, double t) const = 0;
    /// d/dt eval(c, t) in model coordinates.
    virtual TangentVector velocity(const TranslationCurve& c, double t) const = 0;
    virtual double distance(const ModelPoint& a, const ModelPoint& b) const = 0;
    /// Parameter of p along c; exact for points on c.
    virtual double curve_parameter(const TranslationCurve& c, const ModelPoint& p) const = 0;
    virtual double simple_ratio(const ModelPoint& a, const ModelPoint& p, const ModelPoint& b,
                                double membership_tol = 1e-9) const = 0;

    /// Minimal model-Euclidean distance from p to c.
    CurveDistance curve_distance(const TranslationCurve& c, const ModelPoint& p) const;

    /// det of the unit tangents at p of the curves drawn from p to the three
    /// vertices. Zero exactly on the triangle surface. Throws AtVertex.
    double surface_functional(const std::array<ModelPoint, 3>& vertices, const ModelPoint& p) const;
};

const Geometry& nil_geometry() noexcept;
const Geometry& euclidean_geometry() noexcept;
const Geometry& geometry_for(GeometryTag tag) noexcept;

} // namespace nilgeom
