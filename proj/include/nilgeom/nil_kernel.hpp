#pragma once

// Closed-form primitives of the projective (affine chart) model of Nil:
// Heisenberg translations, z-axis rotations, translation curves, translation
// distance and signed simple ratios.

#include <cmath>

#include <Eigen/Core>

namespace nilgeom {

/// Default tolerances. Every API that takes a tolerance accepts an override.
struct Tolerances {
    double algebraic = 1e-12;
    double membership = 1e-9;
    double collinearity = 1e-8;
    double product = 1e-6;
    double identity = 1e-9; ///< proof-chain identities between Menelaus products
};

inline constexpr double kVertexSeparation = 1e-9;

/// Point (1; x, y, z) of the model, stored in affine coordinates.
struct NilPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const NilPoint&, const NilPoint&) = default;
};

/// Heisenberg group element acting on points by the right-translation matrix.
struct NilTranslation {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const NilTranslation&, const NilTranslation&) = default;
};

/// Tangent vector (0; u, v, w).
struct TangentVector {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;

    double norm() const { return std::sqrt(u * u + v * v + w * w); }
    friend bool operator==(const TangentVector&, const TangentVector&) = default;
};

struct GeographicParams {
    double phi = 0.0;
    double theta = 0.0;
};

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
};

inline Eigen::Vector3d to_vec(const NilPoint& p) { return {p.x, p.y, p.z}; }
inline Eigen::Vector3d to_vec(const TangentVector& t) { return {t.u, t.v, t.w}; }
inline NilPoint to_point(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
inline TangentVector to_tangent(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

/// Euclidean distance in model coordinates.
inline double model_distance(const NilPoint& a, const NilPoint& b) { return (to_vec(a) - to_vec(b)).norm(); }

/// A unit-speed translation curve: a base point and a unit initial tangent.
/// The curve parameter is translation arc length.
class TranslationCurve {
public:
    /// Normalizes `dir`; throws ZeroLength for a zero or non-finite direction.
    TranslationCurve(const NilPoint& base, const TangentVector& dir);

    const NilPoint& base() const noexcept { return base_; }
    const TangentVector& dir() const noexcept { return dir_; }

    /// True when the curve runs along a fibre (vertical, u = v = 0).
    bool is_fibre(double tol = 1e-12) const noexcept { return std::hypot(dir_.u, dir_.v) <= tol; }

private:
    NilPoint base_;
    TangentVector dir_;
};

/// A curve together with the parameter at which it reaches the target point.
struct CurveThrough {
    TranslationCurve curve;
    double length;
};

NilTranslation compose(const NilTranslation& g, const NilTranslation& h);
NilPoint apply(const NilPoint& p, const NilTranslation& g);
NilTranslation to_origin(const NilPoint& p);

/// Isometric rotation through `omega` about the z-axis at the origin.
NilPoint rotate(const NilPoint& p, double omega);

CurveThrough curve_from_origin(const NilPoint& b);
CurveThrough curve_through(const NilPoint& a, const NilPoint& b);
NilPoint curve_eval(const TranslationCurve& c, double t);

/// Velocity of the curve at parameter t in model coordinates, (u, v, v x(t) + w).
TangentVector tangent_at(const TranslationCurve& c, double t);

double translation_distance(const NilPoint& a, const NilPoint& b);

GeographicParams geographic(const TangentVector& dir);
TangentVector from_geographic(const GeographicParams& g);

PlanarPoint project_xy(const NilPoint& p);

/// Parameter of the point of `c` associated with p. Exact when p lies on c.
double curve_parameter(const TranslationCurve& c, const NilPoint& p);

/// Minimal Euclidean (model) distance from p to the curve, with the parameter
/// realizing it.
struct CurveDistance {
    double distance;
    double parameter;
};
CurveDistance curve_distance(const TranslationCurve& c, const NilPoint& p);

/// Signed simple ratio s(a, p, b) of three points on one translation curve.
/// Positive iff p lies between a and b in curve parameter.
double simple_ratio(const NilPoint& a, const NilPoint& p, const NilPoint& b, double membership_tol = 1e-9);

} // namespace nilgeom
