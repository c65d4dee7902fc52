#pragma once

// Curve-curve intersection, ideal points, translation collinearity and the
// Menelaus / Desargues / Pappus configuration checkers. Everything here runs
// against the Geometry carried by the TriangleSurface (or passed explicitly).

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nilgeom/geometry.hpp"
#include "nilgeom/triangle_surface.hpp"

namespace nilgeom {

/// Common point at infinity of a class of parallel curves on a surface,
/// identified by the direction of their xy-projection.
struct IdealPoint {
    double psi = 0.0; ///< canonical, in [0, pi)

    static IdealPoint from_direction(double angle);
};

/// Angle between two ideal directions, in [0, pi/2].
double ideal_separation(const IdealPoint& a, const IdealPoint& b);

class ExtendedPoint {
public:
    ExtendedPoint(const ModelPoint& p) : value_(p) {} // NOLINT(google-explicit-constructor)
    ExtendedPoint(const IdealPoint& i) : value_(i) {} // NOLINT(google-explicit-constructor)

    bool is_proper() const noexcept { return std::holds_alternative<ModelPoint>(value_); }
    bool is_ideal() const noexcept { return !is_proper(); }
    const ModelPoint& proper() const { return std::get<ModelPoint>(value_); }
    const IdealPoint& ideal() const { return std::get<IdealPoint>(value_); }

private:
    std::variant<ModelPoint, IdealPoint> value_;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

struct Residual {
    std::string name;
    double value;
    double tolerance;

    bool within() const noexcept { return value < tolerance; }
};

struct IncidenceReport {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<Residual> residuals;
    std::vector<std::pair<std::string, ExtendedPoint>> points;
    std::string note;

    /// Pass iff every residual is within its tolerance.
    void decide();
    const Residual* find(std::string_view name) const;
    const ExtendedPoint* point(std::string_view name) const;
};

struct IntersectOptions {
    int samples = 17;                ///< coarse samples per curve for seeding
    double accept = 1e-9;            ///< residual below which a meet is proper
    double parallel_angle = 1e-10;   ///< projected directions closer than this are parallel
};

/// Meet of two curves: proper point eval(c1, s*), or an ideal point when the
/// projections are parallel and no proper meet exists. Throws NoIntersection
/// for skew curves and IdenticalCurves when c1 and c2 coincide.
ExtendedPoint intersect(const TranslationCurve& c1, const TranslationCurve& c2,
                        const Geometry& geometry = nil_geometry(), const IntersectOptions& options = {});

struct Collinearity {
    bool collinear;
    double residual;
};

/// Whether three extended points lie on one translation curve. With only
/// proper points the residual is the largest distance of a point to the curve
/// through the other two (relative to the point scale); with an ideal point it
/// is a direction mismatch in radians. Symmetric in its arguments.
Collinearity collinear(const std::array<ExtendedPoint, 3>& points, double tol = 1e-8,
                       const Geometry& geometry = nil_geometry());

/// s(A0, p, A1) s(A1, q, A2) s(A2, r, A0) for p, q, r on the three side curves.
double menelaus_product(const TriangleSurface& surface, const ModelPoint& p, const ModelPoint& q,
                        const ModelPoint& r, double membership_tol = 1e-9);

IncidenceReport check_menelaus(const TriangleSurface& surface, const TranslationCurve& transversal,
                               const Tolerances& tolerances = {});

/// B_i = point of the curve from S to A_i at lambda_i times the distance S A_i.
std::array<ModelPoint, 3> perspective_points(const ModelPoint& center, const std::array<ModelPoint, 3>& a,
                                             const std::array<double, 3>& lambdas,
                                             const Geometry& geometry = nil_geometry());

IncidenceReport check_desargues(const ModelPoint& center, const std::array<ModelPoint, 3>& a,
                                const std::array<ModelPoint, 3>& b, const TriangleSurface& surface,
                                const Tolerances& tolerances = {});

/// Direct (hexagon A1B1A2B2A3B3): M1 = A1B1 ^ A3B2, M2 = A2B2 ^ A1B3, M3 = A3B3 ^ A2B1.
/// Cross (hexagon A1B2A3B1A2B3): M1 = A2B3 ^ A3B2, M2 = A1B3 ^ A3B1, M3 = A1B2 ^ A2B1.
enum class PappusPairing { Direct, Cross };

std::string_view to_string(PappusPairing p) noexcept;
PappusPairing parse_pappus_pairing(std::string_view text);

IncidenceReport check_pappus(const std::array<ModelPoint, 3>& a, const std::array<ModelPoint, 3>& b,
                             const TriangleSurface& surface, const Tolerances& tolerances = {},
                             PappusPairing pairing = PappusPairing::Direct);

IncidenceReport check_pappus(const TranslationCurve& ga, const TranslationCurve& gb,
                             const std::array<double, 3>& a_params, const std::array<double, 3>& b_params,
                             const TriangleSurface& surface, const Tolerances& tolerances = {},
                             PappusPairing pairing = PappusPairing::Direct);

} // namespace nilgeom
