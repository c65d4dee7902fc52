#pragma once

// Classical planar Menelaus, Desargues and Pappus in exact rational
// arithmetic. Used as the reference for fibre-type (planar) Nil data.

#include <array>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "nilgeom/incidence.hpp"
#include "nilgeom/nil_kernel.hpp"

namespace nilgeom::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double.
Rational to_rational(double v);

struct QPoint {
    Rational x;
    Rational y;
};

QPoint to_qpoint(const PlanarPoint& p);

/// Homogeneous planar point or line; w == 0 marks an ideal point.
struct QHom {
    Rational x;
    Rational y;
    Rational w;

    bool is_zero() const { return x == 0 && y == 0 && w == 0; }
};

QHom join(const QHom& p, const QHom& q);
QHom homogeneous(const QPoint& p);
Rational det3(const QHom& a, const QHom& b, const QHom& c);

/// Signed ratio s(a, p, b) of three collinear points.
Rational simple_ratio(const QPoint& a, const QPoint& p, const QPoint& b);

struct MenelausResult {
    std::array<QPoint, 3> meets; ///< on sides 01, 12, 20
    Rational product;
};

/// Transversal through `line[0]`, `line[1]` against the sides of `triangle`.
/// Throws ParallelSideLine, AtVertex, DegenerateConfig.
MenelausResult menelaus(const std::array<QPoint, 3>& triangle, const std::array<QPoint, 2>& line);

struct IncidenceResult {
    std::array<QHom, 3> meets;
    bool collinear;
};

/// Meets of corresponding sides A_iA_j ^ B_iB_j in the order 12, 13, 23.
/// Ideal meets are allowed. Throws DegenerateConfig.
IncidenceResult desargues(const std::array<QPoint, 3>& a, const std::array<QPoint, 3>& b);

/// Perspective from `center` (all three center-A_i-B_i triples collinear).
bool perspective(const QPoint& center, const std::array<QPoint, 3>& a, const std::array<QPoint, 3>& b);

/// Pappus meets in the order M1, M2, M3 of the given pairing.
IncidenceResult pappus(const std::array<QPoint, 3>& a, const std::array<QPoint, 3>& b,
                       PappusPairing pairing = PappusPairing::Direct);

/// Affine chart of a coordinate plane x = c or y = c: drops the constant axis.
/// Translation curves in the plane map to lines with their simple ratios.
class PlanarChart {
public:
    enum class Drop { X, Y };

    PlanarChart(Drop drop, double constant) : drop_(drop), constant_(constant) {}

    /// Chart of the coordinate plane containing every point, if any.
    static std::optional<PlanarChart> detect(std::initializer_list<ModelPoint> points, double tol = 0.0);

    PlanarPoint to_plane(const ModelPoint& p) const;
    ModelPoint from_plane(const PlanarPoint& p) const;
    Drop drop() const { return drop_; }
    double constant() const { return constant_; }

private:
    Drop drop_;
    double constant_;
};

} // namespace nilgeom::exact
