#include "nilgeom/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "nilgeom/errors.hpp"

namespace nilgeom {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCoincident = 1e-12;

double point_scale(const ModelPoint& p) { return std::max(1.0, to_vec(p).norm()); }

Eigen::Vector2d planar_dir(const TranslationCurve& c) { return {c.dir().u, c.dir().v}; }

struct Meet {
    double s;
    double t;
    double residual;
};

Meet refine_meet(const Geometry& geo, const TranslationCurve& c1, const TranslationCurve& c2, double s, double t)
{
    const auto residual = [&](double ss, double tt) -> Eigen::Vector3d {
        return to_vec(geo.eval(c1, ss)) - to_vec(geo.eval(c2, tt));
    };
    Eigen::Vector3d r = residual(s, t);
    double f = r.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < 100 && f > 0.0; ++it) {
        Eigen::Matrix<double, 3, 2> jac;
        jac.col(0) = to_vec(geo.velocity(c1, s));
        jac.col(1) = -to_vec(geo.velocity(c2, t));
        const Eigen::Matrix2d normal = jac.transpose() * jac;
        const Eigen::Vector2d grad = jac.transpose() * r;
        bool accepted = false;
        Eigen::Vector2d step = Eigen::Vector2d::Zero();
        while (mu < 1e12) {
            Eigen::Matrix2d damped = normal;
            damped.diagonal() += mu * (normal.diagonal().array() + 1e-12).matrix();
            step = -damped.ldlt().solve(grad);
            const Eigen::Vector3d trial = residual(s + step[0], t + step[1]);
            if (trial.squaredNorm() < f) {
                s += step[0];
                t += step[1];
                r = trial;
                f = trial.squaredNorm();
                mu = std::max(mu * 0.1, 1e-15);
                accepted = true;
                break;
            }
            mu *= 10.0;
        }
        if (!accepted || step.norm() <= 1e-16 * (1.0 + std::abs(s) + std::abs(t)))
            break;
    }
    return {s, t, std::sqrt(f)};
}

bool same_curve(const Geometry& geo, const TranslationCurve& c1, const TranslationCurve& c2)
{
    if (to_vec(c1.dir()).cross(to_vec(c2.dir())).norm() > 1e-12)
        return false;
    const double t = geo.curve_parameter(c1, c2.base());
    return model_distance(geo.eval(c1, t), c2.base()) <= 1e-12 * point_scale(c2.base());
}

double separation(double a, double b)
{
    const double d = std::fmod(std::abs(a - b), kPi);
    return std::min(d, kPi - d);
}

// Direction mismatch between the curve through two proper points and an ideal point.
double direction_mismatch(const Geometry& geo, const ModelPoint& p, const ModelPoint& q, const IdealPoint& ideal)
{
    const auto through = geo.curve_through(p, q);
    if (through.curve.is_fibre())
        return kPi / 2;
    const Eigen::Vector2d d = planar_dir(through.curve);
    return separation(IdealPoint::from_direction(std::atan2(d.y(), d.x())).psi, ideal.psi);
}

double on_curve_residual(const Geometry& geo, const TranslationCurve& c, const ModelPoint& p)
{
    const double t = geo.curve_parameter(c, p);
    return model_distance(geo.eval(c, t), p) / std::max(1.0, std::abs(t));
}

void require_distinct(const Geometry& geo, std::initializer_list<ModelPoint> pts, ErrorCode code, const char* what)
{
    const std::vector<ModelPoint> v(pts);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (geo.distance(v[i], v[j]) <= kVertexSeparation)
                throw Error(code, what);
}

void add_membership(IncidenceReport& report, const TriangleSurface& surface, const std::string& name,
                    const ModelPoint& p, double tol)
{
    double value = 0.0;
    bool vertex = false;
    for (const auto& v : surface.vertices())
        vertex = vertex || surface.geometry().distance(p, v) <= kVertexSeparation;
    if (!vertex)
        value = std::abs(surface_functional(surface, p));
    report.residuals.push_back({"surface:" + name, value, tol});
}

struct MeetResult {
    std::optional<ExtendedPoint> point;
    std::string failure;
};

MeetResult try_intersect(const Geometry& geo, const TranslationCurve& c1, const TranslationCurve& c2)
{
    try {
        return {intersect(c1, c2, geo), {}};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoIntersection || e.code() == ErrorCode::IdenticalCurves)
            return {std::nullopt, e.what()};
        throw;
    }
}

} // namespace

IdealPoint IdealPoint::from_direction(double angle)
{
    double psi = std::fmod(angle, kPi);
    if (psi < 0.0)
        psi += kPi;
    if (psi >= kPi)
        psi = 0.0;
    return {psi};
}

double ideal_separation(const IdealPoint& a, const IdealPoint& b) { return separation(a.psi, b.psi); }

std::string_view to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

void IncidenceReport::decide()
{
    verdict = std::all_of(residuals.begin(), residuals.end(), [](const Residual& r) { return r.within(); })
                  ? Verdict::Pass
                  : Verdict::Fail;
}

const Residual* IncidenceReport::find(std::string_view name) const
{
    const auto it = std::find_if(residuals.begin(), residuals.end(), [&](const Residual& r) { return r.name == name; });
    return it == residuals.end() ? nullptr : &*it;
}

const ExtendedPoint* IncidenceReport::point(std::string_view name) const
{
    const auto it = std::find_if(points.begin(), points.end(), [&](const auto& p) { return p.first == name; });
    return it == points.end() ? nullptr : &it->second;
}

ExtendedPoint intersect(const TranslationCurve& c1, const TranslationCurve& c2, const Geometry& geo,
                        const IntersectOptions& options)
{
    if (same_curve(geo, c1, c2))
        throw Error(ErrorCode::IdenticalCurves, "curves coincide");

    std::vector<std::pair<double, double>> seeds;

    // The xy-motion of both instances is affine in the parameter, so the meet
    // of the projected lines is an exact seed whenever it exists.
    const Eigen::Vector2d d1 = planar_dir(c1);
    const Eigen::Vector2d d2 = planar_dir(c2);
    const double cross = d1.x() * d2.y() - d1.y() * d2.x();
    if (std::abs(cross) > 1e-14 * d1.norm() * d2.norm() && d1.norm() > 0 && d2.norm() > 0) {
        const Eigen::Vector2d rhs(c2.base().x - c1.base().x, c2.base().y - c1.base().y);
        Eigen::Matrix2d m;
        m << d1.x(), -d2.x(), d1.y(), -d2.y();
        const Eigen::Vector2d st = m.inverse() * rhs;
        seeds.emplace_back(st[0], st[1]);
    } else if (d1.norm() > 0 && d2.norm() > 0) {
        // Projections on one line: match the horizontal coordinate, then the
        // height gap is at most quadratic in s for both instances.
        const Eigen::Vector2d n = d1.normalized();
        const Eigen::Vector2d gap(c1.base().x - c2.base().x, c1.base().y - c2.base().y);
        const Eigen::Vector2d perp(-n.y(), n.x());
        if (std::abs(gap.dot(perp)) <= 1e-9 * (1.0 + gap.norm())) {
            const auto t_of = [&](double s) { return (n.dot(gap) + n.dot(d1) * s) / n.dot(d2); };
            double height = 1.0;
            const auto g = [&](double s) {
                const double z1 = geo.eval(c1, s).z;
                const double z2 = geo.eval(c2, t_of(s)).z;
                height = std::max({height, std::abs(z1), std::abs(z2)});
                return z1 - z2;
            };
            const double gm = g(-1.0), g0 = g(0.0), gp = g(1.0);
            // Coefficients at the rounding level of the heights are zero.
            const double noise = 1e-12 * height;
            const double a = std::abs(0.5 * (gp + gm) - g0) > noise ? 0.5 * (gp + gm) - g0 : 0.0;
            const double b = std::abs(0.5 * (gp - gm)) > noise ? 0.5 * (gp - gm) : 0.0;
            std::vector<double> roots;
            if (a != 0.0) {
                const double disc = b * b - 4.0 * a * g0;
                if (disc >= 0.0) {
                    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
                    roots.push_back(q / a);
                    if (q != 0.0)
                        roots.push_back(g0 / q);
                }
            } else if (b != 0.0) {
                roots.push_back(-g0 / b);
            }
            for (double s : roots)
                seeds.emplace_back(s, t_of(s));
        }
    } else if (d1.norm() > 0 || d2.norm() > 0) {
        // One fibre: the other curve crosses its vertical line at most once.
        const bool first_fibre = d1.norm() == 0;
        const TranslationCurve& fibre = first_fibre ? c1 : c2;
        const TranslationCurve& other = first_fibre ? c2 : c1;
        const Eigen::Vector2d d = planar_dir(other);
        const Eigen::Vector2d to(fibre.base().x - other.base().x, fibre.base().y - other.base().y);
        const double t = to.dot(d) / d.squaredNorm();
        const double s = (geo.eval(other, t).z - fibre.base().z) / fibre.dir().w;
        seeds.emplace_back(first_fibre ? s : t, first_fibre ? t : s);
    }

    const int n = std::max(options.samples, 2);
    const double window = 2.0 * std::max(1.0, model_distance(c1.base(), c2.base()));
    std::vector<Eigen::Vector3d> s1(n), s2(n);
    std::vector<double> params(n);
    for (int i = 0; i < n; ++i) {
        params[i] = -window + 2.0 * window * i / (n - 1);
        s1[i] = to_vec(geo.eval(c1, params[i]));
        s2[i] = to_vec(geo.eval(c2, params[i]));
    }
    std::vector<std::tuple<double, int, int>> pairs;
    pairs.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pairs.emplace_back((s1[i] - s2[j]).squaredNorm(), i, j);
    std::partial_sort(pairs.begin(), pairs.begin() + 3, pairs.end());
    for (int k = 0; k < 3; ++k)
        seeds.emplace_back(params[std::get<1>(pairs[k])], params[std::get<2>(pairs[k])]);

    std::optional<Meet> best;
    for (const auto& [s, t] : seeds) {
        const Meet meet = refine_meet(geo, c1, c2, s, t);
        if (!best || meet.residual < best->residual)
            best = meet;
        if (best->residual < options.accept * point_scale(geo.eval(c1, best->s)))
            return geo.eval(c1, best->s);
    }

    const bool fibre = c1.is_fibre() || c2.is_fibre();
    if (!fibre && std::abs(cross) / (d1.norm() * d2.norm()) < options.parallel_angle)
        return IdealPoint::from_direction(std::atan2(d1.y(), d1.x()));

    throw Error(ErrorCode::NoIntersection,
                "curves do not meet (residual floor " + std::to_string(best ? best->residual : 0.0) + ")");
}

Collinearity collinear(const std::array<ExtendedPoint, 3>& points, double tol, const Geometry& geo)
{
    std::vector<ModelPoint> proper;
    std::vector<IdealPoint> ideal;
    for (const auto& p : points) {
        if (p.is_proper())
            proper.push_back(p.proper());
        else
            ideal.push_back(p.ideal());
    }

    if (proper.size() == 3) {
        double scale = 1.0;
        for (const auto& p : proper)
            scale = std::max(scale, point_scale(p));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (geo.distance(proper[i], proper[j]) <= kCoincident * scale)
                    throw Error(ErrorCode::DegenerateInput, "collinearity test needs distinct points");
        double residual = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& p = proper[(k + 1) % 3];
            const auto& q = proper[(k + 2) % 3];
            const auto through = geo.curve_through(p, q);
            residual = std::max(residual, geo.curve_distance(through.curve, proper[k]).distance / scale);
        }
        return {residual < tol, residual};
    }
    if (proper.size() == 2) {
        if (geo.distance(proper[0], proper[1]) <= kCoincident * std::max(point_scale(proper[0]), point_scale(proper[1])))
            throw Error(ErrorCode::DegenerateInput, "collinearity test needs distinct points");
        const double mismatch = direction_mismatch(geo, proper[0], proper[1], ideal[0]);
        return {mismatch < tol, mismatch};
    }
    if (proper.size() == 1) {
        // A proper point lies on the curve at infinity only through a single ideal point.
        const double mismatch = ideal_separation(ideal[0], ideal[1]);
        return {mismatch < tol, mismatch};
    }
    return {true, 0.0};
}

double menelaus_product(const TriangleSurface& surface, const ModelPoint& p, const ModelPoint& q,
                        const ModelPoint& r, double membership_tol)
{
    const Geometry& geo = surface.geometry();
    const auto& a = surface.vertices();
    const std::array<ModelPoint, 3> pts{p, q, r};
    for (const auto& x : pts)
        for (const auto& v : a)
            if (geo.distance(x, v) <= kVertexSeparation)
                throw Error(ErrorCode::AtVertex, "Menelaus point coincides with a vertex");

    double product = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& from = a[i];
        const auto& to = a[(i + 1) % 3];
        const auto side = geo.curve_through(from, to);
        if (on_curve_residual(geo, side.curve, pts[i]) > membership_tol * std::max(1.0, side.length))
            throw Error(ErrorCode::NotOnSide, "point " + std::to_string(i) + " is not on its side curve");
        product *= geo.simple_ratio(from, pts[i], to, membership_tol);
    }
    return product;
}

IncidenceReport check_menelaus(const TriangleSurface& surface, const TranslationCurve& transversal,
                               const Tolerances& tol)
{
    const Geometry& geo = surface.geometry();
    for (const auto& v : surface.vertices())
        if (geo.curve_distance(transversal, v).distance <= tol.membership * point_scale(v))
            throw Error(ErrorCode::AtVertex, "transversal passes through a vertex");

    IncidenceReport report;
    static constexpr std::array<const char*, 3> kNames{"P", "Q", "R"};
    std::array<ModelPoint, 3> meets;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto side = surface.side(i, (i + 1) % 3);
        const MeetResult meet = try_intersect(geo, side.curve, transversal);
        if (!meet.point || meet.point->is_ideal()) {
            if (meet.point)
                report.points.emplace_back(kNames[i], *meet.point);
            report.verdict = Verdict::Inconclusive;
            report.note = std::string("MissingIntersection: transversal does not meet side ") + kNames[i] +
                          (meet.point ? " (parallel)" : " (" + meet.failure + ")");
            return report;
        }
        meets[i] = meet.point->proper();
        report.points.emplace_back(kNames[i], meets[i]);
    }
    const double product = menelaus_product(surface, meets[0], meets[1], meets[2], tol.membership);
    report.residuals.push_back({"product+1", std::abs(product + 1.0), tol.product});
    report.note = "product " + std::to_string(product);
    report.decide();
    return report;
}

std::array<ModelPoint, 3> perspective_points(const ModelPoint& center, const std::array<ModelPoint, 3>& a,
                                             const std::array<double, 3>& lambdas, const Geometry& geo)
{
    std::array<ModelPoint, 3> b;
    for (std::size_t i = 0; i < 3; ++i) {
        const double lambda = lambdas[i];
        if (!std::isfinite(lambda) || std::abs(lambda) < 1e-12 || std::abs(lambda - 1.0) < 1e-12)
            throw Error(ErrorCode::DegenerateLambda, "perspectivity parameter must avoid 0 and 1");
        if (geo.distance(center, a[i]) <= kVertexSeparation)
            throw Error(ErrorCode::DegenerateInput, "perspectivity centre coincides with a vertex");
        const auto through = geo.curve_through(center, a[i]);
        b[i] = geo.eval(through.curve, lambda * through.length);
    }
    return b;
}

IncidenceReport check_desargues(const ModelPoint& s, const std::array<ModelPoint, 3>& a,
                                const std::array<ModelPoint, 3>& b, const TriangleSurface& surface,
                                const Tolerances& tol)
{
    const Geometry& geo = surface.geometry();
    require_distinct(geo, {a[0], a[1], a[2]}, ErrorCode::DegenerateInput, "triangle A has coincident vertices");
    require_distinct(geo, {b[0], b[1], b[2]}, ErrorCode::DegenerateInput, "triangle B has coincident vertices");
    for (std::size_t i = 0; i < 3; ++i) {
        if (geo.distance(s, a[i]) <= kVertexSeparation || geo.distance(s, b[i]) <= kVertexSeparation ||
            geo.distance(a[i], b[i]) <= kVertexSeparation)
            throw Error(ErrorCode::NotPerspective, "B" + std::to_string(i + 1) + " degenerates onto S or A");
        const auto ray = geo.curve_through(s, a[i]);
        if (on_curve_residual(geo, ray.curve, b[i]) > tol.membership * std::max(1.0, ray.length))
            throw Error(ErrorCode::NotPerspective,
                        "B" + std::to_string(i + 1) + " is not on the curve through S and A" + std::to_string(i + 1));
    }

    IncidenceReport report;
    add_membership(report, surface, "S", s, tol.membership);
    for (std::size_t i = 0; i < 3; ++i) {
        add_membership(report, surface, "A" + std::to_string(i + 1), a[i], tol.membership);
        add_membership(report, surface, "B" + std::to_string(i + 1), b[i], tol.membership);
    }

    static constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
    static constexpr std::array<const char*, 3> kNames{"M12", "M13", "M23"};
    std::vector<ExtendedPoint> m;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto [i, j] = kPairs[k];
        const MeetResult meet =
            try_intersect(geo, geo.curve_through(a[i], a[j]).curve, geo.curve_through(b[i], b[j]).curve);
        if (!meet.point) {
            report.verdict = Verdict::Inconclusive;
            report.note = std::string("MissingIntersection: ") + kNames[k] + " does not exist (" + meet.failure + ")";
            return report;
        }
        m.push_back(*meet.point);
        report.points.emplace_back(kNames[k], *meet.point);
    }

    const Collinearity axis = collinear({m[0], m[1], m[2]}, tol.collinearity, geo);
    report.residuals.push_back({"collinearity", axis.residual, tol.collinearity});

    if (m[0].is_proper() && m[1].is_proper() && m[2].is_proper()) {
        const auto& m12 = m[0].proper();
        const auto& m13 = m[1].proper();
        const auto& m23 = m[2].proper();
        try {
            const auto sr = [&](const ModelPoint& x, const ModelPoint& p, const ModelPoint& y) {
                return geo.simple_ratio(x, p, y, tol.membership);
            };
            // Menelaus on S A3 A1, S A3 A2 and S A2 A1 with the sides of B as transversals.
            const double m1 = sr(s, b[0], a[0]) * sr(a[0], m13, a[2]) * sr(a[2], b[2], s);
            const double m2 = sr(s, b[2], a[2]) * sr(a[2], m23, a[1]) * sr(a[1], b[1], s);
            const double m3 = sr(s, b[1], a[1]) * sr(a[1], m12, a[0]) * sr(a[0], b[0], s);
            const double axis_product = sr(a[0], m13, a[2]) * sr(a[2], m23, a[1]) * sr(a[1], m12, a[0]);
            report.residuals.push_back({"menelaus:SA1A3", std::abs(m1 + 1.0), tol.product});
            report.residuals.push_back({"menelaus:SA3A2", std::abs(m2 + 1.0), tol.product});
            report.residuals.push_back({"menelaus:SA2A1", std::abs(m3 + 1.0), tol.product});
            report.residuals.push_back({"menelaus:A1A3A2", std::abs(axis_product + 1.0), tol.product});
            report.residuals.push_back({"proof-chain", std::abs(m1 * m2 * m3 - axis_product), tol.identity});
        } catch (const Error& e) {
            report.note = std::string("proof chain skipped: ") + e.what();
        }
    } else {
        report.note = "extended configuration: ideal meet point(s)";
    }
    report.decide();
    return report;
}

std::string_view to_string(PappusPairing p) noexcept { return p == PappusPairing::Direct ? "direct" : "cross"; }

PappusPairing parse_pappus_pairing(std::string_view text)
{
    if (text == "direct")
        return PappusPairing::Direct;
    if (text == "cross")
        return PappusPairing::Cross;
    throw Error(ErrorCode::InvalidArgument, "unknown Pappus pairing '" + std::string(text) + "'");
}

IncidenceReport check_pappus(const std::array<ModelPoint, 3>& a_in, const std::array<ModelPoint, 3>& b_in,
                             const TriangleSurface& surface, const Tolerances& tol, PappusPairing pairing)
{
    const Geometry& geo = surface.geometry();
    require_distinct(geo, {a_in[0], a_in[1], a_in[2], b_in[0], b_in[1], b_in[2]}, ErrorCode::DegenerateHexagon,
                     "hexagon vertices must be pairwise distinct");

    const auto ga = geo.curve_through(a_in[0], a_in[1]);
    const auto gb = geo.curve_through(b_in[0], b_in[1]);
    const auto on = [&](const CurveThrough& c, const ModelPoint& p) {
        return on_curve_residual(geo, c.curve, p) <= tol.membership * std::max(1.0, c.length);
    };
    if (!on(ga, a_in[2]) || !on(gb, b_in[2]))
        throw Error(ErrorCode::DegenerateHexagon, "A and B points must each lie on one curve");
    for (std::size_t i = 0; i < 3; ++i)
        if (on(gb, a_in[i]) || on(ga, b_in[i]))
            throw Error(ErrorCode::DegenerateHexagon, "hexagon vertex at the meet of the two carrier curves");

    IncidenceReport report;
    for (std::size_t i = 0; i < 3; ++i) {
        add_membership(report, surface, "A" + std::to_string(i + 1), a_in[i], tol.membership);
        add_membership(report, surface, "B" + std::to_string(i + 1), b_in[i], tol.membership);
    }

    // The cross hexagon A1B2A3B1A2B3 is the direct hexagon after relabelling.
    std::array<ModelPoint, 3> a = a_in;
    std::array<ModelPoint, 3> b = b_in;
    if (pairing == PappusPairing::Cross) {
        a = {a_in[0], a_in[2], a_in[1]};
        b = {b_in[1], b_in[0], b_in[2]};
    }
    const auto line = [&](const ModelPoint& p, const ModelPoint& q) { return geo.curve_through(p, q).curve; };
    const std::array<TranslationCurve, 3> spokes{line(a[0], b[0]), line(a[1], b[1]), line(a[2], b[2])};

    // Direct labels M1, M2, M3 are M3, M2, M1 in the cross labelling.
    const std::array<std::string, 3> names = pairing == PappusPairing::Direct
                                                 ? std::array<std::string, 3>{"M1", "M2", "M3"}
                                                 : std::array<std::string, 3>{"M3", "M2", "M1"};
    const std::array<TranslationCurve, 3> partners{line(a[2], b[1]), line(a[0], b[2]), line(a[1], b[0])};
    std::vector<ExtendedPoint> m;
    for (std::size_t k = 0; k < 3; ++k) {
        const MeetResult meet = try_intersect(geo, spokes[k], partners[k]);
        if (!meet.point) {
            report.verdict = Verdict::Inconclusive;
            report.note = "MissingIntersection: " + names[k] + " does not exist (" + meet.failure + ")";
            return report;
        }
        m.push_back(*meet.point);
    }
    for (const std::string label : {"M1", "M2", "M3"})
        for (std::size_t k = 0; k < 3; ++k)
            if (names[k] == label)
                report.points.emplace_back(label, m[k]);

    const Collinearity axis = collinear({m[0], m[1], m[2]}, tol.collinearity, geo);
    report.residuals.push_back({"collinearity", axis.residual, tol.collinearity});

    if (m[0].is_proper() && m[1].is_proper() && m[2].is_proper()) {
        const MeetResult c12 = try_intersect(geo, spokes[0], spokes[1]);
        const MeetResult c13 = try_intersect(geo, spokes[0], spokes[2]);
        const MeetResult c23 = try_intersect(geo, spokes[1], spokes[2]);
        if (c12.point && c13.point && c23.point && c12.point->is_proper() && c13.point->is_proper() &&
            c23.point->is_proper()) {
            const ModelPoint& p12 = c12.point->proper();
            const ModelPoint& p13 = c13.point->proper();
            const ModelPoint& p23 = c23.point->proper();
            report.points.emplace_back("C12", p12);
            report.points.emplace_back("C13", p13);
            report.points.emplace_back("C23", p23);
            try {
                const auto sr = [&](const ModelPoint& x, const ModelPoint& p, const ModelPoint& y) {
                    return geo.simple_ratio(x, p, y, tol.membership);
                };
                // Menelaus on C12 C23 C13 for the transversals A3B2, A1B3, A2B1, g_a and g_b.
                const auto tri = [&](const ModelPoint& on_12_23, const ModelPoint& on_23_13,
                                     const ModelPoint& on_13_12) {
                    return sr(p12, on_12_23, p23) * sr(p23, on_23_13, p13) * sr(p13, on_13_12, p12);
                };
                const ModelPoint& m1 = m[0].proper();
                const ModelPoint& m2 = m[1].proper();
                const ModelPoint& m3 = m[2].proper();
                const double t_a3b2 = tri(b[1], a[2], m1);
                const double t_a1b3 = tri(m2, b[2], a[0]);
                const double t_a2b1 = tri(a[1], m3, b[0]);
                const double t_ga = tri(a[1], a[2], a[0]);
                const double t_gb = tri(b[1], b[2], b[0]);
                const double t_axis = tri(m2, m3, m1);
                report.residuals.push_back({"menelaus:A3B2", std::abs(t_a3b2 + 1.0), tol.product});
                report.residuals.push_back({"menelaus:A1B3", std::abs(t_a1b3 + 1.0), tol.product});
                report.residuals.push_back({"menelaus:A2B1", std::abs(t_a2b1 + 1.0), tol.product});
                report.residuals.push_back({"menelaus:ga", std::abs(t_ga + 1.0), tol.product});
                report.residuals.push_back({"menelaus:gb", std::abs(t_gb + 1.0), tol.product});
                report.residuals.push_back({"menelaus:axis", std::abs(t_axis + 1.0), tol.product});
                report.residuals.push_back(
                    {"proof-chain", std::abs(t_a3b2 * t_a1b3 * t_a2b1 / (t_ga * t_gb) - t_axis), tol.identity});
            } catch (const Error& e) {
                report.note = std::string("proof chain skipped: ") + e.what();
            }
        } else {
            report.note = "proof chain skipped: auxiliary triangle C12 C13 C23 is not proper";
        }
    } else {
        report.note = "extended configuration: ideal meet point(s)";
    }
    report.decide();
    return report;
}

IncidenceReport check_pappus(const TranslationCurve& ga, const TranslationCurve& gb,
                             const std::array<double, 3>& a_params, const std::array<double, 3>& b_params,
                             const TriangleSurface& surface, const Tolerances& tol, PappusPairing pairing)
{
    const Geometry& geo = surface.geometry();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (std::abs(a_params[i] - a_params[j]) <= kVertexSeparation ||
                std::abs(b_params[i] - b_params[j]) <= kVertexSeparation)
                throw Error(ErrorCode::DegenerateHexagon, "hexagon vertices must be pairwise distinct");
    std::array<ModelPoint, 3> a, b;
    for (std::size_t i = 0; i < 3; ++i) {
        a[i] = geo.eval(ga, a_params[i]);
        b[i] = geo.eval(gb, b_params[i]);
    }
    return check_pappus(a, b, surface, tol, pairing);
}

} // namespace nilgeom
