// Acceptance run: one pass/fail line per criterion, exit status 1 if any fails.
// Configurations are built in the exponential chart (tests/oracle.hpp), where
// translation curves are lines and triangle surfaces are planes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilgeom/errors.hpp"
#include "nilgeom/euclid_exact.hpp"
#include "nilgeom/incidence.hpp"
#include "nilgeom/nil_kernel.hpp"
#include "nilgeom/triangle_surface.hpp"
#include "oracle.hpp"

using namespace nilgeom;
using Vec3 = oracle::Vec3;
using Triangle = std::array<NilPoint, 3>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

double point_error(const NilPoint& a, const NilPoint& b) { return model_distance(a, b); }

TriangleSurface make(const Triangle& v, const Geometry& geo = nil_geometry()) { return {v[0], v[1], v[2], geo}; }

/// Every fourth configuration lies in a vertical plane, cycling through the variants.
Triangle mixed_triangle(oracle::Random& rng, int index)
{
    return index % 4 == 3 ? oracle::fibre_triangle(rng, (index / 4) % 3) : oracle::triangle(rng);
}

/// Angle between two chart lines, in radians within [0, pi/2].
double chart_angle(const NilPoint& p, const NilPoint& q, const NilPoint& r, const NilPoint& s)
{
    const Vec3 d1 = (oracle::chart(q) - oracle::chart(p)).normalized();
    const Vec3 d2 = (oracle::chart(s) - oracle::chart(r)).normalized();
    return std::asin(std::min(1.0, d1.cross(d2).norm()));
}

/// The chart meet of pq and rs when the lines are well separated in angle and
/// the meet is within reach.
std::optional<NilPoint> well_met(const NilPoint& p, const NilPoint& q, const NilPoint& r, const NilPoint& s)
{
    if (chart_angle(p, q, r, s) < 1e-2)
        return std::nullopt;
    const NilPoint m = oracle::meet(p, q, r, s);
    if (to_vec(m).norm() > 20.0)
        return std::nullopt;
    return m;
}

bool apart(std::initializer_list<NilPoint> pts, double gap)
{
    const std::vector<NilPoint> v(pts);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (model_distance(v[i], v[j]) < gap)
                return false;
    return true;
}

double lambda(oracle::Random& rng) { return rng.uniform(0, 1) < 0.5 ? rng.uniform(0.2, 0.8) : rng.uniform(1.2, 2.0); }

double residual(const IncidenceReport& r, const char* name)
{
    const Residual* res = r.find(name);
    return res ? res->value : std::numeric_limits<double>::infinity();
}

// 1. Group law, inverse law and rotation conjugacy.
Outcome group_algebra()
{
    const auto start = std::chrono::steady_clock::now();
    oracle::Random rng(101);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const NilPoint p = rng.point();
        const NilPoint a = rng.point();
        const NilPoint b = rng.point();
        const NilTranslation g{a.x, a.y, a.z};
        const NilTranslation h{b.x, b.y, b.z};
        // Applying g then h is applying the product h g.
        worst = std::max(worst, point_error(apply(apply(p, g), h), apply(p, compose(h, g))));
        const NilTranslation gh = compose(g, h);
        worst = std::max(worst, (oracle::matrix(gh) - oracle::matrix(h) * oracle::matrix(g)).cwiseAbs().maxCoeff());
        worst = std::max(worst, point_error(apply(p, g), oracle::act(p, oracle::matrix(g))));
        const NilTranslation inv = to_origin(a);
        worst = std::max(worst, point_error(apply(a, inv), {0, 0, 0}));
        const NilTranslation unit = compose(g, inv);
        worst = std::max({worst, std::abs(unit.x), std::abs(unit.y), std::abs(unit.z)});
        worst = std::max(worst, point_error(apply(apply(p, g), inv), p));
        // Rotation about the z-axis is an automorphism: R(g p) = R(g) R(p).
        const double w = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const NilPoint rg = rotate(a, w);
        worst = std::max(worst, point_error(rotate(apply(p, g), w), apply(rotate(p, w), {rg.x, rg.y, rg.z})));
        const Vec3 e = oracle::chart(p);
        const Vec3 re(std::cos(w) * e.x() - std::sin(w) * e.y(), std::sin(w) * e.x() + std::cos(w) * e.y(), e.z());
        worst = std::max(worst, point_error(rotate(p, w), oracle::unchart(re)));
    }
    const double elapsed = seconds_since(start);
    return {worst < 1e-12 && elapsed < 1.0,
            "10000 instances, worst " + sci(worst) + " (tol 1e-12), " + sci(elapsed) + " s (limit 1 s)"};
}

// 2. Curve round trip and arc-length additivity.
Outcome curve_round_trip()
{
    const auto start = std::chrono::steady_clock::now();
    oracle::Random rng(102);
    double worst_trip = 0.0;
    double worst_add = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const NilPoint a = rng.point();
        const NilPoint b = rng.point();
        const auto c = curve_through(a, b);
        worst_trip = std::max(worst_trip, point_error(curve_eval(c.curve, c.length), b));
        const double s = rng.uniform(0, 1) * c.length;
        const NilPoint m = curve_eval(c.curve, s);
        worst_add = std::max(worst_add, std::abs(translation_distance(a, m) + translation_distance(m, b) -
                                                 translation_distance(a, b)));
        worst_add = std::max(worst_add, std::abs(translation_distance(a, b) - oracle::distance(a, b)));
    }
    const double elapsed = seconds_since(start);
    return {worst_trip < 1e-12 && worst_add < 1e-10 && elapsed < 1.0,
            "10000 pairs, round trip " + sci(worst_trip) + " (tol 1e-12), additivity " + sci(worst_add) +
                " (tol 1e-10), " + sci(elapsed) + " s"};
}

// 3. Projections of curves are segments; curves in coordinate planes are straight.
Outcome projections()
{
    oracle::Random rng(103);
    double worst_proj = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const NilPoint base = rng.point();
        const double phi = rng.uniform(-1.4, 1.4);
        const double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
        const TranslationCurve c(base, from_geographic({phi, theta}));
        const PlanarPoint p0 = project_xy(curve_eval(c, -1.5));
        const PlanarPoint p1 = project_xy(curve_eval(c, 1.5));
        const Eigen::Vector2d d = Eigen::Vector2d(p1.x - p0.x, p1.y - p0.y).normalized();
        for (int k = 0; k <= 20; ++k) {
            const PlanarPoint q = project_xy(curve_eval(c, -1.5 + 3.0 * k / 20));
            const Eigen::Vector2d w(q.x - p0.x, q.y - p0.y);
            worst_proj = std::max(worst_proj, std::abs(w.x() * d.y() - w.y() * d.x()));
        }
    }
    double worst_plane = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double c = rng.uniform(-1, 1);
        NilPoint a{rng.uniform(-1, 1), c, rng.uniform(-1, 1)};
        NilPoint b{rng.uniform(-1, 1), c, rng.uniform(-1, 1)};
        if (i % 2) {
            a = {c, a.x, a.z};
            b = {c, b.x, b.z};
        }
        const auto curve = curve_through(a, b);
        const Vec3 d = (to_vec(b) - to_vec(a)).normalized();
        for (int k = 0; k <= 20; ++k) {
            const Vec3 w = to_vec(curve_eval(curve.curve, curve.length * (-0.5 + 2.0 * k / 20))) - to_vec(a);
            worst_plane = std::max(worst_plane, (w - w.dot(d) * d).norm());
        }
    }
    return {worst_proj < 1e-10 && worst_plane < 1e-10,
            "1000 curves, projected deviation " + sci(worst_proj) + "; 1000 planar pairs, deviation " +
                sci(worst_plane) + " (tol 1e-10)"};
}

// 4. Menelaus on transversals, with non-collinear negative controls.
Outcome menelaus()
{
    const auto start = std::chrono::steady_clock::now();
    oracle::Random rng(104);
    int valid = 0;
    int bad = 0;
    int fibre = 0;
    long rejected = 0;
    double worst = 0.0;
    std::string first_problem;
    for (int draw = 0; valid < 1000 && draw < 100000; ++draw) {
        const Triangle v = mixed_triangle(rng, valid);
        const NilPoint p = oracle::lerp(v[0], v[1], rng.uniform(0.15, 0.85));
        const double tq = rng.uniform(0, 1) < 0.5 ? rng.uniform(0.15, 0.85) : rng.uniform(1.2, 2.0);
        const NilPoint q = oracle::lerp(v[1], v[2], tq);
        const auto r = well_met(p, q, v[2], v[0]);
        if (!r || !apart({*r, v[0], v[2]}, 1e-2) || !apart({p, q}, 0.05)) {
            ++rejected;
            continue;
        }
        fibre += valid % 4 == 3;
        ++valid;
        try {
            const IncidenceReport report = check_menelaus(make(v), curve_through(p, q).curve);
            const double res = residual(report, "product+1");
            worst = std::max(worst, res);
            if (report.verdict == Verdict::Inconclusive || !(res < 1e-6)) {
                ++bad;
                if (first_problem.empty())
                    first_problem = std::string(to_string(report.verdict)) + " " + report.note;
            }
        } catch (const Error& e) {
            ++bad;
            if (first_problem.empty())
                first_problem = e.what();
        }
    }

    int far = 0;
    const int controls = 1000;
    for (int i = 0; i < controls; ++i) {
        const Triangle v = mixed_triangle(rng, i);
        const auto fraction = [&] { return rng.uniform(0, 1) < 0.7 ? rng.uniform(0.1, 0.9) : rng.uniform(1.1, 2.0); };
        const double product = menelaus_product(make(v), oracle::lerp(v[0], v[1], fraction()),
                                                oracle::lerp(v[1], v[2], fraction()),
                                                oracle::lerp(v[2], v[0], fraction()));
        far += std::abs(product + 1.0) > 1e-3;
    }
    const double elapsed = seconds_since(start);
    std::string detail = std::to_string(valid) + " transversals (" + std::to_string(fibre) + " fibre type, " +
                         std::to_string(rejected) + " ill-conditioned draws redrawn), worst |product+1| " + sci(worst) +
                         " (tol 1e-6), " + std::to_string(bad) + " failures; negative controls " +
                         std::to_string(far) + "/" + std::to_string(controls) + " beyond 1e-3 (need 99%), " +
                         sci(elapsed) + " s";
    if (!first_problem.empty())
        detail += "; first failure: " + first_problem;
    return {valid == 1000 && bad == 0 && far * 100 >= controls * 99 && elapsed < 30.0, detail};
}

struct DesarguesConfig {
    Triangle surface;
    NilPoint centre;
    Triangle a;
    Triangle b;
};

/// Perspective configuration on the chart plane of a random triangle.
std::optional<DesarguesConfig> desargues_config(oracle::Random& rng, int index, std::array<double, 3> lambdas)
{
    DesarguesConfig c;
    c.surface = mixed_triangle(rng, index);
    c.a = c.surface;
    double alpha = 0;
    double beta = 0;
    do {
        alpha = rng.uniform(-0.8, 1.8);
        beta = rng.uniform(-0.8, 1.8);
    } while (std::min({std::abs(alpha), std::abs(beta), std::abs(1 - alpha - beta)}) < 0.1);
    c.centre = oracle::affine(c.surface, alpha, beta);
    for (std::size_t i = 0; i < 3; ++i)
        c.b[i] = oracle::lerp(c.centre, c.a[i], lambdas[i]);
    return c;
}

// 5. Desargues with proper meets, collinearity and proof-chain identity.
Outcome desargues()
{
    oracle::Random rng(105);
    int valid = 0;
    int bad = 0;
    long rejected = 0;
    double worst_col = 0.0;
    double worst_chain = 0.0;
    std::string first_problem;
    for (int draw = 0; valid < 500 && draw < 100000; ++draw) {
        const auto c = desargues_config(rng, valid, {lambda(rng), lambda(rng), lambda(rng)});
        bool ok = true;
        for (const auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const auto m = well_met(c->a[i], c->a[j], c->b[i], c->b[j]);
            ok = ok && m && apart({*m, c->a[i], c->a[j], c->b[i], c->b[j]}, 1e-2);
        }
        if (!ok || !apart({c->centre, c->a[0], c->a[1], c->a[2]}, 0.05)) {
            ++rejected;
            continue;
        }
        ++valid;
        try {
            const IncidenceReport r = check_desargues(c->centre, c->a, c->b, make(c->surface));
            const double col = residual(r, "collinearity");
            const double chain = residual(r, "proof-chain");
            worst_col = std::max(worst_col, col);
            worst_chain = std::max(worst_chain, chain);
            if (r.verdict != Verdict::Pass || !(col < 1e-6) || !(chain < 1e-9)) {
                ++bad;
                if (first_problem.empty())
                    first_problem = std::string(to_string(r.verdict)) + " col " + sci(col) + " chain " + sci(chain) +
                                    " " + r.note;
            }
        } catch (const Error& e) {
            ++bad;
            if (first_problem.empty())
                first_problem = e.what();
        }
    }
    std::string detail = std::to_string(valid) + " configurations (" + std::to_string(rejected) +
                         " ill-conditioned draws redrawn), worst collinearity " + sci(worst_col) +
                         " (tol 1e-6), worst proof chain " + sci(worst_chain) + " (tol 1e-9), " + std::to_string(bad) +
                         " failures";
    if (!first_problem.empty())
        detail += "; first failure: " + first_problem;
    return {valid == 500 && bad == 0, detail};
}

struct PappusConfig {
    Triangle surface;
    Triangle a;
    Triangle b;
};

/// Pappus hexagon on two chart lines of the triangle plane: A_i = o + a_i u, B_i = o + b_i w.
PappusConfig pappus_config(const Triangle& surface, std::array<double, 2> o, double u_angle, double w_angle,
                           const std::array<double, 3>& ta, const std::array<double, 3>& tb)
{
    PappusConfig c{surface, {}, {}};
    for (std::size_t i = 0; i < 3; ++i) {
        c.a[i] = oracle::affine(surface, o[0] + ta[i] * std::cos(u_angle), o[1] + ta[i] * std::sin(u_angle));
        c.b[i] = oracle::affine(surface, o[0] + tb[i] * std::cos(w_angle), o[1] + tb[i] * std::sin(w_angle));
    }
    return c;
}

bool pappus_conditioned(const PappusConfig& c)
{
    const auto& a = c.a;
    const auto& b = c.b;
    if (!apart({a[0], a[1], a[2], b[0], b[1], b[2]}, 0.1))
        return false;
    // Direct pairing meets, its spokes' meets, and the cross pairing meets.
    const std::array<std::array<NilPoint, 4>, 9> pairs{{{a[0], b[0], a[2], b[1]},
                                                       {a[1], b[1], a[0], b[2]},
                                                       {a[2], b[2], a[1], b[0]},
                                                       {a[0], b[0], a[1], b[1]},
                                                       {a[0], b[0], a[2], b[2]},
                                                       {a[1], b[1], a[2], b[2]},
                                                       {a[1], b[2], a[2], b[1]},
                                                       {a[0], b[2], a[2], b[0]},
                                                       {a[0], b[1], a[1], b[0]}}};
    std::vector<NilPoint> meets;
    for (const auto& q : pairs) {
        const auto m = well_met(q[0], q[1], q[2], q[3]);
        if (!m || !apart({*m, q[0], q[1], q[2], q[3]}, 1e-2))
            return false;
        meets.push_back(*m);
    }
    // Cross pairing relabels onto a second set of spokes; require those triangles proper too.
    const std::array<std::array<NilPoint, 4>, 3> cross_spokes{{{a[0], b[1], a[2], b[0]},
                                                              {a[0], b[1], a[1], b[2]},
                                                              {a[2], b[0], a[1], b[2]}}};
    for (const auto& q : cross_spokes) {
        const auto m = well_met(q[0], q[1], q[2], q[3]);
        if (!m || !apart({*m, q[0], q[1], q[2], q[3]}, 1e-2))
            return false;
        meets.push_back(*m);
    }
    return apart({meets[0], meets[1], meets[2]}, 1e-2) && apart({meets[6], meets[7], meets[8]}, 1e-2) &&
           apart({meets[3], meets[4], meets[5]}, 1e-2) && apart({meets[9], meets[10], meets[11]}, 1e-2);
}

std::array<double, 3> hexagon_params(oracle::Random& rng)
{
    std::array<double, 3> t{};
    do {
        for (auto& x : t)
            x = rng.uniform(-0.6, 1.6);
    } while (std::min({std::abs(t[0]), std::abs(t[1]), std::abs(t[2])}) < 0.1);
    return t;
}

// 6. Pappus with proper meets, collinearity and five-factor identity.
Outcome pappus()
{
    oracle::Random rng(106);
    int valid = 0;
    int bad = 0;
    long rejected = 0;
    double worst_col = 0.0;
    double worst_chain = 0.0;
    std::string first_problem;
    for (int draw = 0; valid < 500 && draw < 200000; ++draw) {
        const Triangle t = mixed_triangle(rng, valid);
        const PappusConfig c = pappus_config(t, {rng.uniform(0, 0.5), rng.uniform(0, 0.5)},
                                             rng.uniform(0, std::numbers::pi), rng.uniform(0, std::numbers::pi),
                                             hexagon_params(rng), hexagon_params(rng));
        if (!pappus_conditioned(c)) {
            ++rejected;
            continue;
        }
        ++valid;
        for (PappusPairing pairing : {PappusPairing::Direct, PappusPairing::Cross}) {
            try {
                const IncidenceReport r = check_pappus(c.a, c.b, make(c.surface), {}, pairing);
                const double col = residual(r, "collinearity");
                const double chain = residual(r, "proof-chain");
                worst_col = std::max(worst_col, col);
                worst_chain = std::max(worst_chain, chain);
                if (r.verdict != Verdict::Pass || !(col < 1e-6) || !(chain < 1e-9)) {
                    ++bad;
                    if (first_problem.empty())
                        first_problem = std::string(to_string(pairing)) + " " + std::string(to_string(r.verdict)) +
                                        " col " + sci(col) + " chain " + sci(chain) + " " + r.note;
                }
            } catch (const Error& e) {
                ++bad;
                if (first_problem.empty())
                    first_problem = e.what();
            }
        }
    }
    std::string detail = std::to_string(valid) + " hexagons x 2 pairings (" + std::to_string(rejected) +
                         " ill-conditioned draws redrawn), worst collinearity " + sci(worst_col) +
                         " (tol 1e-6), worst five-factor identity " + sci(worst_chain) + " (tol 1e-9), " +
                         std::to_string(bad) + " failures";
    if (!first_problem.empty())
        detail += "; first failure: " + first_problem;
    return {valid == 500 && bad == 0, detail};
}

/// Dyadic planar coordinates k/16 in [-1, 1]: exact in doubles and in products with k/8.
double dyadic(oracle::Random& rng, int lo = -16, int hi = 16)
{
    return std::floor(rng.uniform(lo, hi + 1)) / 16.0;
}

std::optional<ExtendedPoint> nil_meet(const NilPoint& p, const NilPoint& q, const NilPoint& r, const NilPoint& s)
{
    try {
        return intersect(curve_through(p, q).curve, curve_through(r, s).curve);
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool nil_collinear(const std::array<std::optional<ExtendedPoint>, 3>& m)
{
    if (!m[0] || !m[1] || !m[2])
        return false;
    return collinear({*m[0], *m[1], *m[2]}, 1e-8).collinear;
}

// 7. Fibre-type Nil pipeline against the exact planar oracle.
Outcome euclid_equivalence()
{
    oracle::Random rng(107);
    int configs = 0;
    int disagreements = 0;
    int negatives = 0;
    long rejected = 0;
    double worst_product = 0.0;
    double worst_meet = 0.0;
    std::string first_problem;
    const auto note = [&](const std::string& what) {
        ++disagreements;
        if (first_problem.empty())
            first_problem = what;
    };
    for (int draw = 0; configs < 500 && draw < 100000; ++draw) {
        const exact::PlanarChart chart(draw % 2 ? exact::PlanarChart::Drop::X : exact::PlanarChart::Drop::Y,
                                       dyadic(rng));
        const auto lift = [&](double u, double w) { return chart.from_plane({u, w}); };
        const auto flat = [&](const NilPoint& p) { return exact::to_qpoint(chart.to_plane(p)); };
        const Triangle v{lift(dyadic(rng), dyadic(rng)), lift(dyadic(rng), dyadic(rng)), lift(dyadic(rng), dyadic(rng))};
        if (!apart({v[0], v[1], v[2]}, 0.3) || chart_angle(v[0], v[1], v[0], v[2]) < 0.3) {
            ++rejected;
            continue;
        }
        const std::array<exact::QPoint, 3> qv{flat(v[0]), flat(v[1]), flat(v[2])};

        // Menelaus: transversal through dyadic points of two sides.
        const auto on_side = [&](std::size_t i, double t) {
            const PlanarPoint a = chart.to_plane(v[i]);
            const PlanarPoint b = chart.to_plane(v[(i + 1) % 3]);
            return lift(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        };
        const NilPoint p = on_side(0, std::floor(rng.uniform(2, 14)) / 16.0);
        const NilPoint q = on_side(1, std::floor(rng.uniform(20, 32)) / 16.0);
        const auto r = well_met(p, q, v[2], v[0]);

        // Desargues: dyadic centre and parameters; every fifth B3 nudged off its ray.
        const NilPoint centre = lift(dyadic(rng, -8, 8), dyadic(rng, -8, 8));
        std::array<double, 3> lambdas{};
        for (auto& l : lambdas)
            l = std::floor(rng.uniform(0, 1) < 0.5 ? rng.uniform(2, 7) : rng.uniform(10, 16)) / 8.0;
        Triangle b;
        for (std::size_t i = 0; i < 3; ++i) {
            const PlanarPoint s = chart.to_plane(centre);
            const PlanarPoint a = chart.to_plane(v[i]);
            b[i] = lift(s.x + lambdas[i] * (a.x - s.x), s.y + lambdas[i] * (a.y - s.y));
        }
        const bool negative = configs % 5 == 4;
        if (negative) {
            const PlanarPoint moved = chart.to_plane(b[2]);
            b[2] = lift(moved.x + 0.125, moved.y - 0.0625);
        }

        // Pappus: dyadic points on two lines through a dyadic origin.
        const PlanarPoint o{dyadic(rng, -4, 4), dyadic(rng, -4, 4)};
        const PlanarPoint du{dyadic(rng, 4, 16), dyadic(rng, -8, 8)};
        const PlanarPoint dw{dyadic(rng, -8, 8), dyadic(rng, 4, 16)};
        Triangle pa;
        Triangle pb;
        for (std::size_t i = 0; i < 3; ++i) {
            const double ta = std::floor(rng.uniform(2, 26)) / 16.0 * (i == 1 ? -1 : 1);
            const double tb = std::floor(rng.uniform(2, 26)) / 16.0 * (i == 2 ? -1 : 1);
            pa[i] = lift(o.x + ta * du.x, o.y + ta * du.y);
            pb[i] = lift(o.x + tb * dw.x, o.y + tb * dw.y);
        }
        const NilPoint pb_nudged = lift(chart.to_plane(pb[2]).x + 0.0625, chart.to_plane(pb[2]).y);

        bool ok = r && apart({*r, v[0], v[2]}, 1e-2) && apart({p, q}, 0.05) &&
                  apart({centre, v[0], v[1], v[2], b[0], b[1], b[2]}, 0.05) &&
                  chart_angle(pa[0], pa[1], pb[0], pb[1]) > 0.1;
        for (const auto& [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const auto m = ok ? well_met(v[i], v[j], b[i], b[j]) : std::nullopt;
            ok = ok && m && apart({*m, v[i], v[j], b[i], b[j]}, 1e-2);
        }
        const PappusConfig hex{v, pa, pb};
        ok = ok && pappus_conditioned(hex);
        if (!ok) {
            ++rejected;
            continue;
        }
        ++configs;
        negatives += negative;

        try {
            // Menelaus against the exact product and meets.
            const auto oracle_m = exact::menelaus(qv, {flat(p), flat(q)});
            const IncidenceReport rm = check_menelaus(make(v), curve_through(p, q).curve);
            const bool oracle_pass = oracle_m.product == exact::Rational(-1);
            if ((rm.verdict == Verdict::Pass) != oracle_pass)
                note("menelaus verdict");
            static constexpr std::array<const char*, 3> kNames{"P", "Q", "R"};
            for (std::size_t i = 0; i < 3; ++i) {
                const PlanarPoint want{oracle_m.meets[i].x.convert_to<double>(), oracle_m.meets[i].y.convert_to<double>()};
                worst_meet = std::max(worst_meet, point_error(rm.point(kNames[i])->proper(), chart.from_plane(want)));
            }
            const double product = menelaus_product(make(v), rm.point("P")->proper(), rm.point("Q")->proper(),
                                                    rm.point("R")->proper());
            worst_product = std::max(worst_product, std::abs(product - oracle_m.product.convert_to<double>()));

            // Desargues: verdict of the meets against the exact oracle.
            const std::array<exact::QPoint, 3> qb{flat(b[0]), flat(b[1]), flat(b[2])};
            const bool oracle_d = exact::desargues(qv, qb).collinear;
            bool nil_d = false;
            if (negative) {
                nil_d = nil_collinear({nil_meet(v[0], v[1], b[0], b[1]), nil_meet(v[0], v[2], b[0], b[2]),
                                       nil_meet(v[1], v[2], b[1], b[2])});
            } else {
                nil_d = check_desargues(centre, v, b, make(v)).verdict == Verdict::Pass;
            }
            if (nil_d != oracle_d)
                note(std::string("desargues verdict") + (negative ? " (negative control)" : ""));

            // Pappus: both pairings; the nudged hexagon as a negative control.
            const std::array<exact::QPoint, 3> qa{flat(pa[0]), flat(pa[1]), flat(pa[2])};
            const std::array<exact::QPoint, 3> qpb{flat(pb[0]), flat(pb[1]), flat(pb[2])};
            for (PappusPairing pairing : {PappusPairing::Direct, PappusPairing::Cross}) {
                const bool oracle_p = exact::pappus(qa, qpb, pairing).collinear;
                const bool nil_p = check_pappus(pa, pb, make(v), {}, pairing).verdict == Verdict::Pass;
                if (nil_p != oracle_p)
                    note("pappus verdict (" + std::string(to_string(pairing)) + ")");
            }
            if (negative) {
                const std::array<exact::QPoint, 3> qn{qpb[0], qpb[1], flat(pb_nudged)};
                const bool oracle_n = exact::pappus(qa, qn, PappusPairing::Direct).collinear;
                const bool nil_n = nil_collinear({nil_meet(pa[0], pb[0], pa[2], pb[1]),
                                                  nil_meet(pa[1], pb[1], pa[0], pb_nudged),
                                                  nil_meet(pa[2], pb_nudged, pa[1], pb[0])});
                if (nil_n != oracle_n)
                    note("pappus verdict (negative control)");
            }
        } catch (const Error& e) {
            note(e.what());
        }
    }
    std::string detail = std::to_string(configs) + " fibre-type configurations (" + std::to_string(negatives) +
                         " with negative controls, " + std::to_string(rejected) +
                         " redrawn), worst product difference " + sci(worst_product) + ", worst meet difference " +
                         sci(worst_meet) + " (tol 1e-8), " + std::to_string(disagreements) + " verdict disagreements";
    if (!first_problem.empty())
        detail += "; first: " + first_problem;
    return {configs == 500 && disagreements == 0 && worst_product < 1e-8 && worst_meet < 1e-8, detail};
}

// 8. Side inclusion and closure of connecting curves on the surface.
Outcome surface_properties()
{
    oracle::Random rng(108);
    double worst_side = 0.0;
    for (int i = 0; i < 200; ++i) {
        const TriangleSurface s = make(mixed_triangle(rng, i));
        for (std::size_t k = 0; k < 3; ++k) {
            const auto side = s.side(k, (k + 1) % 3);
            for (int j = 1; j <= 50; ++j)
                worst_side = std::max(
                    worst_side, std::abs(surface_functional(s, curve_eval(side.curve, side.length * j / 51.0))));
        }
    }
    double worst_closure = 0.0;
    int curves = 0;
    std::string problem;
    while (curves < 200) {
        const Triangle v = mixed_triangle(rng, curves);
        const TriangleSurface s = make(v);
        try {
            const NilPoint p1 = project_to_surface(s, oracle::affine(v, rng.uniform(-0.3, 1.0), rng.uniform(-0.3, 1.0)));
            const NilPoint p2 = project_to_surface(s, oracle::affine(v, rng.uniform(-0.3, 1.0), rng.uniform(-0.3, 1.0)));
            if (model_distance(p1, p2) < 0.05)
                continue;
            const auto c = curve_through(p1, p2);
            for (int j = 1; j <= 20; ++j) {
                const NilPoint q = curve_eval(c.curve, c.length * j / 21.0);
                if (apart({q, v[0], v[1], v[2]}, 1e-6))
                    worst_closure = std::max(worst_closure, std::abs(surface_functional(s, q)));
            }
            ++curves;
        } catch (const Error& e) {
            problem = e.what();
            worst_closure = std::numeric_limits<double>::infinity();
            ++curves;
        }
    }
    std::string detail = "200 triangles x 3 sides x 50 samples, worst |F| " + sci(worst_side) +
                         " (tol 1e-9); 200 connecting curves x 20 samples, worst |F| " + sci(worst_closure) +
                         " (tol 1e-7)";
    if (!problem.empty())
        detail += "; " + problem;
    return {worst_side < 1e-9 && worst_closure < 1e-7, detail};
}

// 9. Parallel corresponding sides: ideal meets and extended collinearity.
Outcome ideal_points()
{
    oracle::Random rng(109);
    int desargues_ok = 0;
    int desargues_ideal = 0;
    int pappus_ok = 0;
    int pappus_ideal = 0;
    std::string problem;
    for (int i = 0; i < 100; ++i) {
        // Equal parameters on two rays make those sides chart-parallel; all three on every fifth.
        const double l = lambda(rng);
        std::array<double, 3> lambdas{l, l, l};
        if (i % 5 != 4) {
            double other = 0;
            do {
                other = lambda(rng);
            } while (std::abs(other - l) < 0.2);
            lambdas[i % 3] = other;
        }
        const auto c = desargues_config(rng, i, lambdas);
        try {
            const IncidenceReport r = check_desargues(c->centre, c->a, c->b, make(c->surface));
            int ideal = 0;
            for (const char* name : {"M12", "M13", "M23"})
                ideal += r.point(name) && r.point(name)->is_ideal();
            desargues_ideal += ideal > 0;
            desargues_ok += r.verdict == Verdict::Pass && ideal > 0;
            if ((r.verdict != Verdict::Pass || ideal == 0) && problem.empty())
                problem = "desargues " + std::string(to_string(r.verdict)) + " " + r.note;
        } catch (const Error& e) {
            if (problem.empty())
                problem = e.what();
        }
    }
    for (int i = 0; i < 100; ++i) {
        // Direct pairing: b2 = b1 a3 / a1 makes A1B1 parallel to A3B2; b3 = b1 a3 / a2 makes all three parallel.
        const Triangle t = mixed_triangle(rng, i);
        std::array<double, 3> ta{};
        std::array<double, 3> tb{};
        PappusConfig c;
        int guard = 0;
        do {
            ta = {rng.uniform(0.3, 1.6), rng.uniform(0.3, 1.6), rng.uniform(0.3, 1.6)};
            const double b1 = rng.uniform(0.3, 1.6);
            tb = {b1, b1 * ta[2] / ta[0], i % 5 == 4 ? b1 * ta[2] / ta[1] : rng.uniform(0.3, 1.6)};
            c = pappus_config(t, {rng.uniform(0, 0.4), rng.uniform(0, 0.4)}, rng.uniform(0, 1.2),
                              rng.uniform(1.8, 3.0), ta, tb);
        } while (++guard < 1000 && !apart({c.a[0], c.a[1], c.a[2], c.b[0], c.b[1], c.b[2]}, 0.1));
        try {
            const IncidenceReport r = check_pappus(c.a, c.b, make(c.surface));
            int ideal = 0;
            for (const char* name : {"M1", "M2", "M3"})
                ideal += r.point(name) && r.point(name)->is_ideal();
            pappus_ideal += ideal > 0;
            pappus_ok += r.verdict == Verdict::Pass && ideal > 0;
            if ((r.verdict != Verdict::Pass || ideal == 0) && problem.empty())
                problem = "pappus " + std::string(to_string(r.verdict)) + " " + r.note;
        } catch (const Error& e) {
            if (problem.empty())
                problem = e.what();
        }
    }
    int triples = 0;
    for (int i = 0; i < 1000; ++i)
        triples += collinear({IdealPoint::from_direction(rng.uniform(-4, 4)), IdealPoint::from_direction(rng.uniform(-4, 4)),
                              IdealPoint::from_direction(rng.uniform(-4, 4))})
                       .collinear;
    std::string detail = "Desargues " + std::to_string(desargues_ok) + "/100 pass (" + std::to_string(desargues_ideal) +
                         " with ideal meets), Pappus " + std::to_string(pappus_ok) + "/100 pass (" +
                         std::to_string(pappus_ideal) + " with ideal meets), three-ideal collinearity " +
                         std::to_string(triples) + "/1000";
    if (!problem.empty())
        detail += "; first failure: " + problem;
    return {desargues_ok == 100 && pappus_ok == 100 && triples == 1000, detail};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& command)
{
    const int status = std::system((command + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 10. CLI determinism and figure emission for the golden scenes.
Outcome cli()
{
    const std::filesystem::path work = std::filesystem::temp_directory_path() / "nilgeom_acceptance";
    std::filesystem::create_directories(work);
    const std::string cli = NILGEOM_CLI;
    const std::string scenes = NILGEOM_SCENES_DIR;
    const auto start = std::chrono::steady_clock::now();
    const int first = run(cli + " property-run --seed 42 --trials 1000 -o " + (work / "run1.json").string());
    const int second = run(cli + " property-run --seed 42 --trials 1000 -o " + (work / "run2.json").string());
    const double elapsed = seconds_since(start);
    const std::string a = slurp(work / "run1.json");
    const bool identical = !a.empty() && a == slurp(work / "run2.json");

    int figures = 0;
    int figure_errors = 0;
    int checks_passed = 0;
    for (const char* scene : {"desargues_fig1", "pappus_fig2", "pappus_fig3"}) {
        const std::string path = scenes + "/" + scene + ".json";
        checks_passed += run(cli + " check " + path) == 0;
        for (const char* target : {"svg-xy", "svg-xz"}) {
            const auto out = work / (std::string(scene) + "_" + target + ".svg");
            const int code = run(cli + " figure " + path + " --target " + target + " -o " + out.string());
            const std::string svg = slurp(out);
            const bool ok = code == 0 && svg.find("<svg") != std::string::npos &&
                            svg.find("</svg>") != std::string::npos && svg.find("<polyline") != std::string::npos;
            figures += ok;
            figure_errors += !ok;
        }
    }
    return {first == 0 && second == 0 && identical && figure_errors == 0 && checks_passed == 3,
            std::string("property-run exit codes ") + std::to_string(first) + "," + std::to_string(second) +
                (identical ? ", reports byte-identical" : ", reports DIFFER") + " (" + sci(elapsed) + " s); " +
                std::to_string(figures) + "/6 golden SVG figures, " + std::to_string(checks_passed) +
                "/3 golden scenes pass check"};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"group and rotation algebra", group_algebra},
        {"curve round trip and arc-length additivity", curve_round_trip},
        {"curve projections and planar curves", projections},
        {"Menelaus on random transversals", menelaus},
        {"Desargues with proof-chain identity", desargues},
        {"Pappus with five-factor identity", pappus},
        {"fibre type agrees with the exact planar oracle", euclid_equivalence},
        {"side inclusion and connecting-curve closure", surface_properties},
        {"ideal points and extended collinearity", ideal_points},
        {"CLI determinism and golden figures", cli},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("[%s] criterion %zu [PRIMARY] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
