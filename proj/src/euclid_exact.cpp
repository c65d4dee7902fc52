#include "nilgeom/euclid_exact.hpp"

#include <cmath>
#include <vector>

#include "nilgeom/errors.hpp"

namespace nilgeom::exact {

Rational to_rational(double v)
{
    if (!std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument, "cannot convert a non-finite value to a rational");
    if (v == 0.0)
        return Rational(0);
    int exponent = 0;
    const double mantissa = std::frexp(v, &exponent);
    // 53-bit integer mantissa scaled by a power of two.
    const auto integer = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    boost::multiprecision::cpp_int num(integer);
    boost::multiprecision::cpp_int den(1);
    if (exponent >= 0)
        num <<= exponent;
    else
        den <<= -exponent;
    return Rational(num, den);
}

QPoint to_qpoint(const PlanarPoint& p) { return {to_rational(p.x), to_rational(p.y)}; }

QHom homogeneous(const QPoint& p) { return {p.x, p.y, Rational(1)}; }

QHom join(const QHom& p, const QHom& q)
{
    return {p.y * q.w - p.w * q.y, p.w * q.x - p.x * q.w, p.x * q.y - p.y * q.x};
}

Rational det3(const QHom& a, const QHom& b, const QHom& c)
{
    return a.x * (b.y * c.w - b.w * c.y) - a.y * (b.x * c.w - b.w * c.x) + a.w * (b.x * c.y - b.y * c.x);
}

namespace {

Rational cross(const QPoint& a, const QPoint& b) { return a.x * b.y - a.y * b.x; }
QPoint sub(const QPoint& a, const QPoint& b) { return {a.x - b.x, a.y - b.y}; }

QHom line_through(const QPoint& p, const QPoint& q)
{
    const QHom l = join(homogeneous(p), homogeneous(q));
    if (l.is_zero())
        throw Error(ErrorCode::DegenerateConfig, "line through coincident points");
    return l;
}

QHom meet(const QHom& l, const QHom& m)
{
    const QHom p = join(l, m);
    if (p.is_zero())
        throw Error(ErrorCode::DegenerateConfig, "corresponding lines coincide");
    return p;
}

void require_triangle(const std::array<QPoint, 3>& t)
{
    if (cross(sub(t[1], t[0]), sub(t[2], t[0])) == 0)
        throw Error(ErrorCode::DegenerateConfig, "degenerate triangle");
}

} // namespace

Rational simple_ratio(const QPoint& a, const QPoint& p, const QPoint& b)
{
    const QPoint ab = sub(b, a);
    const QPoint ap = sub(p, a);
    if (cross(ab, ap) != 0)
        throw Error(ErrorCode::NotOnCurve, "points are not collinear");
    // p = a + t (b - a)
    const Rational t = ab.x != 0 ? ap.x / ab.x : ap.y / ab.y;
    if (t == 1 || t == 0 || (ab.x == 0 && ab.y == 0))
        throw Error(ErrorCode::DegeneratePoints, "simple ratio needs three distinct points");
    return t / (1 - t);
}

MenelausResult menelaus(const std::array<QPoint, 3>& triangle, const std::array<QPoint, 2>& line)
{
    require_triangle(triangle);
    const QPoint e = sub(line[1], line[0]);
    if (e.x == 0 && e.y == 0)
        throw Error(ErrorCode::DegenerateConfig, "transversal needs two distinct points");

    MenelausResult result;
    result.product = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        const QPoint& from = triangle[i];
        const QPoint& to = triangle[(i + 1) % 3];
        const QPoint d = sub(to, from);
        const Rational denom = cross(e, d);
        if (denom == 0)
            throw Error(ErrorCode::ParallelSideLine, "transversal is parallel to a side");
        const Rational t = -cross(e, sub(from, line[0])) / denom;
        if (t == 0 || t == 1)
            throw Error(ErrorCode::AtVertex, "transversal passes through a vertex");
        result.meets[i] = {from.x + t * d.x, from.y + t * d.y};
        result.product *= t / (1 - t);
    }
    return result;
}

IncidenceResult desargues(const std::array<QPoint, 3>& a, const std::array<QPoint, 3>& b)
{
    require_triangle(a);
    require_triangle(b);
    static constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
    IncidenceResult r;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto [i, j] = kPairs[k];
        r.meets[k] = meet(line_through(a[i], a[j]), line_through(b[i], b[j]));
    }
    r.collinear = det3(r.meets[0], r.meets[1], r.meets[2]) == 0;
    return r;
}

bool perspective(const QPoint& center, const std::array<QPoint, 3>& a, const std::array<QPoint, 3>& b)
{
    for (std::size_t i = 0; i < 3; ++i)
        if (cross(sub(a[i], center), sub(b[i], center)) != 0)
            return false;
    return true;
}

IncidenceResult pappus(const std::array<QPoint, 3>& a, const std::array<QPoint, 3>& b, PappusPairing pairing)
{
    std::vector<QPoint> all{a.begin(), a.end()};
    all.insert(all.end(), b.begin(), b.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i].x == all[j].x && all[i].y == all[j].y)
                throw Error(ErrorCode::DegenerateConfig, "hexagon vertices must be distinct");

    // {A index, B index} pairs of the two lines meeting in M1, M2, M3.
    using Pair = std::array<std::size_t, 2>;
    std::array<std::array<Pair, 2>, 3> table;
    if (pairing == PappusPairing::Direct)
        table = {{{{{0, 0}, {2, 1}}}, {{{1, 1}, {0, 2}}}, {{{2, 2}, {1, 0}}}}};
    else
        table = {{{{{1, 2}, {2, 1}}}, {{{0, 2}, {2, 0}}}, {{{0, 1}, {1, 0}}}}};

    IncidenceResult r;
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& [l1, l2] = table[k];
        r.meets[k] = meet(line_through(a[l1[0]], b[l1[1]]), line_through(a[l2[0]], b[l2[1]]));
    }
    r.collinear = det3(r.meets[0], r.meets[1], r.meets[2]) == 0;
    return r;
}

std::optional<PlanarChart> PlanarChart::detect(std::initializer_list<ModelPoint> points, double tol)
{
    if (points.size() == 0)
        return std::nullopt;
    const ModelPoint& first = *points.begin();
    bool same_x = true;
    bool same_y = true;
    for (const auto& p : points) {
        same_x = same_x && std::abs(p.x - first.x) <= tol;
        same_y = same_y && std::abs(p.y - first.y) <= tol;
    }
    if (same_y)
        return PlanarChart(Drop::Y, first.y);
    if (same_x)
        return PlanarChart(Drop::X, first.x);
    return std::nullopt;
}

PlanarPoint PlanarChart::to_plane(const ModelPoint& p) const
{
    return drop_ == Drop::Y ? PlanarPoint{p.x, p.z} : PlanarPoint{p.y, p.z};
}

ModelPoint PlanarChart::from_plane(const PlanarPoint& p) const
{
    return drop_ == Drop::Y ? ModelPoint{p.x, constant_, p.y} : ModelPoint{constant_, p.x, p.y};
}

} // namespace nilgeom::exact
