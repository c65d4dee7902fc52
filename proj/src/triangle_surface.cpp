#include "nilgeom/triangle_surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Geometry>

#include "nilgeom/errors.hpp"

namespace nilgeom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMeshTolerance = 1e-8;

double functional_or_nan(const TriangleSurface& surface, const ModelPoint& p)
{
    try {
        return surface_functional(surface, p);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::AtVertex || e.code() == ErrorCode::ZeroLength)
            return kNaN;
        throw;
    }
}

struct ZRange {
    double lo, hi;
};

// Bracket for fibre root searches: vertex z-range padded by twice the diameter.
ZRange z_range(const TriangleSurface& surface)
{
    const auto& v = surface.vertices();
    const double pad = 2.0 * surface.diameter();
    const auto [lo, hi] = std::minmax({v[0].z, v[1].z, v[2].z});
    return {lo - pad, hi + pad};
}

struct FibreRoot {
    double z;
    double residual;
};

// Root of z -> F(x, y, z) on [lo, hi]: sign-change scan, bisection, Newton polish.
std::optional<FibreRoot> root_on_fibre(const TriangleSurface& surface, double x, double y, ZRange range,
                                       int scan = 64)
{
    const auto f = [&](double z) { return functional_or_nan(surface, {x, y, z}); };
    std::optional<FibreRoot> best;
    const double step = (range.hi - range.lo) / scan;
    double z_prev = range.lo;
    double f_prev = f(z_prev);
    for (int k = 1; k <= scan; ++k) {
        const double z_next = range.lo + k * step;
        const double f_next = f(z_next);
        if (std::isfinite(f_prev) && std::isfinite(f_next) && f_prev * f_next <= 0.0) {
            double a = z_prev, b = z_next, fa = f_prev;
            for (int it = 0; it < 100 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (!std::isfinite(fm))
                    break;
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            double z = 0.5 * (a + b);
            double fz = f(z);
            for (int it = 0; it < 3 && std::isfinite(fz); ++it) {
                const double h = 1e-7 * std::max(1.0, std::abs(z));
                const double df = (f(z + h) - f(z - h)) / (2.0 * h);
                if (!(std::abs(df) > 0.0))
                    break;
                const double next = z - fz / df;
                const double fn = f(next);
                if (!(std::abs(fn) < std::abs(fz)))
                    break;
                z = next;
                fz = fn;
            }
            if (std::isfinite(fz) && (!best || std::abs(fz) < best->residual))
                best = FibreRoot{z, std::abs(fz)};
        }
        z_prev = z_next;
        f_prev = f_next;
    }
    return best;
}

Eigen::Vector3d numeric_gradient(const TriangleSurface& surface, const Eigen::Vector3d& p)
{
    Eigen::Vector3d grad;
    const double h = 1e-7 * std::max(1.0, p.norm());
    for (int i = 0; i < 3; ++i) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e[i] = h;
        grad[i] = (functional_or_nan(surface, to_point(p + e)) - functional_or_nan(surface, to_point(p - e))) / (2 * h);
    }
    return grad;
}

// Probe coordinates in the affine frame (A0; A1 - A0, A2 - A0), inside and
// outside the triangle, away from the vertices and the Euclidean sides.
constexpr std::array<std::array<double, 2>, 20> kProbes{{
    {0.21, 0.33}, {0.47, 0.12}, {0.15, 0.61}, {0.38, 0.29}, {0.62, 0.17},
    {0.09, 0.27}, {0.26, 0.48}, {0.55, 0.31}, {0.33, 0.07}, {0.71, 0.13},
    {1.37, 0.41}, {-0.45, 0.72}, {0.83, -0.36}, {-0.27, -0.31}, {1.12, 1.09},
    {0.44, 1.27}, {-0.61, 1.43}, {1.58, -0.22}, {0.24, -0.57}, {2.05, 0.66},
}};

} // namespace

TriangleSurface::TriangleSurface(const ModelPoint& a0, const ModelPoint& a1, const ModelPoint& a2,
                                 const Geometry& geometry)
    : vertices_{a0, a1, a2}, geometry_(&geometry)
{
    for (const auto& v : vertices_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            throw Error(ErrorCode::DegenerateInput, "triangle vertex is not finite");
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            if (geometry.distance(vertices_[i], vertices_[j]) <= kVertexSeparation)
                throw Error(ErrorCode::DegenerateInput, "triangle vertices coincide");

    const auto [curve, length] = geometry.curve_through(a0, a1);
    const double off = geometry.curve_distance(curve, a2).distance;
    if (off <= kVertexSeparation * std::max(1.0, diameter()))
        throw Error(ErrorCode::DegenerateInput, "triangle vertices lie on one connecting curve");
}

CurveThrough TriangleSurface::side(std::size_t i, std::size_t j) const
{
    return geometry_->curve_through(vertices_.at(i), vertices_.at(j));
}

double TriangleSurface::diameter() const
{
    double d = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            d = std::max(d, geometry_->distance(vertices_[i], vertices_[j]));
    return d;
}

double surface_functional(const TriangleSurface& surface, const ModelPoint& p)
{
    return surface.geometry().surface_functional(surface.vertices(), p);
}

bool on_surface(const TriangleSurface& surface, const ModelPoint& p, double tol)
{
    for (const auto& v : surface.vertices())
        if (surface.geometry().distance(p, v) <= kVertexSeparation)
            return true;
    return std::abs(surface_functional(surface, p)) < tol;
}

ModelPoint project_to_surface(const TriangleSurface& surface, const ModelPoint& q, const ProjectOptions& options)
{
    for (const auto& v : surface.vertices())
        if (surface.geometry().distance(q, v) <= kVertexSeparation)
            throw Error(ErrorCode::AtVertex, "projection start coincides with a vertex");

    double best_residual = std::abs(surface_functional(surface, q));
    ModelPoint best = q;
    if (best_residual < options.tolerance)
        return q;

    const auto consider = [&](const ModelPoint& p, double residual) {
        if (std::isfinite(residual) && residual < best_residual) {
            best_residual = residual;
            best = p;
        }
        return best_residual < options.tolerance;
    };

    const ZRange range = z_range(surface);
    const double max_step = range.hi - range.lo;

    // Newton along the fibre through q.
    double z = q.z;
    for (int it = 0; it < options.max_iterations; ++it) {
        const double fz = functional_or_nan(surface, {q.x, q.y, z});
        if (!std::isfinite(fz) || consider({q.x, q.y, z}, std::abs(fz)))
            break;
        const double h = 1e-7 * std::max(1.0, std::abs(z));
        const double df = (functional_or_nan(surface, {q.x, q.y, z + h}) -
                           functional_or_nan(surface, {q.x, q.y, z - h})) /
                          (2.0 * h);
        if (!std::isfinite(df) || std::abs(df) < 1e-12)
            break;
        z += std::clamp(-fz / df, -max_step, max_step);
    }
    if (best_residual < options.tolerance)
        return best;

    // Bracketed search on the same fibre.
    if (const auto root = root_on_fibre(surface, q.x, q.y, range))
        if (consider({q.x, q.y, root->z}, root->residual))
            return best;

    // Minimum-norm Gauss-Newton in 3D; covers folds and vertical surfaces.
    Eigen::Vector3d p = to_vec(q);
    double fp = functional_or_nan(surface, q);
    for (int it = 0; it < options.max_iterations && std::isfinite(fp); ++it) {
        const Eigen::Vector3d grad = numeric_gradient(surface, p);
        const double g2 = grad.squaredNorm();
        if (!std::isfinite(g2) || g2 < 1e-30)
            break;
        const Eigen::Vector3d step = -fp * grad / g2;
        bool improved = false;
        for (double alpha = 1.0; alpha > 1e-6; alpha *= 0.5) {
            const Eigen::Vector3d trial = p + alpha * step;
            const double ft = functional_or_nan(surface, to_point(trial));
            if (std::isfinite(ft) && std::abs(ft) < std::abs(fp)) {
                p = trial;
                fp = ft;
                improved = true;
                break;
            }
        }
        if (consider(to_point(p), std::abs(fp)))
            return best;
        if (!improved)
            break;
    }

    throw Error(ErrorCode::NoConvergence,
                "surface projection stalled with residual " + std::to_string(best_residual));
}

SurfaceClass classify(const TriangleSurface& surface)
{
    const auto& v = surface.vertices();
    const Eigen::Vector3d a0 = to_vec(v[0]);
    const Eigen::Vector3d e1 = to_vec(v[1]) - a0;
    const Eigen::Vector3d e2 = to_vec(v[2]) - a0;
    const Eigen::Vector3d n = e1.cross(e2);
    if (n.norm() <= 1e-12 * e1.norm() * e2.norm())
        return {SurfaceKind::GeneralType, std::nullopt};

    for (const auto& [a, b] : kProbes) {
        const double f = functional_or_nan(surface, to_point(a0 + a * e1 + b * e2));
        if (!(std::abs(f) < 1e-9))
            return {SurfaceKind::GeneralType, std::nullopt};
    }
    const Eigen::Vector3d unit = n.normalized();
    return {SurfaceKind::FibreType, Plane{unit, unit.dot(a0)}};
}

TriangleMesh sample_mesh(const TriangleSurface& surface, const Bounds& bounds, int resolution)
{
    if (resolution < 2)
        throw Error(ErrorCode::InvalidArgument, "mesh resolution must be at least 2");
    if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0))
        throw Error(ErrorCode::InvalidArgument, "mesh bounds must be a non-empty rectangle");

    const std::size_t n = static_cast<std::size_t>(resolution);
    std::vector<std::optional<ModelPoint>> grid(n * n);
    const ZRange range = z_range(surface);

    const auto accept = [&](const ModelPoint& p) -> std::optional<ModelPoint> {
        const double f = functional_or_nan(surface, p);
        if (std::isfinite(f) && std::abs(f) < kMeshTolerance)
            return p;
        return std::nullopt;
    };

    const SurfaceClass cls = classify(surface);
    if (cls.plane && std::abs(cls.plane->normal.z()) < 1e-6) {
        // Vertical plane: grid it by (position along its trace, z).
        Eigen::Vector2d nh(cls.plane->normal.x(), cls.plane->normal.y());
        const double scale = nh.norm();
        nh /= scale;
        const double offset = cls.plane->offset / scale;
        const Eigen::Vector2d origin = offset * nh;
        const Eigen::Vector2d along(-nh.y(), nh.x());
        double s_lo = -std::numeric_limits<double>::infinity();
        double s_hi = std::numeric_limits<double>::infinity();
        const std::array<std::array<double, 2>, 2> slabs{{{bounds.x0, bounds.x1}, {bounds.y0, bounds.y1}}};
        for (int axis = 0; axis < 2; ++axis) {
            const double o = origin[axis];
            const double d = along[axis];
            if (std::abs(d) < 1e-15) {
                if (o < slabs[axis][0] || o > slabs[axis][1])
                    throw Error(ErrorCode::EmptyMesh, "surface plane misses the mesh bounds");
                continue;
            }
            const double ta = (slabs[axis][0] - o) / d;
            const double tb = (slabs[axis][1] - o) / d;
            s_lo = std::max(s_lo, std::min(ta, tb));
            s_hi = std::min(s_hi, std::max(ta, tb));
        }
        if (!(s_hi > s_lo))
            throw Error(ErrorCode::EmptyMesh, "surface plane misses the mesh bounds");
        for (std::size_t j = 0; j < n; ++j) {
            const double z = range.lo + (range.hi - range.lo) * static_cast<double>(j) / (n - 1);
            for (std::size_t i = 0; i < n; ++i) {
                const double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) / (n - 1);
                const Eigen::Vector2d xy = origin + s * along;
                grid[j * n + i] = accept({xy.x(), xy.y(), z});
            }
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double y = bounds.y0 + (bounds.y1 - bounds.y0) * static_cast<double>(j) / (n - 1);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = bounds.x0 + (bounds.x1 - bounds.x0) * static_cast<double>(i) / (n - 1);
                if (const auto root = root_on_fibre(surface, x, y, range))
                    grid[j * n + i] = accept({x, y, root->z});
            }
        }
    }

    TriangleMesh mesh;
    std::vector<std::size_t> index(n * n, 0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid[k]) {
            index[k] = mesh.vertices.size();
            mesh.vertices.push_back(*grid[k]);
        }
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const std::array<std::size_t, 4> corner{j * n + i, j * n + i + 1, (j + 1) * n + i + 1, (j + 1) * n + i};
            std::vector<std::size_t> valid;
            for (const auto c : corner)
                if (grid[c])
                    valid.push_back(index[c]);
            if (valid.size() == 4) {
                mesh.faces.push_back({valid[0], valid[1], valid[2]});
                mesh.faces.push_back({valid[0], valid[2], valid[3]});
            } else if (valid.size() == 3) {
                mesh.faces.push_back({valid[0], valid[1], valid[2]});
            } else {
                ++mesh.omitted_cells;
            }
        }
    }
    if (mesh.vertices.empty())
        throw Error(ErrorCode::EmptyMesh, "no surface points found inside the bounds");
    return mesh;
}

} // namespace nilgeom
