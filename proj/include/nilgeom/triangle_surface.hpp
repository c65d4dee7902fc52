#pragma once

// The translation-triangle surface: points from which the tangents of the
// connecting curves to the three vertices are coplanar.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "nilgeom/geometry.hpp"

namespace nilgeom {

class TriangleSurface {
public:
    /// Throws DegenerateInput for coincident vertices or vertices on one curve.
    TriangleSurface(const ModelPoint& a0, const ModelPoint& a1, const ModelPoint& a2,
                    const Geometry& geometry = nil_geometry());

    const std::array<ModelPoint, 3>& vertices() const noexcept { return vertices_; }
    const ModelPoint& vertex(std::size_t i) const { return vertices_.at(i); }
    const Geometry& geometry() const noexcept { return *geometry_; }

    /// Connecting curve from vertex i to vertex j.
    CurveThrough side(std::size_t i, std::size_t j) const;

    /// Largest pairwise distance between vertices.
    double diameter() const;

private:
    std::array<ModelPoint, 3> vertices_;
    const Geometry* geometry_;
};

enum class SurfaceKind { FibreType, GeneralType };

/// n . p = offset, with |n| = 1.
struct Plane {
    Eigen::Vector3d normal;
    double offset;

    double signed_distance(const ModelPoint& p) const { return normal.dot(to_vec(p)) - offset; }
};

struct SurfaceClass {
    SurfaceKind kind;
    std::optional<Plane> plane; // set for FibreType
};

double surface_functional(const TriangleSurface& surface, const ModelPoint& p);

/// |F(p)| < tol. Vertices count as members.
bool on_surface(const TriangleSurface& surface, const ModelPoint& p, double tol = 1e-9);

struct ProjectOptions {
    int max_iterations = 100;
    double tolerance = 1e-10;
};

/// Moves q onto the surface: Newton along the z-fibre through q, then a
/// bracketed fibre search, then minimum-norm Gauss-Newton steps on F in 3D.
/// Throws NoConvergence carrying the best residual.
ModelPoint project_to_surface(const TriangleSurface& surface, const ModelPoint& q, const ProjectOptions& options = {});

SurfaceClass classify(const TriangleSurface& surface);

struct Bounds {
    double x0, x1, y0, y1;
};

struct TriangleMesh {
    std::vector<ModelPoint> vertices;
    std::vector<std::array<std::size_t, 3>> faces;
    std::size_t omitted_cells = 0;
};

/// Grid mesh of the surface over the (x, y) rectangle. Each grid column is
/// solved for z by bracketed bisection and Newton polish; vertical (fibre
/// type) planes are gridded in their own (horizontal, z) chart instead.
/// Throws EmptyMesh when no vertex could be placed.
TriangleMesh sample_mesh(const TriangleSurface& surface, const Bounds& bounds, int resolution);

} // namespace nilgeom
