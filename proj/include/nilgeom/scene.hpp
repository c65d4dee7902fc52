#pragma once

// Scene files, theorem-check runs, randomized property campaigns and figure
// emission. The scene format is documented in docs/scene_format.md.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nilgeom/geometry.hpp"
#include "nilgeom/incidence.hpp"
#include "nilgeom/triangle_surface.hpp"

namespace nilgeom::scenes {

struct CurveDef {
    std::string name;
    std::optional<std::array<std::string, 2>> through; ///< named endpoints
    std::optional<std::string> base_name;              ///< named base point
    std::optional<ModelPoint> base;                    ///< literal base point
    std::optional<TangentVector> dir;
};

enum class AssertionKind { OnSurface, Collinear, Menelaus, Desargues, Pappus };

std::string_view to_string(AssertionKind kind) noexcept;

/// A collinear-assertion operand: a named point or an ideal direction.
using PointRef = std::variant<std::string, IdealPoint>;

struct Assertion {
    AssertionKind kind;
    std::string id;
    std::string triangle;              ///< on-surface, menelaus, desargues, pappus
    std::string point;                 ///< on-surface
    std::string transversal;           ///< menelaus: curve name
    std::string center;                ///< desargues
    std::vector<PointRef> points;      ///< collinear
    std::array<std::string, 3> a;      ///< desargues / pappus
    std::array<std::string, 3> b;      ///< desargues / pappus
    PappusPairing pairing = PappusPairing::Direct;
    std::optional<double> tol;
};

struct Scene {
    std::string name;
    std::string description;
    GeometryTag geometry = GeometryTag::Nil;
    std::vector<std::pair<std::string, ModelPoint>> points;
    std::vector<std::pair<std::string, std::array<std::string, 3>>> triangles;
    std::vector<CurveDef> curves;
    std::vector<Assertion> assertions;

    const Geometry& geometry_instance() const { return geometry_for(geometry); }
    const ModelPoint& point(std::string_view name) const;
    TriangleSurface triangle(std::string_view name) const;
    TranslationCurve curve(std::string_view name) const;
    bool has_point(std::string_view name) const;
    bool has_triangle(std::string_view name) const;
    bool has_curve(std::string_view name) const;
};

/// Throws Error{ParseError} with line:column for malformed JSON, and
/// UnknownReference / DuplicateName for semantic problems.
Scene parse_scene(std::string_view text, std::string_view origin = "<scene>");
Scene load_scene(const std::filesystem::path& path);
std::string dump_scene(const Scene& scene);

struct RunConfig {
    Tolerances tolerances;
    std::uint64_t seed = 42;
    int trials = 100;
    GeometryTag geometry = GeometryTag::Nil;
    unsigned jobs = 1;

    /// Throws InvalidArgument unless tolerances are positive and trials >= 1.
    void validate() const;
};

/// Seed from NIL_INCIDENCE_SEED when set, else `fallback`.
std::uint64_t seed_from_environment(std::uint64_t fallback = 42);

enum class Outcome { Pass, Fail, Inconclusive, Error };

std::string_view to_string(Outcome o) noexcept;

struct AssertionResult {
    std::string id;
    AssertionKind kind;
    Outcome outcome;
    IncidenceReport report;
    std::string error;
};

struct CheckReport {
    std::string scene;
    std::vector<AssertionResult> results;

    int count(Outcome o) const;
    /// 0 when nothing failed or errored, else 1.
    int exit_code() const;
    std::string to_json() const;
    std::string summary() const;
};

CheckReport run_checks(const Scene& scene, const RunConfig& config = {});

struct TheoremStats {
    std::string theorem;
    int trials = 0;
    int pass = 0;
    int fail = 0;
    int inconclusive = 0;
    int errors = 0;
    long rejected = 0;
    std::vector<std::pair<std::string, double>> worst; ///< largest value per residual name
};

struct PropertyStats {
    RunConfig config;
    std::vector<TheoremStats> theorems;

    int failures() const;
    std::string to_json() const;
};

/// Random triangles with coordinates in [-1, 1] (every fourth trial fibre
/// type), perspectivity parameters in [0.2, 0.8] u [1.2, 2]; runs Menelaus,
/// Desargues and Pappus per trial. Deterministic for a fixed seed regardless
/// of `jobs`.
PropertyStats property_run(const RunConfig& config);

enum class FigureTarget { SvgXY, SvgXZ, Csv, Obj };

/// Accepts svg-xy, svg-xz (or -xz), csv, obj. Throws UnsupportedTarget.
FigureTarget parse_figure_target(std::string_view text);

struct FigureOptions {
    int curve_samples = 96;          ///< per curve, at least 64
    int mesh_resolution = 24;
    std::optional<std::string> triangle; ///< mesh source for obj/csv; default: first triangle
    std::optional<Bounds> bounds;        ///< mesh bounds; default: padded point bounding box
};

std::string emit_figure(const Scene& scene, FigureTarget target, const FigureOptions& options = {});

/// Wavefront OBJ text with `v` and triangular `f` records only.
std::string mesh_to_obj(const TriangleMesh& mesh);

} // namespace nilgeom::scenes
