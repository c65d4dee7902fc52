// nilgeom: theorem checks, property campaigns, meshes and figures from scene files.
//
// Exit status: 0 all pass, 1 any fail, 2 usage or parse error.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nilgeom/errors.hpp"
#include "nilgeom/scene.hpp"

namespace {

using namespace nilgeom;
using namespace nilgeom::scenes;

constexpr int kUsage = 2;

std::array<double, 3> parse_triple(const std::string& text)
{
    std::array<double, 3> out{};
    std::istringstream in(text);
    std::string part;
    std::size_t k = 0;
    while (std::getline(in, part, ',')) {
        if (k == 3)
            throw Error(ErrorCode::InvalidArgument, "expected x,y,z but got '" + text + "'");
        std::size_t used = 0;
        try {
            out[k] = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || part.empty())
            throw Error(ErrorCode::InvalidArgument, "bad coordinate '" + part + "' in '" + text + "'");
        ++k;
    }
    if (k != 3)
        throw Error(ErrorCode::InvalidArgument, "expected x,y,z but got '" + text + "'");
    return out;
}

Bounds parse_bounds(const std::string& text)
{
    std::vector<double> v;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ','))
        v.push_back(std::stod(part));
    if (v.size() != 4)
        throw Error(ErrorCode::InvalidArgument, "bounds must be x0,x1,y0,y1");
    return {v[0], v[1], v[2], v[3]};
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Incidence theorems on translation triangle surfaces of Nil geometry"};
    app.require_subcommand(1);

    RunConfig config;
    std::string scene_path;
    std::string report_path;
    auto* check = app.add_subcommand("check", "Run every assertion of a scene");
    check->add_option("scene", scene_path, "Scene JSON file")->required();
    check->add_option("--tol-product", config.tolerances.product, "Menelaus product tolerance");
    check->add_option("--tol-collinear", config.tolerances.collinearity, "Collinearity tolerance");
    check->add_option("--tol-membership", config.tolerances.membership, "Surface membership tolerance");
    check->add_option("--report", report_path, "Write the JSON report here");

    std::optional<std::uint64_t> seed;
    std::string geometry = "nil";
    std::string stats_path;
    auto* prop = app.add_subcommand("property-run", "Randomized Menelaus / Desargues / Pappus campaign");
    prop->add_option("--seed", seed, "RNG seed (default NIL_INCIDENCE_SEED or 42)");
    prop->add_option("--trials", config.trials, "Configurations per theorem")->check(CLI::PositiveNumber);
    prop->add_option("--geometry", geometry, "nil or euclid")->check(CLI::IsMember({"nil", "euclid"}));
    prop->add_option("--jobs", config.jobs, "Worker threads (0: all cores)");
    prop->add_option("-o,--output", stats_path, "Write the JSON report here instead of stdout");

    std::string triangle;
    std::string bounds_text;
    int resolution = 24;
    std::string out_path;
    auto* mesh = app.add_subcommand("mesh", "Sample a triangle surface to OBJ");
    mesh->add_option("scene", scene_path, "Scene JSON file")->required();
    mesh->add_option("--triangle", triangle, "Triangle name")->required();
    mesh->add_option("--bounds", bounds_text, "x0,x1,y0,y1")->required();
    mesh->add_option("--res", resolution, "Grid resolution")->check(CLI::Range(2, 100000));
    mesh->add_option("-o,--output", out_path, "OBJ output path")->required();

    std::string target;
    auto* figure = app.add_subcommand("figure", "Render a scene");
    figure->add_option("scene", scene_path, "Scene JSON file")->required();
    figure->add_option("--target", target, "svg-xy, svg-xz, csv or obj")->required();
    figure->add_option("--triangle", triangle, "Triangle for surface output (default: first)");
    figure->add_option("--res", resolution, "Mesh resolution for csv/obj")->check(CLI::Range(2, 100000));
    figure->add_option("-o,--output", out_path, "Output path")->required();

    std::string p_text;
    std::string q_text;
    auto* distance = app.add_subcommand("distance", "Translation distance between two points");
    distance->add_option("p", p_text, "x,y,z")->required();
    distance->add_option("q", q_text, "x,y,z")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*check) {
            const Scene scene = load_scene(scene_path);
            config.geometry = scene.geometry;
            const CheckReport report = run_checks(scene, config);
            std::cout << report.summary();
            if (!report_path.empty())
                write_output(report_path, report.to_json());
            return report.exit_code();
        }
        if (*prop) {
            config.seed = seed ? *seed : seed_from_environment();
            config.geometry = parse_geometry_tag(geometry);
            const PropertyStats stats = property_run(config);
            write_output(stats_path, stats.to_json());
            return stats.failures() > 0 ? 1 : 0;
        }
        if (*mesh) {
            const Scene scene = load_scene(scene_path);
            const TriangleMesh m = sample_mesh(scene.triangle(triangle), parse_bounds(bounds_text), resolution);
            write_output(out_path, mesh_to_obj(m));
            std::cerr << m.vertices.size() << " vertices, " << m.faces.size() << " faces, " << m.omitted_cells
                      << " cells omitted\n";
            return 0;
        }
        if (*figure) {
            const Scene scene = load_scene(scene_path);
            FigureOptions options;
            if (!triangle.empty())
                options.triangle = triangle;
            options.mesh_resolution = resolution;
            write_output(out_path, emit_figure(scene, parse_figure_target(target), options));
            return 0;
        }
        if (*distance) {
            const auto p = parse_triple(p_text);
            const auto q = parse_triple(q_text);
            std::printf("%.17g\n", translation_distance({p[0], p[1], p[2]}, {q[0], q[1], q[2]}));
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
