#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "nilgeom/errors.hpp"
#include "nilgeom/scene.hpp"

namespace nilgeom::scenes {

using json = nlohmann::json;

namespace {

constexpr double kMinAngle = 1e-3; // rad, between curves meeting at a constructed point
constexpr double kMaxMeet = 20.0;  // model-coordinate radius of acceptable meets
constexpr int kMaxRedraws = 2000;

// Splitmix64 finalizer; decorrelates the per-trial streams.
std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Portable across standard libraries, unlike uniform_real_distribution.
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double lambda()
    {
        const double u = uniform(0.0, 1.0);
        // [0.2, 0.8] and [1.2, 2] weighted by length.
        return u < 0.6 / 1.4 ? 0.2 + u * 1.4 : 1.2 + (u * 1.4 - 0.6);
    }

private:
    std::mt19937_64 engine_;
};

// Exponential chart of the instance: translation curves are straight lines and
// triangle surfaces are planes there.
Eigen::Vector3d chart(GeometryTag tag, const ModelPoint& p)
{
    return tag == GeometryTag::Nil ? Eigen::Vector3d(p.x, p.y, p.z - 0.5 * p.x * p.y) : to_vec(p);
}

ModelPoint unchart(GeometryTag tag, const Eigen::Vector3d& e)
{
    return tag == GeometryTag::Nil ? ModelPoint{e.x(), e.y(), e.z() + 0.5 * e.x() * e.y()} : to_point(e);
}

// Meet of the chart lines pq and rs is well conditioned: crossing angle at
// least kMinAngle and the meet within kMaxMeet.
bool well_met(GeometryTag tag, const ModelPoint& p, const ModelPoint& q, const ModelPoint& r, const ModelPoint& s)
{
    const Eigen::Vector3d a = chart(tag, p);
    const Eigen::Vector3d d1 = chart(tag, q) - a;
    const Eigen::Vector3d c = chart(tag, r);
    const Eigen::Vector3d d2 = chart(tag, s) - c;
    const double sine = d1.cross(d2).norm() / (d1.norm() * d2.norm());
    if (!(sine >= kMinAngle))
        return false;
    Eigen::Matrix<double, 3, 2> m;
    m.col(0) = d1;
    m.col(1) = -d2;
    const Eigen::Vector2d st = m.colPivHouseholderQr().solve(c - a);
    return to_vec(unchart(tag, a + st[0] * d1)).norm() <= kMaxMeet;
}

std::array<ModelPoint, 3> random_vertices(Rng& rng, bool fibre)
{
    std::array<ModelPoint, 3> v;
    if (!fibre) {
        for (auto& p : v)
            p = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        return v;
    }
    // Vertical plane: x = c, y = c, or a general direction.
    const int variant = static_cast<int>(rng.uniform(0.0, 3.0));
    const double c = rng.uniform(-1, 1);
    const double angle = rng.uniform(0.0, std::numbers::pi);
    const double x0 = rng.uniform(-0.5, 0.5);
    const double y0 = rng.uniform(-0.5, 0.5);
    for (auto& p : v) {
        const double s = rng.uniform(-1, 1);
        const double z = rng.uniform(-1, 1);
        if (variant == 0)
            p = {c, s, z};
        else if (variant == 1)
            p = {s, c, z};
        else
            p = {x0 + s * std::cos(angle) * 0.5, y0 + s * std::sin(angle) * 0.5, z};
    }
    return v;
}

// Chart-affine point A0 + alpha (A1 - A0) + beta (A2 - A0).
ModelPoint affine(GeometryTag tag, const std::array<ModelPoint, 3>& v, double alpha, double beta)
{
    const Eigen::Vector3d a0 = chart(tag, v[0]);
    return unchart(tag, a0 + alpha * (chart(tag, v[1]) - a0) + beta * (chart(tag, v[2]) - a0));
}

// Reasonably shaped triangle: chart area relative to the squared diameter.
bool well_shaped(GeometryTag tag, const std::array<ModelPoint, 3>& v)
{
    const Eigen::Vector3d a = chart(tag, v[0]);
    const Eigen::Vector3d e1 = chart(tag, v[1]) - a;
    const Eigen::Vector3d e2 = chart(tag, v[2]) - a;
    const double diam = std::max({e1.norm(), e2.norm(), (e2 - e1).norm()});
    return diam > 0.1 && e1.cross(e2).norm() > 0.1 * diam * diam;
}

struct TheoremTrial {
    Outcome outcome = Outcome::Error;
    std::vector<Residual> residuals;
    long rejected = 0;
};

struct TrialResult {
    std::array<TheoremTrial, 3> theorems; // menelaus, desargues, pappus
};

Outcome outcome_of(const IncidenceReport& r)
{
    switch (r.verdict) {
    case Verdict::Pass: return Outcome::Pass;
    case Verdict::Fail: return Outcome::Fail;
    case Verdict::Inconclusive: return Outcome::Inconclusive;
    }
    return Outcome::Error;
}

// Draws until `attempt` yields a report; attempts return nullopt to redraw.
template <typename Attempt>
TheoremTrial sample(Rng& rng, Attempt&& attempt)
{
    TheoremTrial t;
    for (int k = 0; k < kMaxRedraws; ++k) {
        std::optional<IncidenceReport> report;
        try {
            report = attempt(rng);
        } catch (const Error&) {
            report.reset(); // degenerate draw (e.g. DegenerateInput): redraw
        }
        if (!report) {
            ++t.rejected;
            continue;
        }
        t.outcome = outcome_of(*report);
        t.residuals = std::move(report->residuals);
        return t;
    }
    t.outcome = Outcome::Error;
    return t;
}

std::optional<TriangleSurface> random_surface(Rng& rng, GeometryTag tag, bool fibre)
{
    const auto v = random_vertices(rng, fibre);
    if (!well_shaped(tag, v))
        return std::nullopt;
    return TriangleSurface(v[0], v[1], v[2], geometry_for(tag));
}

TrialResult run_trial(const RunConfig& config, int index)
{
    const GeometryTag tag = config.geometry;
    const Geometry& geo = geometry_for(tag);
    const bool fibre = index % 4 == 3;
    Rng rng(mix(config.seed ^ mix(static_cast<std::uint64_t>(index))));
    const Tolerances& tol = config.tolerances;
    TrialResult out;

    out.theorems[0] = sample(rng, [&](Rng& r) -> std::optional<IncidenceReport> {
        auto surface = random_surface(r, tag, fibre);
        if (!surface)
            return std::nullopt;
        const auto& v = surface->vertices();
        const double tp = r.uniform(0.15, 0.85);
        const double u = r.uniform(0.0, 1.0);
        const double tq = u < 0.5 ? 0.15 + 1.4 * u : 1.2 + 1.6 * (u - 0.5);
        const ModelPoint p = affine(tag, v, tp, 0.0);
        const ModelPoint q = affine(tag, v, 1.0 - tq, tq); // on line A1A2
        if (!well_met(tag, p, q, v[0], v[1]) || !well_met(tag, p, q, v[1], v[2]) ||
            !well_met(tag, p, q, v[2], v[0]))
            return std::nullopt;
        return check_menelaus(*surface, geo.curve_through(p, q).curve, tol);
    });

    out.theorems[1] = sample(rng, [&](Rng& r) -> std::optional<IncidenceReport> {
        auto surface = random_surface(r, tag, fibre);
        if (!surface)
            return std::nullopt;
        const auto& v = surface->vertices();
        const double alpha = r.uniform(-0.8, 1.8);
        const double beta = r.uniform(-0.8, 1.8);
        const double gamma = 1.0 - alpha - beta;
        if (std::min({std::abs(alpha), std::abs(beta), std::abs(gamma)}) < 0.1)
            return std::nullopt;
        const ModelPoint s = affine(tag, v, alpha, beta);
        const std::array<double, 3> lambdas{r.lambda(), r.lambda(), r.lambda()};
        const auto b = perspective_points(s, v, lambdas, geo);
        static constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
        for (const auto& [i, j] : kPairs)
            if (!well_met(tag, v[i], v[j], b[i], b[j]))
                return std::nullopt;
        // The auxiliary Menelaus triangles need the perspective rays to meet the axis cleanly.
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j && !well_met(tag, s, v[i], v[j], v[(j + 1) % 3]))
                    return std::nullopt;
        return check_desargues(s, v, b, *surface, tol);
    });

    out.theorems[2] = sample(rng, [&](Rng& r) -> std::optional<IncidenceReport> {
        auto surface = random_surface(r, tag, fibre);
        if (!surface)
            return std::nullopt;
        const auto& v = surface->vertices();
        // ga from A0 to a point of side A1A2, gb from A1 to a point of side A2A0.
        const double ua = r.uniform(0.2, 0.8);
        const double ub = r.uniform(0.2, 0.8);
        const ModelPoint xa = affine(tag, v, 1.0 - ua, ua);
        const ModelPoint xb = affine(tag, v, 0.0, ub);
        if (!well_met(tag, v[0], xa, v[1], xb))
            return std::nullopt;
        std::array<ModelPoint, 3> a;
        std::array<ModelPoint, 3> b;
        for (std::size_t k = 0; k < 3; ++k) {
            const Eigen::Vector3d a0 = chart(tag, v[0]);
            const Eigen::Vector3d b0 = chart(tag, v[1]);
            a[k] = unchart(tag, a0 + r.uniform(-0.6, 1.6) * (chart(tag, xa) - a0));
            b[k] = unchart(tag, b0 + r.uniform(-0.6, 1.6) * (chart(tag, xb) - b0));
        }
        // Distinct, and away from the common point of ga and gb.
        std::vector<ModelPoint> all{a.begin(), a.end()};
        all.insert(all.end(), b.begin(), b.end());
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (model_distance(all[i], all[j]) < 0.1)
                    return std::nullopt;
        // Lines of both pairings, and the sides of the auxiliary triangle.
        const std::array<std::array<std::size_t, 4>, 6> pairs{{{0, 0, 2, 1}, {1, 1, 0, 2}, {2, 2, 1, 0},
                                                               {2, 1, 0, 2}, {0, 2, 1, 0}, {1, 0, 2, 1}}};
        for (const auto& [i, j, k, l] : pairs)
            if (!well_met(tag, a[i], b[j], a[k], b[l]))
                return std::nullopt;
        return check_pappus(a, b, *surface, tol);
    });
    return out;
}

void merge(TheoremStats& stats, const TheoremTrial& t)
{
    ++stats.trials;
    stats.rejected += t.rejected;
    switch (t.outcome) {
    case Outcome::Pass: ++stats.pass; break;
    case Outcome::Fail: ++stats.fail; break;
    case Outcome::Inconclusive: ++stats.inconclusive; break;
    case Outcome::Error: ++stats.errors; break;
    }
    for (const auto& r : t.residuals) {
        auto it = std::find_if(stats.worst.begin(), stats.worst.end(), [&](const auto& w) { return w.first == r.name; });
        if (it == stats.worst.end())
            stats.worst.emplace_back(r.name, r.value);
        else
            it->second = std::max(it->second, r.value);
    }
}

} // namespace

int PropertyStats::failures() const
{
    int n = 0;
    for (const auto& t : theorems)
        n += t.fail + t.errors;
    return n;
}

std::string PropertyStats::to_json() const
{
    json root;
    root["seed"] = config.seed;
    root["trials"] = config.trials;
    root["geometry"] = std::string(to_string(config.geometry));
    root["tolerances"] = {{"algebraic", config.tolerances.algebraic},
                          {"membership", config.tolerances.membership},
                          {"collinearity", config.tolerances.collinearity},
                          {"product", config.tolerances.product},
                          {"identity", config.tolerances.identity}};
    root["theorems"] = json::array();
    for (const auto& t : theorems) {
        json j = {{"theorem", t.theorem},   {"trials", t.trials}, {"pass", t.pass},
                  {"fail", t.fail},         {"inconclusive", t.inconclusive},
                  {"errors", t.errors},     {"rejected_draws", t.rejected}};
        j["rejection_rate"] = t.trials + t.rejected > 0
                                  ? static_cast<double>(t.rejected) / static_cast<double>(t.trials + t.rejected)
                                  : 0.0;
        j["worst_residuals"] = json::object();
        for (const auto& [name, value] : t.worst)
            j["worst_residuals"][name] = value;
        root["theorems"].push_back(j);
    }
    root["failures"] = failures();
    return root.dump(2) + "\n";
}

PropertyStats property_run(const RunConfig& config)
{
    config.validate();
    std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
    std::atomic<int> next{0};
    const auto worker = [&] {
        for (int i = next++; i < config.trials; i = next++)
            results[static_cast<std::size_t>(i)] = run_trial(config, i);
    };
    const unsigned jobs = std::max(1u, config.jobs == 0 ? std::thread::hardware_concurrency() : config.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < jobs; ++k)
            pool.emplace_back(worker);
    }

    PropertyStats stats;
    stats.config = config;
    for (const char* name : {"menelaus", "desargues", "pappus"}) {
        TheoremStats t;
        t.theorem = name;
        stats.theorems.push_back(std::move(t));
    }
    for (const auto& r : results)
        for (std::size_t k = 0; k < 3; ++k)
            merge(stats.theorems[k], r.theorems[k]);
    return stats;
}

} // namespace nilgeom::scenes
