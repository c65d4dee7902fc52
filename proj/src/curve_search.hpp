#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Core>

namespace nilgeom::detail {

struct ParamDistance {
    double distance;
    double parameter;
};

// Closest point of a smooth parametrized curve to `target`, searched around the
// estimate t0: coarse sampling, golden section on the best bracket, then Newton
// on the stationarity condition (x(t) - target) . x'(t) = 0.
template <typename Eval, typename Velocity>
ParamDistance closest_parameter(Eval&& eval, Velocity&& velocity, const Eigen::Vector3d& target, double t0)
{
    const auto dist2 = [&](double t) { return (eval(t) - target).squaredNorm(); };

    const double radius = std::max(1.0, std::abs(t0));
    constexpr int kSamples = 33;
    const double step = 2.0 * radius / (kSamples - 1);
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSamples; ++i) {
        const double val = dist2(t0 - radius + i * step);
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }

    double lo = t0 - radius + std::max(best - 1, 0) * step;
    double hi = t0 - radius + std::min(best + 1, kSamples - 1) * step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = dist2(c);
    double fd = dist2(d);
    for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = dist2(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = dist2(d);
        }
    }
    double t = 0.5 * (lo + hi);

    for (int it = 0; it < 4; ++it) {
        const Eigen::Vector3d diff = eval(t) - target;
        const Eigen::Vector3d vel = velocity(t);
        const double h = 1e-6 * std::max(1.0, std::abs(t));
        const Eigen::Vector3d acc = (velocity(t + h) - velocity(t - h)) / (2.0 * h);
        const double g = diff.dot(vel);
        const double dg = vel.squaredNorm() + diff.dot(acc);
        if (!(dg > 0.0))
            break;
        const double next = t - g / dg;
        if (!(dist2(next) <= dist2(t)))
            break;
        t = next;
    }

    // The estimate itself is exact for points on the curve.
    if (dist2(t0) < dist2(t))
        t = t0;
    return {std::sqrt(dist2(t)), t};
}

} // namespace nilgeom::detail
