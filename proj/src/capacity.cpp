#include "wrl/capacity.hpp"

#include <algorithm>
#include <cmath>

#include "wrl/common.hpp"
#include "wrl/info.hpp"
#include "wrl/parallel.hpp"

namespace wrl {

std::vector<RateCurvePoint> rate_curve(const WiretapChannel& ch,
                                       unsigned grid_resolution, unsigned threads) {
    const auto grid = simplex_grid(ch.nx(), grid_resolution);
    std::vector<RateCurvePoint> points;
    points.reserve(grid.size());
    for (const auto& p : grid) {
        points.push_back(RateCurvePoint{0.0, 0.0, p});
    }
    parallel_for(grid.size(), threads, [&](std::size_t g) {
        const double i_y = mutual_information(input_output_joint(grid[g], ch, Side::receiver));
        const double i_z =
            mutual_information(input_output_joint(grid[g], ch, Side::eavesdropper));
        points[g].randomness_cost = i_z;
        points[g].secrecy_gain = i_y - i_z;
    });
    return points;
}

ConcaveEnvelope::ConcaveEnvelope(const std::vector<RateCurvePoint>& points) {
    require(!points.empty(), "envelope requires at least one point");
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].randomness_cost != points[b].randomness_cost) {
            return points[a].randomness_cost < points[b].randomness_cost;
        }
        if (points[a].secrecy_gain != points[b].secrecy_gain) {
            return points[a].secrecy_gain > points[b].secrecy_gain;
        }
        return a < b;
    });

    // upper hull by monotone chain; collinear middles dropped
    std::vector<EnvelopeVertex> hull;
    for (std::size_t idx : order) {
        const double x = points[idx].randomness_cost;
        const double y = points[idx].secrecy_gain;
        if (!hull.empty() && hull.back().cost == x) continue;  // keep best gain per cost
        while (hull.size() >= 2) {
            const EnvelopeVertex& a = hull[hull.size() - 2];
            const EnvelopeVertex& b = hull.back();
            const double cross =
                (b.cost - a.cost) * (y - a.gain) - (b.gain - a.gain) * (x - a.cost);
            if (cross >= 0.0) {
                hull.pop_back();  // b is on or below segment a-(x,y)
            } else {
                break;
            }
        }
        hull.push_back(EnvelopeVertex{x, y, idx});
    }
    v_ = std::move(hull);
    peak_ = 0;
    for (std::size_t i = 1; i < v_.size(); ++i) {
        if (v_[i].gain > v_[peak_].gain) peak_ = i;
    }
}

double ConcaveEnvelope::value_at(double cost) const {
    if (cost <= v_.front().cost) return v_.front().gain;
    if (cost >= v_.back().cost) return v_.back().gain;
    // vertices have strictly increasing cost
    std::size_t hi = 1;
    while (v_[hi].cost < cost) ++hi;
    const EnvelopeVertex& a = v_[hi - 1];
    const EnvelopeVertex& b = v_[hi];
    const double lam = (b.cost - cost) / (b.cost - a.cost);
    return lam * a.gain + (1.0 - lam) * b.gain;
}

namespace {

CapacityResult decompose(const std::vector<RateCurvePoint>& points,
                         const ConcaveEnvelope& env, double budget,
                         unsigned grid_resolution) {
    CapacityResult res;
    res.budget = budget;
    res.grid_resolution = grid_resolution;

    const auto& verts = env.vertices();
    const EnvelopeVertex& pk = env.peak();

    if (budget < verts.front().cost) {
        // nothing affordable on the curve; transmit nothing
        res.rate = 0.0;
        res.lambda = 1.0;
        res.input0 = points[verts.front().point_index].input;
        res.input1 = res.input0;
        res.randomness_used = 0.0;
        res.constraint_active = true;
        return res;
    }

    const double target = std::min(budget, pk.cost);
    res.constraint_active = budget < pk.cost;

    // locate target on the hull
    std::size_t hi = 0;
    while (hi < verts.size() && verts[hi].cost < target) ++hi;
    if (hi < verts.size() && verts[hi].cost == target) {
        const auto& v = verts[hi];
        res.rate = v.gain;
        res.lambda = 1.0;
        res.input0 = points[v.point_index].input;
        res.input1 = res.input0;
        res.randomness_used = v.cost;
        return res;
    }
    const EnvelopeVertex& a = verts[hi - 1];
    const EnvelopeVertex& b = verts[hi];
    const double lam = (b.cost - target) / (b.cost - a.cost);
    res.rate = lam * a.gain + (1.0 - lam) * b.gain;
    res.lambda = lam;
    res.input0 = points[a.point_index].input;
    res.input1 = points[b.point_index].input;
    res.randomness_used = lam * a.cost + (1.0 - lam) * b.cost;
    return res;
}

}  // namespace

CapacityResult secrecy_capacity(const WiretapChannel& ch, double budget,
                                unsigned grid_resolution, unsigned threads) {
    require(budget >= 0.0, "randomness budget must be nonnegative");
    const auto points = rate_curve(ch, grid_resolution, threads);
    const ConcaveEnvelope env(points);
    auto res = decompose(points, env, budget, grid_resolution);
    res.rate = std::max(0.0, res.rate);
    return res;
}

double achievable_rate_renyi(const WiretapChannel& ch, const DiscreteDistribution& u_r,
                             unsigned n, unsigned grid_resolution, double margin,
                             unsigned threads) {
    require(n >= 1, "block length must be >= 1");
    const double budget = std::max(0.0, renyi2(u_r) / n - margin);
    return secrecy_capacity(ch, budget, grid_resolution, threads).rate;
}

}  // namespace wrl
