#pragma once

// Rate-limited secrecy capacity via the sampled rate curve and its upper
// concave envelope. The optimum decomposes into a two-point time-sharing
// mixture; that is the full generality needed here since the time-sharing
// auxiliary takes at most two values.

#include <cstddef>
#include <limits>
#include <vector>

#include "wrl/channel.hpp"
#include "wrl/distribution.hpp"

namespace wrl {

struct RateCurvePoint {
    double randomness_cost;  // I(X;Z) at this input, bits
    double secrecy_gain;     // I(X;Y) - I(X;Z), bits
    DiscreteDistribution input;
};

// One point per simplex grid input, ordered by grid enumeration.
std::vector<RateCurvePoint> rate_curve(const WiretapChannel& ch,
                                       unsigned grid_resolution, unsigned threads = 1);

struct EnvelopeVertex {
    double cost;
    double gain;
    std::size_t point_index;  // generating point in the input list
};

// Least concave majorant of the points as a function of randomness cost.
class ConcaveEnvelope {
public:
    explicit ConcaveEnvelope(const std::vector<RateCurvePoint>& points);

    const std::vector<EnvelopeVertex>& vertices() const { return v_; }

    // Envelope value; cost is clamped to [min cost, max cost].
    double value_at(double cost) const;

    // Leftmost vertex attaining the maximum gain.
    const EnvelopeVertex& peak() const { return v_[peak_]; }

private:
    std::vector<EnvelopeVertex> v_;
    std::size_t peak_ = 0;
};

struct CapacityResult {
    double rate = 0.0;         // bits/use
    double lambda = 1.0;       // time-share weight on input0
    DiscreteDistribution input0 = DiscreteDistribution::point_mass(1, 0);
    DiscreteDistribution input1 = DiscreteDistribution::point_mass(1, 0);
    double randomness_used = 0.0;
    bool constraint_active = false;
    double budget = 0.0;       // echoed; +inf for unconstrained
    unsigned grid_resolution = 0;
};

inline constexpr double kInfiniteBudget = std::numeric_limits<double>::infinity();

// Maximum secrecy rate subject to randomness cost <= budget, over two-point
// mixtures of grid inputs. Ties resolve toward the smallest randomness use.
CapacityResult secrecy_capacity(const WiretapChannel& ch, double budget,
                                unsigned grid_resolution, unsigned threads = 1);

// Achievable rate when randomization weights are u_r: the same maximization
// with budget (1/n) R2(u_r) minus a strict-inequality margin.
double achievable_rate_renyi(const WiretapChannel& ch, const DiscreteDistribution& u_r,
                             unsigned n, unsigned grid_resolution,
                             double margin = 1e-9, unsigned threads = 1);

}  // namespace wrl
