#pragma once

// Exact finite-alphabet information measures, all in bits (log base 2),
// with the 0*log(0) := 0 convention.

#include <cstddef>
#include <vector>

#include "wrl/channel.hpp"
#include "wrl/distribution.hpp"

namespace wrl {

double entropy_bits(const double* p, std::size_t n);
double entropy(const DiscreteDistribution& p);

// Renyi entropy of order two: -log2 sum_a p(a)^2.
double renyi2(const DiscreteDistribution& p);

// I(A;B) = H(A) + H(B) - H(A,B), clamped at zero.
double mutual_information(const JointDistribution& j);

// I = sum_u p_u(u) * I(joints[u]); |joints| must equal |p_u|.
double conditional_mutual_information(const DiscreteDistribution& p_u,
                                      const std::vector<JointDistribution>& joints);

enum class Side { receiver, eavesdropper };

// Joint distribution of (X, Y) or (X, Z) under input p_x.
JointDistribution input_output_joint(const DiscreteDistribution& p_x,
                                     const WiretapChannel& ch, Side side);

struct DegradednessResult {
    bool degraded;
    double residual;              // minimized max entrywise residual
    std::size_t ny, nz;
    std::vector<double> witness;  // row-stochastic Q (ny x nz) when degraded
};

// Tests whether W_{Z|X} = W_{Y|X} * Q for some row-stochastic Q, by solving
// the LP  min t  s.t.  |(W_Y Q - W_Z)[x,z]| <= t. Sufficient condition for
// the less-capable ordering.
DegradednessResult is_degraded(const WiretapChannel& ch, double tol = 1e-9);

struct LessCapableVerdict {
    bool holds_on_grid;         // max gap <= 1e-9 over the simplex grid
    double max_gap;             // max of I(X;Z) - I(X;Y) over the grid
    DiscreteDistribution witness;  // maximizing grid input
};

// Grid certificate, not a proof: checks I(X;Z) <= I(X;Y) on every input of
// the simplex grid with the given resolution.
LessCapableVerdict is_less_capable(const WiretapChannel& ch, unsigned grid_resolution);

// All compositions k/resolution of the probability simplex over `parts`
// symbols, enumerated in lexicographically increasing index order.
std::vector<DiscreteDistribution> simplex_grid(std::size_t parts, unsigned resolution);
std::uint64_t simplex_grid_size(std::size_t parts, unsigned resolution);

}  // namespace wrl
