#pragma once

// Cooperative jamming under a limited randomness rate: the induced Gaussian
// noise power cap and a codebook-noise simulation checking how close the
// jammer-plus-noise mixture gets to the target Gaussian.

#include <cstdint>

namespace wrl {

// Inverts the resolvability rate (1/2) log2(1 + rho/sigma2) = H_R:
// rho = sigma2 * (2^{2 H_R} - 1).
double max_jamming_power(double sigma2, double entropy_bits);

// Alternative reading sigma2 * 2^{2 H_R - 1}; kept for the CLI's
// side-by-side comparison of the two candidate formulas.
double displayed_power_bound(double sigma2, double entropy_bits);

struct JammingScenario {
    double sigma2;
    double entropy_bits;
    double rho_max;  // max_jamming_power(sigma2, entropy_bits)

    JammingScenario(double sigma2_, double entropy_bits_);
};

// Draws a Gaussian codebook of 2^ceil(n * code_rate) words with per-word
// average power rho, forms jammer-plus-noise samples, and returns the
// two-sample Kolmogorov-Smirnov statistic of the pooled coordinates against
// equally many N(0, sigma2 + rho) draws. Seed-deterministic.
double simulate_jamming(double sigma2, double rho, unsigned n, double code_rate,
                        std::uint64_t num_samples, std::uint64_t seed);

}  // namespace wrl
