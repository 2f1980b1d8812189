#pragma once

// Decoding, exact leakage, error-probability estimation, and the
// resolvability experiment for realized wiretap codes.

#include <cstdint>
#include <span>
#include <vector>

#include "wrl/channel.hpp"
#include "wrl/distribution.hpp"
#include "wrl/wiretap_code.hpp"

namespace wrl {

struct DecodeResult {
    bool erased = false;
    std::uint64_t i = 0, j = 0, k = 0;
};

// Maximum likelihood over all stored words; ties break to the smallest
// (i, j, k) lexicographically. Never erases.
DecodeResult decode_ml(const WiretapCode& code, const WiretapChannel& ch,
                       std::span<const std::uint8_t> y);

// Two-stage unique strongly-typical decoding: first the cloud index against
// (U, Y) statistics, then the satellite pair against (U, X, Y) statistics.
// Erases when no unique index exists.
DecodeResult decode_typicality(const WiretapCode& code, const WiretapChannel& ch,
                               std::span<const std::uint8_t> y, double epsilon);

struct LeakageReport {
    // Conditioned on each cloud center and averaged over clouds; equals the
    // plain quantities when m0 == 1.
    double leakage_bits = 0.0;
    double vd = 0.0;
    // Unconditioned I(M; Z^n) and V(p_{M,Z^n}, p_M p_{Z^n}).
    double leakage_bits_joint = 0.0;
    double vd_joint = 0.0;
};

// Exact enumeration of the eavesdropper's output distribution per message,
// with the uniform message prior and randomization law p_ur.
LeakageReport exact_leakage(const WiretapCode& code, const WiretapChannel& ch,
                            const DiscreteDistribution& p_ur);

struct PeReport {
    double pe = 0.0;
    double ci_halfwidth = 0.0;  // Wilson 95%; zero in exact mode
    bool exact = false;
    std::uint64_t trials = 0;
};

enum class DecoderKind { ml, typicality };

// Average error probability of the secret message. Exact enumeration over
// Y^n when it fits the guards, Monte Carlo otherwise.
PeReport estimate_pe(const WiretapCode& code, const WiretapChannel& ch,
                     const DiscreteDistribution& p_ur, DecoderKind decoder,
                     double epsilon, std::uint64_t trials, std::uint64_t seed);

// Continuity bound on leakage from the variational distance:
// vd * log2(M) + h_b(vd) for vd <= 1/2, else the trivial log2(M).
double leakage_bound_from_vd(double vd, std::uint64_t message_count);

struct ResolvabilityResult {
    double mean_vd = 0.0;
    double ci_halfwidth = 0.0;  // normal 95% across codebooks
    std::vector<double> per_codebook;
};

// Mean exact V(p_{M,Z^n}, p_M p_{Z^n}) over freshly drawn codebooks with
// m0 = 1, m messages, and randomization law p_ur. Codebook c uses the stream
// derive_seed(seed, kStreamCodebook, c).
ResolvabilityResult resolvability_experiment(
    const WiretapChannel& ch, const DiscreteDistribution& p_u,
    const std::vector<DiscreteDistribution>& p_x_given_u, unsigned n,
    std::uint64_t message_count, const DiscreteDistribution& p_ur,
    unsigned num_codebooks, std::uint64_t seed, unsigned threads = 1);

struct SimulationReport {
    unsigned n = 0;
    double r0 = 0.0, r = 0.0, rr = 0.0;
    double leakage_bits = 0.0;
    double vd = 0.0;
    double pe = 0.0;
    double pe_ci = 0.0;
    bool exact_pe = false;
    std::uint64_t trials = 0;
};

// One codebook end to end: build, exact leakage, error probability.
SimulationReport simulate_codebook(const WiretapChannel& ch,
                                   const DiscreteDistribution& p_u,
                                   const std::vector<DiscreteDistribution>& p_x_given_u,
                                   const CodeParams& params,
                                   const DiscreteDistribution& p_ur,
                                   DecoderKind decoder, double epsilon,
                                   std::uint64_t trials, std::uint64_t trial_seed);

}  // namespace wrl
