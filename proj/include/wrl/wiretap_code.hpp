#pragma once

// Random superposition wiretap codebooks: m0 cloud centers drawn i.i.d. from
// p_U, and m * kr satellite words per cloud drawn i.i.d. from p_{X|U}.
// Generation order is fixed as (i, then j, then k, then position) from a
// single stream seeded by params.seed, so tables regenerate bit-for-bit.

#include <cstdint>
#include <span>
#include <vector>

#include "wrl/channel.hpp"
#include "wrl/distribution.hpp"
#include "wrl/randomness.hpp"
#include "wrl/rng.hpp"

namespace wrl {

struct CodeParams {
    unsigned n = 1;
    double r0 = 0.0, r = 0.0, rr = 0.0;  // bits/use
    std::uint64_t seed = 0;
    std::uint64_t m0 = 1, m = 1, kr = 1;

    static CodeParams from_rates(unsigned n, double r0, double r, double rr,
                                 std::uint64_t seed);
    // counts must be powers of two
    static CodeParams from_counts(unsigned n, std::uint64_t m0, std::uint64_t m,
                                  std::uint64_t kr, std::uint64_t seed);
};

struct WiretapCode {
    CodeParams params;
    std::size_t nu = 1, nx = 1;
    DiscreteDistribution p_u;
    std::vector<DiscreteDistribution> p_x_given_u;
    std::vector<std::uint8_t> u_words;  // m0 rows of n symbols
    std::vector<std::uint8_t> x_words;  // (((i*m + j)*kr + k) * n) layout

    std::span<const std::uint8_t> u_word(std::uint64_t i) const {
        return {u_words.data() + i * params.n, params.n};
    }
    std::span<const std::uint8_t> x_word(std::uint64_t i, std::uint64_t j,
                                         std::uint64_t k) const {
        const std::uint64_t row = (i * params.m + j) * params.kr + k;
        return {x_words.data() + row * params.n, params.n};
    }
};

WiretapCode build_random_code(const WiretapChannel& ch, const DiscreteDistribution& p_u,
                              const std::vector<DiscreteDistribution>& p_x_given_u,
                              const CodeParams& params);

// Stored word for explicit indices.
std::span<const std::uint8_t> encode(const WiretapCode& code, std::uint64_t i,
                                     std::uint64_t j, std::uint64_t k);

// Randomization index sampled from p_ur.
std::span<const std::uint8_t> encode_sampled(const WiretapCode& code, std::uint64_t i,
                                             std::uint64_t j,
                                             const DiscreteDistribution& p_ur, Rng& rng);

// Randomization index produced by the uniformization extractor from a raw
// source sequence; composes the uniformize and randomize encoder stages.
std::span<const std::uint8_t> encode_extracted(const WiretapCode& code, std::uint64_t i,
                                               std::uint64_t j, const Extractor& ex,
                                               std::span<const int> r_seq);

}  // namespace wrl
