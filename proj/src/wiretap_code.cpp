#include "wrl/wiretap_code.hpp"

#include <cmath>

#include "wrl/common.hpp"

namespace wrl {

CodeParams CodeParams::from_rates(unsigned n, double r0, double r, double rr,
                                  std::uint64_t seed) {
    require(n >= 1, "block length must be >= 1");
    CodeParams p;
    p.n = n;
    p.r0 = r0;
    p.r = r;
    p.rr = rr;
    p.seed = seed;
    p.m0 = blocks_for_rate(n, r0);
    p.m = blocks_for_rate(n, r);
    p.kr = blocks_for_rate(n, rr);
    return p;
}

CodeParams CodeParams::from_counts(unsigned n, std::uint64_t m0, std::uint64_t m,
                                   std::uint64_t kr, std::uint64_t seed) {
    require(n >= 1, "block length must be >= 1");
    require(m0 >= 1 && m >= 1 && kr >= 1, "counts must be >= 1");
    require((m0 & (m0 - 1)) == 0 && (m & (m - 1)) == 0 && (kr & (kr - 1)) == 0,
            "counts must be powers of two");
    CodeParams p;
    p.n = n;
    p.seed = seed;
    p.m0 = m0;
    p.m = m;
    p.kr = kr;
    const double dn = static_cast<double>(n);
    p.r0 = std::log2(static_cast<double>(m0)) / dn;
    p.r = std::log2(static_cast<double>(m)) / dn;
    p.rr = std::log2(static_cast<double>(kr)) / dn;
    return p;
}

WiretapCode build_random_code(const WiretapChannel& ch, const DiscreteDistribution& p_u,
                              const std::vector<DiscreteDistribution>& p_x_given_u,
                              const CodeParams& params) {
    require(p_x_given_u.size() == p_u.size(),
            "p_{X|U} needs one row per U symbol");
    for (const auto& row : p_x_given_u) {
        require(row.size() == ch.nx(), "p_{X|U} rows must match the input alphabet");
    }
    require(p_u.size() <= 256 && ch.nx() <= 256, "codebook symbols stored as bytes");

    const std::uint64_t symbols =
        params.m0 * params.m * params.kr * static_cast<std::uint64_t>(params.n);
    if (symbols > kMaxCodeSymbols) {
        throw ResourceLimitError("codebook_symbols", symbols, kMaxCodeSymbols);
    }

    WiretapCode code{params, p_u.size(), ch.nx(), p_u, p_x_given_u, {}, {}};
    code.u_words.resize(params.m0 * params.n);
    code.x_words.resize(symbols);

    Rng rng(params.seed);
    for (std::uint64_t i = 0; i < params.m0; ++i) {
        for (unsigned t = 0; t < params.n; ++t) {
            code.u_words[i * params.n + t] = static_cast<std::uint8_t>(
                rng.sample(p_u.data(), static_cast<int>(p_u.size())));
        }
    }
    std::uint64_t pos = 0;
    for (std::uint64_t i = 0; i < params.m0; ++i) {
        for (std::uint64_t j = 0; j < params.m; ++j) {
            for (std::uint64_t k = 0; k < params.kr; ++k) {
                for (unsigned t = 0; t < params.n; ++t) {
                    const std::uint8_t u = code.u_words[i * params.n + t];
                    const auto& row = p_x_given_u[u];
                    code.x_words[pos++] = static_cast<std::uint8_t>(
                        rng.sample(row.data(), static_cast<int>(row.size())));
                }
            }
        }
    }
    return code;
}

std::span<const std::uint8_t> encode(const WiretapCode& code, std::uint64_t i,
                                     std::uint64_t j, std::uint64_t k) {
    require(i < code.params.m0 && j < code.params.m && k < code.params.kr,
            "codeword index out of range");
    return code.x_word(i, j, k);
}

std::span<const std::uint8_t> encode_sampled(const WiretapCode& code, std::uint64_t i,
                                             std::uint64_t j,
                                             const DiscreteDistribution& p_ur, Rng& rng) {
    require(p_ur.size() == code.params.kr,
            "randomization law must have kr symbols");
    const std::uint64_t k = static_cast<std::uint64_t>(
        rng.sample(p_ur.data(), static_cast<int>(p_ur.size())));
    return encode(code, i, j, k);
}

std::span<const std::uint8_t> encode_extracted(const WiretapCode& code, std::uint64_t i,
                                               std::uint64_t j, const Extractor& ex,
                                               std::span<const int> r_seq) {
    require(ex.num_bins() == code.params.kr,
            "extractor bin count must equal kr");
    return encode(code, i, j, ex.extract(r_seq));
}

}  // namespace wrl
