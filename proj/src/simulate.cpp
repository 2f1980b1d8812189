#include "wrl/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wrl/common.hpp"
#include "wrl/kernels.hpp"
#include "wrl/parallel.hpp"

namespace wrl {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > (std::uint64_t{1} << 62) / base) return std::uint64_t{1} << 63;
        r *= base;
    }
    return r;
}

// Output distribution of the memoryless kernel driven by one codeword,
// indexed as a big-endian base-|alphabet| number over positions.
void product_distribution(std::span<const std::uint8_t> word,
                          const std::vector<std::vector<double>>& kernel,
                          std::vector<double>& out, std::vector<double>& tmp) {
    const std::size_t k = kernel[0].size();
    out.assign(1, 1.0);
    for (std::uint8_t sym : word) {
        tmp.resize(out.size() * k);
        kernels::kron_expand(out.data(), out.size(), kernel[sym].data(), k,
                             tmp.data());
        std::swap(out, tmp);
    }
}

double word_log2_likelihood(std::span<const std::uint8_t> word,
                            std::span<const std::uint8_t> y,
                            const std::vector<double>& log_kernel, std::size_t ny) {
    double s = 0.0;
    for (std::size_t t = 0; t < word.size(); ++t) {
        s += log_kernel[word[t] * ny + y[t]];
    }
    return s;
}

std::vector<double> log2_kernel(const std::vector<std::vector<double>>& kernel) {
    const std::size_t rows = kernel.size();
    const std::size_t cols = kernel[0].size();
    std::vector<double> lw(rows * cols);
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t b = 0; b < cols; ++b) {
            lw[a * cols + b] = kernel[a][b] > 0.0
                                   ? std::log2(kernel[a][b])
                                   : -std::numeric_limits<double>::infinity();
        }
    }
    return lw;
}

bool counts_typical(const std::vector<double>& expected,
                    const std::vector<unsigned>& counts, unsigned n, double tol) {
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (expected[i] == 0.0) {
            if (counts[i] > 0) return false;
            continue;
        }
        const double freq = static_cast<double>(counts[i]) / n;
        if (std::fabs(freq - expected[i]) > tol) return false;
    }
    return true;
}

}  // namespace

DecodeResult decode_ml(const WiretapCode& code, const WiretapChannel& ch,
                       std::span<const std::uint8_t> y) {
    require(y.size() == code.params.n, "received word length mismatch");
    const auto lw = log2_kernel(ch.y_kernel());
    double best = -std::numeric_limits<double>::infinity();
    DecodeResult res;
    for (std::uint64_t i = 0; i < code.params.m0; ++i) {
        for (std::uint64_t j = 0; j < code.params.m; ++j) {
            for (std::uint64_t k = 0; k < code.params.kr; ++k) {
                const double ll =
                    word_log2_likelihood(code.x_word(i, j, k), y, lw, ch.ny());
                if (ll > best) {
                    best = ll;
                    res = DecodeResult{false, i, j, k};
                }
            }
        }
    }
    return res;
}

DecodeResult decode_typicality(const WiretapCode& code, const WiretapChannel& ch,
                               std::span<const std::uint8_t> y, double epsilon) {
    require(epsilon > 0.0, "epsilon must be positive");
    require(y.size() == code.params.n, "received word length mismatch");
    const unsigned n = code.params.n;
    const std::size_t nu = code.nu, nx = code.nx, ny = ch.ny();

    std::vector<double> p_y_given_u(nu * ny, 0.0);
    for (std::size_t u = 0; u < nu; ++u) {
        for (std::size_t x = 0; x < nx; ++x) {
            const double w = code.p_x_given_u[u][x];
            if (w == 0.0) continue;
            for (std::size_t yy = 0; yy < ny; ++yy) {
                p_y_given_u[u * ny + yy] += w * ch.y_given_x(x)[yy];
            }
        }
    }
    std::vector<double> exp_uy(nu * ny);
    for (std::size_t u = 0; u < nu; ++u) {
        for (std::size_t yy = 0; yy < ny; ++yy) {
            exp_uy[u * ny + yy] = code.p_u[u] * p_y_given_u[u * ny + yy];
        }
    }

    const double tol_uy = epsilon * static_cast<double>(nu * ny);
    std::uint64_t found_i = 0;
    unsigned hits = 0;
    std::vector<unsigned> counts(nu * ny);
    for (std::uint64_t i = 0; i < code.params.m0 && hits < 2; ++i) {
        std::fill(counts.begin(), counts.end(), 0u);
        const auto uw = code.u_word(i);
        for (unsigned t = 0; t < n; ++t) ++counts[uw[t] * ny + y[t]];
        if (counts_typical(exp_uy, counts, n, tol_uy)) {
            ++hits;
            found_i = i;
        }
    }
    if (hits != 1) return DecodeResult{true, 0, 0, 0};

    std::vector<double> exp_uxy(nu * nx * ny);
    for (std::size_t u = 0; u < nu; ++u) {
        for (std::size_t x = 0; x < nx; ++x) {
            for (std::size_t yy = 0; yy < ny; ++yy) {
                exp_uxy[(u * nx + x) * ny + yy] =
                    code.p_u[u] * code.p_x_given_u[u][x] * ch.y_given_x(x)[yy];
            }
        }
    }
    const double tol_uxy = epsilon * static_cast<double>(nu * nx * ny);
    const auto uw = code.u_word(found_i);
    std::vector<unsigned> counts3(nu * nx * ny);
    DecodeResult res{true, found_i, 0, 0};
    unsigned sat_hits = 0;
    for (std::uint64_t j = 0; j < code.params.m && sat_hits < 2; ++j) {
        for (std::uint64_t k = 0; k < code.params.kr && sat_hits < 2; ++k) {
            std::fill(counts3.begin(), counts3.end(), 0u);
            const auto xw = code.x_word(found_i, j, k);
            for (unsigned t = 0; t < n; ++t) {
                ++counts3[(uw[t] * nx + xw[t]) * ny + y[t]];
            }
            if (counts_typical(exp_uxy, counts3, n, tol_uxy)) {
                ++sat_hits;
                res = DecodeResult{false, found_i, j, k};
            }
        }
    }
    if (sat_hits != 1) return DecodeResult{true, 0, 0, 0};
    return res;
}

LeakageReport exact_leakage(const WiretapCode& code, const WiretapChannel& ch,
                            const DiscreteDistribution& p_ur) {
    require(p_ur.size() == code.params.kr, "randomization law must have kr symbols");
    const unsigned n = code.params.n;
    const std::uint64_t zp = ipow(ch.nz(), n);
    if (zp > max_enum()) throw ResourceLimitError("z_enumeration", zp, max_enum());
    const std::uint64_t m0 = code.params.m0, m = code.params.m, kr = code.params.kr;
    if (m0 * m * kr > kMaxEnumWork / zp) {
        throw ResourceLimitError("leakage_work", m0 * m * kr, kMaxEnumWork / zp);
    }
    const std::uint64_t mem = (m0 > 1 ? 2 * m : m) * zp;
    if (mem > (std::uint64_t{1} << 24)) {
        throw ResourceLimitError("leakage_memory", mem, std::uint64_t{1} << 24);
    }

    std::vector<std::vector<double>> cond(m);
    std::vector<std::vector<double>> joint;
    if (m0 > 1) joint.assign(m, std::vector<double>(zp, 0.0));
    std::vector<double> tmp, word_dist, pz(zp);
    const double inv_m = 1.0 / static_cast<double>(m);
    const double inv_m0 = 1.0 / static_cast<double>(m0);

    LeakageReport rep;
    for (std::uint64_t i = 0; i < m0; ++i) {
        for (std::uint64_t j = 0; j < m; ++j) {
            cond[j].assign(zp, 0.0);
            for (std::uint64_t k = 0; k < kr; ++k) {
                if (p_ur[k] == 0.0) continue;
                product_distribution(code.x_word(i, j, k), ch.z_kernel(), word_dist, tmp);
                kernels::axpy(p_ur[k], word_dist.data(), cond[j].data(), zp);
            }
        }
        std::fill(pz.begin(), pz.end(), 0.0);
        for (std::uint64_t j = 0; j < m; ++j) {
            kernels::axpy(inv_m, cond[j].data(), pz.data(), zp);
        }
        double leak_i = 0.0, vd_i = 0.0;
        for (std::uint64_t j = 0; j < m; ++j) {
            leak_i += inv_m * kernels::sum_plog2_ratio(cond[j].data(), pz.data(), zp);
            vd_i += inv_m * kernels::sum_abs_diff(cond[j].data(), pz.data(), zp);
        }
        rep.leakage_bits += inv_m0 * leak_i;
        rep.vd += inv_m0 * vd_i;
        if (m0 > 1) {
            for (std::uint64_t j = 0; j < m; ++j) {
                kernels::axpy(inv_m0, cond[j].data(), joint[j].data(), zp);
            }
        }
    }
    rep.leakage_bits = std::max(0.0, rep.leakage_bits);

    if (m0 == 1) {
        rep.leakage_bits_joint = rep.leakage_bits;
        rep.vd_joint = rep.vd;
    } else {
        std::fill(pz.begin(), pz.end(), 0.0);
        for (std::uint64_t j = 0; j < m; ++j) {
            kernels::axpy(inv_m, joint[j].data(), pz.data(), zp);
        }
        for (std::uint64_t j = 0; j < m; ++j) {
            rep.leakage_bits_joint +=
                inv_m * kernels::sum_plog2_ratio(joint[j].data(), pz.data(), zp);
            rep.vd_joint += inv_m * kernels::sum_abs_diff(joint[j].data(), pz.data(), zp);
        }
        rep.leakage_bits_joint = std::max(0.0, rep.leakage_bits_joint);
    }
    return rep;
}

namespace {

constexpr double kZ95 = 1.959963984540054;

PeReport wilson_report(std::uint64_t errors, std::uint64_t trials) {
    const double nn = static_cast<double>(trials);
    const double phat = static_cast<double>(errors) / nn;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / nn;
    const double hw =
        kZ95 * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return PeReport{phat, hw, false, trials};
}

DecodeResult run_decoder(const WiretapCode& code, const WiretapChannel& ch,
                         std::span<const std::uint8_t> y, DecoderKind decoder,
                         double epsilon) {
    return decoder == DecoderKind::ml ? decode_ml(code, ch, y)
                                      : decode_typicality(code, ch, y, epsilon);
}

}  // namespace

PeReport estimate_pe(const WiretapCode& code, const WiretapChannel& ch,
                     const DiscreteDistribution& p_ur, DecoderKind decoder,
                     double epsilon, std::uint64_t trials, std::uint64_t seed) {
    require(p_ur.size() == code.params.kr, "randomization law must have kr symbols");
    const unsigned n = code.params.n;
    const std::uint64_t m0 = code.params.m0, m = code.params.m, kr = code.params.kr;
    const std::uint64_t ypow = ipow(ch.ny(), n);
    const bool exact_feasible =
        ypow <= max_enum() && m0 * m * kr <= kMaxEnumWork / ypow;

    if (exact_feasible) {
        // exact: every channel output, weighted by its probability
        std::vector<std::uint8_t> y(n, 0);
        double pe = 0.0;
        const double base_w = 1.0 / static_cast<double>(m0 * m);
        bool done = false;
        while (!done) {
            const DecodeResult d = run_decoder(code, ch, y, decoder, epsilon);
            for (std::uint64_t i = 0; i < m0; ++i) {
                for (std::uint64_t j = 0; j < m; ++j) {
                    if (!d.erased && d.j == j) continue;
                    for (std::uint64_t k = 0; k < kr; ++k) {
                        if (p_ur[k] == 0.0) continue;
                        const auto xw = code.x_word(i, j, k);
                        double prob = 1.0;
                        for (unsigned t = 0; t < n; ++t) {
                            prob *= ch.y_given_x(xw[t])[y[t]];
                        }
                        pe += base_w * p_ur[k] * prob;
                    }
                }
            }
            // odometer
            done = true;
            for (unsigned t = n; t-- > 0;) {
                if (++y[t] < ch.ny()) {
                    done = false;
                    break;
                }
                y[t] = 0;
            }
        }
        return PeReport{std::min(1.0, pe), 0.0, true, 0};
    }

    require(trials >= 1, "Monte Carlo needs at least one trial");
    std::uint64_t errors = 0;
    std::vector<std::uint8_t> y(n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, kStreamTrial, t));
        const std::uint64_t i = rng.next_u64() & (m0 - 1);
        const std::uint64_t j = rng.next_u64() & (m - 1);
        const std::uint64_t k = static_cast<std::uint64_t>(
            rng.sample(p_ur.data(), static_cast<int>(p_ur.size())));
        const auto xw = code.x_word(i, j, k);
        for (unsigned tt = 0; tt < n; ++tt) {
            const auto& row = ch.y_given_x(xw[tt]);
            y[tt] = static_cast<std::uint8_t>(
                rng.sample(row.data(), static_cast<int>(row.size())));
        }
        const DecodeResult d = run_decoder(code, ch, y, decoder, epsilon);
        if (d.erased || d.j != j) ++errors;
    }
    return wilson_report(errors, trials);
}

double leakage_bound_from_vd(double vd, std::uint64_t message_count) {
    require(vd >= 0.0 && vd <= 2.0, "variational distance must lie in [0, 2]");
    require(message_count >= 1, "message count must be >= 1");
    const double log_m = std::log2(static_cast<double>(message_count));
    if (vd <= 0.0) return 0.0;
    if (vd > 0.5) return log_m;
    const double hb = -vd * std::log2(vd) - (1.0 - vd) * std::log2(1.0 - vd);
    return vd * log_m + hb;
}

ResolvabilityResult resolvability_experiment(
    const WiretapChannel& ch, const DiscreteDistribution& p_u,
    const std::vector<DiscreteDistribution>& p_x_given_u, unsigned n,
    std::uint64_t message_count, const DiscreteDistribution& p_ur,
    unsigned num_codebooks, std::uint64_t seed, unsigned threads) {
    require(num_codebooks >= 1, "need at least one codebook");
    ResolvabilityResult res;
    res.per_codebook.assign(num_codebooks, 0.0);
    parallel_for(num_codebooks, threads, [&](std::size_t c) {
        const CodeParams params = CodeParams::from_counts(
            n, 1, message_count, p_ur.size(), derive_seed(seed, kStreamCodebook, c));
        const WiretapCode code = build_random_code(ch, p_u, p_x_given_u, params);
        res.per_codebook[c] = exact_leakage(code, ch, p_ur).vd;
    });
    double mean = 0.0;
    for (double v : res.per_codebook) mean += v;
    mean /= num_codebooks;
    double var = 0.0;
    for (double v : res.per_codebook) var += (v - mean) * (v - mean);
    var = num_codebooks > 1 ? var / (num_codebooks - 1) : 0.0;
    res.mean_vd = mean;
    res.ci_halfwidth = kZ95 * std::sqrt(var / num_codebooks);
    return res;
}

SimulationReport simulate_codebook(const WiretapChannel& ch,
                                   const DiscreteDistribution& p_u,
                                   const std::vector<DiscreteDistribution>& p_x_given_u,
                                   const CodeParams& params,
                                   const DiscreteDistribution& p_ur,
                                   DecoderKind decoder, double epsilon,
                                   std::uint64_t trials, std::uint64_t trial_seed) {
    const WiretapCode code = build_random_code(ch, p_u, p_x_given_u, params);
    const LeakageReport leak = exact_leakage(code, ch, p_ur);
    const PeReport pe = estimate_pe(code, ch, p_ur, decoder, epsilon, trials, trial_seed);
    SimulationReport rep;
    rep.n = params.n;
    rep.r0 = params.r0;
    rep.r = params.r;
    rep.rr = params.rr;
    rep.leakage_bits = leak.leakage_bits;
    rep.vd = leak.vd;
    rep.pe = pe.pe;
    rep.pe_ci = pe.ci_halfwidth;
    rep.exact_pe = pe.exact;
    rep.trials = pe.trials;
    return rep;
}

}  // namespace wrl
