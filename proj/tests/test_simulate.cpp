#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wrl/common.hpp"
#include "wrl/simulate.hpp"

using wrl::CodeParams;
using wrl::DecoderKind;
using wrl::DiscreteDistribution;
using wrl::WiretapChannel;
using wrl::WiretapCode;

namespace {

WiretapCode binary_code(const WiretapChannel& ch, unsigned n, std::uint64_t m,
                        std::uint64_t kr, std::uint64_t seed) {
    const auto p_u = DiscreteDistribution::point_mass(1, 0);
    const std::vector<DiscreteDistribution> p_xgu = {DiscreteDistribution::uniform(2)};
    return wrl::build_random_code(ch, p_u, p_xgu,
                                  CodeParams::from_counts(n, 1, m, kr, seed));
}

bool all_words_distinct(const WiretapCode& code) {
    std::vector<std::vector<std::uint8_t>> words;
    for (std::uint64_t j = 0; j < code.params.m; ++j) {
        for (std::uint64_t k = 0; k < code.params.kr; ++k) {
            const auto w = code.x_word(0, j, k);
            words.emplace_back(w.begin(), w.end());
        }
    }
    std::sort(words.begin(), words.end());
    return std::adjacent_find(words.begin(), words.end()) == words.end();
}

}  // namespace

TEST_CASE("ml decoding inverts a noiseless main channel") {
    const auto ch = WiretapChannel::bsc_pair(0.0, 0.3);
    const auto code = binary_code(ch, 8, 2, 2, 41);
    REQUIRE(all_words_distinct(code));
    for (std::uint64_t j = 0; j < 2; ++j) {
        for (std::uint64_t k = 0; k < 2; ++k) {
            const auto y = code.x_word(0, j, k);
            const auto d = wrl::decode_ml(code, ch, y);
            CHECK_FALSE(d.erased);
            CHECK(d.j == j);
            CHECK(d.k == k);
        }
    }
}

TEST_CASE("single-codeword code always decodes to the first index") {
    const auto ch = WiretapChannel::bsc_pair(0.2, 0.3);
    const auto code = binary_code(ch, 6, 1, 1, 3);
    const std::vector<std::uint8_t> y = {1, 0, 1, 1, 0, 0};
    const auto d = wrl::decode_ml(code, ch, y);
    CHECK_FALSE(d.erased);
    CHECK(d.i == 0);
    CHECK(d.j == 0);
    CHECK(d.k == 0);
}

TEST_CASE("duplicate cloud centers always erase the typicality decoder") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto p_u = DiscreteDistribution::point_mass(1, 0);
    const std::vector<DiscreteDistribution> p_xgu = {DiscreteDistribution::uniform(2)};
    // m0 = 2 with |U| = 1 makes both cloud words identical
    const auto code = wrl::build_random_code(ch, p_u, p_xgu,
                                             CodeParams::from_counts(8, 2, 2, 2, 5));
    std::vector<std::uint8_t> y(8, 0);
    for (int trial = 0; trial < 20; ++trial) {
        for (auto& s : y) s = (trial * 31 + &s - y.data()) & 1;
        CHECK(wrl::decode_typicality(code, ch, y, 0.1).erased);
    }
}

TEST_CASE("ml exact error never exceeds the typicality decoder's") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    for (std::uint64_t seed : {1ull, 7ull, 19ull}) {
        const auto code = binary_code(ch, 6, 2, 2, seed);
        const auto p_ur = DiscreteDistribution::uniform(2);
        const auto ml = wrl::estimate_pe(code, ch, p_ur, DecoderKind::ml, 0.0, 1, 0);
        REQUIRE(ml.exact);
        for (double eps : {0.02, 0.05, 0.1}) {
            const auto typ =
                wrl::estimate_pe(code, ch, p_ur, DecoderKind::typicality, eps, 1, 0);
            REQUIRE(typ.exact);
            CAPTURE(seed);
            CAPTURE(eps);
            CHECK(ml.pe <= typ.pe + 1e-12);
        }
    }
}

TEST_CASE("leakage vanishes when the eavesdropper sees noise") {
    const auto ch = WiretapChannel::from_marginals({{0.9, 0.1}, {0.1, 0.9}},
                                                   {{0.5, 0.5}, {0.5, 0.5}});
    const auto code = binary_code(ch, 6, 2, 4, 11);
    const auto rep = wrl::exact_leakage(code, ch, DiscreteDistribution::uniform(4));
    CHECK(rep.leakage_bits == 0.0);
    CHECK(rep.vd == 0.0);
}

TEST_CASE("a single message leaks nothing") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto code = binary_code(ch, 6, 1, 4, 13);
    const auto rep = wrl::exact_leakage(code, ch, DiscreteDistribution::uniform(4));
    CHECK(rep.leakage_bits == 0.0);
    CHECK(rep.vd == 0.0);
}

TEST_CASE("exact leakage agrees with the brute-force path") {
    const auto bsc = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto skew = WiretapChannel::from_marginals({{0.85, 0.15}, {0.2, 0.8}},
                                                     {{0.7, 0.3}, {0.4, 0.6}});
    for (const auto* ch : {&bsc, &skew}) {
        for (unsigned n : {2u, 4u, 6u}) {
            for (std::uint64_t m : {2ull, 4ull}) {
                for (std::uint64_t kr : {2ull, 4ull}) {
                    for (std::uint64_t seed : {7ull, 8ull}) {
                        const auto code = binary_code(*ch, n, m, kr, seed);
                        const auto u = DiscreteDistribution::uniform(kr);
                        std::vector<double> w(kr, 1.0);
                        w[0] = double(kr);  // lopsided randomization
                        const auto b = DiscreteDistribution(std::move(w));
                        for (const auto* p_ur : {&u, &b}) {
                            const auto fast = wrl::exact_leakage(code, *ch, *p_ur);
                            const auto brute = oracles::brute_leakage(code, *ch, *p_ur);
                            CAPTURE(n);
                            CAPTURE(m);
                            CAPTURE(kr);
                            CAPTURE(seed);
                            CHECK(fast.leakage_bits ==
                                  doctest::Approx(brute.leakage_bits).epsilon(1e-9));
                            CHECK(fast.vd == doctest::Approx(brute.vd).epsilon(1e-9));
                            CHECK(fast.leakage_bits <=
                                  wrl::leakage_bound_from_vd(fast.vd, m) + 1e-9);
                            CHECK(fast.leakage_bits <= std::log2(double(m)) + 1e-9);
                            CHECK(fast.vd >= 0.0);
                            CHECK(fast.vd <= 2.0);
                            CHECK(fast.leakage_bits_joint == fast.leakage_bits);
                            CHECK(fast.vd_joint == fast.vd);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("exact leakage exercises the wide kernels at larger n") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto code = binary_code(ch, 14, 2, 2, 17);  // |Z|^14 = 16384
    const auto rep = wrl::exact_leakage(code, ch, DiscreteDistribution::uniform(2));
    const auto brute = oracles::brute_leakage(code, ch, DiscreteDistribution::uniform(2));
    CHECK(rep.leakage_bits == doctest::Approx(brute.leakage_bits).epsilon(1e-9));
    CHECK(rep.vd == doctest::Approx(brute.vd).epsilon(1e-9));
}

TEST_CASE("conditioned and joint leakage for multi-cloud codes") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto p_u = DiscreteDistribution::uniform(2);
    const std::vector<DiscreteDistribution> p_xgu = {
        DiscreteDistribution({0.8, 0.2}), DiscreteDistribution({0.2, 0.8})};
    const auto code = wrl::build_random_code(ch, p_u, p_xgu,
                                             CodeParams::from_counts(6, 2, 2, 2, 23));
    const auto rep = wrl::exact_leakage(code, ch, DiscreteDistribution::uniform(2));
    CHECK(rep.leakage_bits >= 0.0);
    CHECK(rep.leakage_bits_joint >= 0.0);
    CHECK(rep.leakage_bits <= 1.0 + 1e-9);
    CHECK(rep.leakage_bits_joint <= 1.0 + 1e-9);
    CHECK(rep.vd_joint <= 2.0);
}

TEST_CASE("frozen dual-path instance") {
    // n=4, (BSC(0.1), BSC(0.3)), M=2, Kr=4, seed 7, uniform randomization
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto code = binary_code(ch, 4, 2, 4, 7);
    const auto rep = wrl::exact_leakage(code, ch, DiscreteDistribution::uniform(4));
    const auto brute = oracles::brute_leakage(code, ch, DiscreteDistribution::uniform(4));
    CHECK(rep.leakage_bits == doctest::Approx(brute.leakage_bits).epsilon(1e-12));
    MESSAGE("frozen candidate leakage=", rep.leakage_bits, " vd=", rep.vd);
}

TEST_CASE("leakage bound from variational distance") {
    CHECK(wrl::leakage_bound_from_vd(0.0, 8) == 0.0);
    CHECK(wrl::leakage_bound_from_vd(2.0, 8) == doctest::Approx(3.0));
    CHECK(wrl::leakage_bound_from_vd(0.7, 16) == doctest::Approx(4.0));
    CHECK(wrl::leakage_bound_from_vd(0.5, 4) == doctest::Approx(0.5 * 2.0 + 1.0));
    const double v = 0.25;
    const double hb = -v * std::log2(v) - (1 - v) * std::log2(1 - v);
    CHECK(wrl::leakage_bound_from_vd(v, 4) == doctest::Approx(v * 2.0 + hb).epsilon(1e-12));
    CHECK_THROWS_AS(wrl::leakage_bound_from_vd(-0.1, 4), std::invalid_argument);
    CHECK_THROWS_AS(wrl::leakage_bound_from_vd(2.1, 4), std::invalid_argument);
}

TEST_CASE("noiseless distinct codewords decode without error") {
    const auto ch = WiretapChannel::bsc_pair(0.0, 0.3);
    const auto code = binary_code(ch, 8, 2, 2, 41);
    REQUIRE(all_words_distinct(code));
    const auto pe =
        wrl::estimate_pe(code, ch, DiscreteDistribution::uniform(2), DecoderKind::ml,
                         0.0, 1, 0);
    CHECK(pe.exact);
    CHECK(pe.pe == 0.0);
}

TEST_CASE("rates far above capacity force large error") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    // R + Rr = 1.25 bits against I(X;Y) ~ 0.53
    const auto code = binary_code(ch, 8, 64, 16, 29);
    const auto pe =
        wrl::estimate_pe(code, ch, DiscreteDistribution::uniform(16), DecoderKind::ml,
                         0.0, 1, 0);
    CHECK(pe.exact);
    CHECK(pe.pe > 0.4);
}

TEST_CASE("Monte Carlo branch matches known truths") {
    // 8-ary outputs at n=7 put |Y|^n past the enumeration guard
    const auto p_u = DiscreteDistribution::point_mass(1, 0);
    const std::vector<DiscreteDistribution> p_xgu = {DiscreteDistribution::uniform(2)};
    const auto p_ur = DiscreteDistribution::uniform(2);
    const auto params = CodeParams::from_counts(7, 1, 2, 2, 61);

    // noiseless wide channel: y copies x, so distinct words decode exactly
    const auto clean = WiretapChannel::from_marginals(
        {{1, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0, 0}},
        {{0.7, 0.3}, {0.3, 0.7}});
    const auto code = wrl::build_random_code(clean, p_u, p_xgu, params);
    REQUIRE(all_words_distinct(code));
    const auto mc =
        wrl::estimate_pe(code, clean, p_ur, DecoderKind::ml, 0.0, 20000, 77);
    CHECK_FALSE(mc.exact);
    CHECK(mc.trials == 20000);
    CHECK(mc.pe == 0.0);

    // uninformative wide channel: ML ties resolve to (0,0,0), so the true
    // error is exactly 1 - 1/m = 0.5
    const auto blind = WiretapChannel::from_marginals(
        {std::vector<double>(8, 0.125), std::vector<double>(8, 0.125)},
        {{0.7, 0.3}, {0.3, 0.7}});
    const auto code2 = wrl::build_random_code(blind, p_u, p_xgu, params);
    const auto mc2 =
        wrl::estimate_pe(code2, blind, p_ur, DecoderKind::ml, 0.0, 20000, 78);
    CHECK_FALSE(mc2.exact);
    CHECK(std::fabs(mc2.pe - 0.5) < 0.02);
    CHECK(mc2.ci_halfwidth > 0.0);
    CHECK(mc2.ci_halfwidth < 0.02);
}

TEST_CASE("resolvability experiment is deterministic and thread-stable") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto p_u = DiscreteDistribution::point_mass(1, 0);
    const std::vector<DiscreteDistribution> p_xgu = {DiscreteDistribution::uniform(2)};
    const auto p_ur = DiscreteDistribution::uniform(4);

    const auto a = wrl::resolvability_experiment(ch, p_u, p_xgu, 6, 2, p_ur, 24, 33, 1);
    const auto b = wrl::resolvability_experiment(ch, p_u, p_xgu, 6, 2, p_ur, 24, 33, 4);
    CHECK(a.per_codebook == b.per_codebook);
    CHECK(a.mean_vd == b.mean_vd);
    CHECK(a.ci_halfwidth == b.ci_halfwidth);
    CHECK(a.mean_vd >= 0.0);
    CHECK(a.mean_vd <= 2.0);
    for (double v : a.per_codebook) {
        CHECK(v >= 0.0);
        CHECK(v <= 2.0);
    }
}

TEST_CASE("excess uniform randomization drives the distance down with n") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto p_u = DiscreteDistribution::point_mass(1, 0);
    const std::vector<DiscreteDistribution> p_xgu = {DiscreteDistribution::uniform(2)};
    // Rr = 0.5 comfortably above I(X;Z) ~ 0.119
    std::vector<double> means;
    for (unsigned n : {4u, 8u}) {
        const auto p_ur = DiscreteDistribution::uniform(wrl::blocks_for_rate(n, 0.5));
        means.push_back(
            wrl::resolvability_experiment(ch, p_u, p_xgu, n, 2, p_ur, 40, 97).mean_vd);
    }
    CHECK(means[1] < means[0]);
}

TEST_CASE("simulation report is assembled consistently") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto p_u = DiscreteDistribution::point_mass(1, 0);
    const std::vector<DiscreteDistribution> p_xgu = {DiscreteDistribution::uniform(2)};
    const auto params = CodeParams::from_rates(6, 0.0, 1.0 / 6.0, 0.5, 71);
    const auto rep = wrl::simulate_codebook(ch, p_u, p_xgu, params,
                                            DiscreteDistribution::uniform(params.kr),
                                            DecoderKind::ml, 0.0, 100, 5);
    CHECK(rep.n == 6);
    CHECK(rep.exact_pe);
    CHECK(rep.leakage_bits <= std::log2(double(params.m)) + 1e-9);
    CHECK(rep.leakage_bits <= wrl::leakage_bound_from_vd(rep.vd, params.m) + 1e-9);
}

TEST_CASE("enumeration guard names the limiting quantity") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto code = binary_code(ch, 8, 2, 2, 1);
    try {
        const auto big = binary_code(ch, 24, 2, 2, 1);  // |Z|^24 = 2^24 > guard
        (void)wrl::exact_leakage(big, ch, DiscreteDistribution::uniform(2));
        FAIL("expected ResourceLimitError");
    } catch (const wrl::ResourceLimitError& e) {
        CHECK(e.quantity() == "z_enumeration");
    }
    (void)code;
}
