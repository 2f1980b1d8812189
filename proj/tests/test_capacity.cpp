#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "wrl/capacity.hpp"
#include "wrl/info.hpp"
#include "wrl/randomness.hpp"
#include "wrl/rng.hpp"

using wrl::ConcaveEnvelope;
using wrl::DiscreteDistribution;
using wrl::RateCurvePoint;
using wrl::WiretapChannel;

namespace {

std::pair<std::vector<double>, std::vector<double>> cost_gain(
    const std::vector<RateCurvePoint>& pts) {
    std::vector<double> costs, gains;
    for (const auto& p : pts) {
        costs.push_back(p.randomness_cost);
        gains.push_back(p.secrecy_gain);
    }
    return {costs, gains};
}

}  // namespace

TEST_CASE("rate curve on the degraded BSC pair") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto pts = wrl::rate_curve(ch, 200);
    REQUIRE(pts.size() == 201);

    // point-mass inputs carry nothing
    CHECK(pts.front().randomness_cost == 0.0);
    CHECK(pts.front().secrecy_gain == 0.0);
    CHECK(pts.back().randomness_cost == 0.0);
    CHECK(pts.back().secrecy_gain == 0.0);

    // uniform input lands on the grid at index 100
    const double cost_expected = 1.0 - oracles::h_binary(0.3);
    const double gain_expected = oracles::h_binary(0.3) - oracles::h_binary(0.1);
    CHECK(pts[100].randomness_cost == doctest::Approx(cost_expected).epsilon(1e-9));
    CHECK(pts[100].secrecy_gain == doctest::Approx(gain_expected).epsilon(1e-9));
    CHECK(std::fabs(cost_expected - 0.11871) < 1e-5);
    CHECK(std::fabs(gain_expected - 0.41229) < 1e-5);

    for (const auto& p : pts) {
        CHECK(p.randomness_cost >= 0.0);
        CHECK(p.secrecy_gain >= -1e-9);
    }
}

TEST_CASE("rate curve when Z is independent of X") {
    const auto ch = WiretapChannel::from_marginals({{0.9, 0.1}, {0.1, 0.9}},
                                                   {{0.5, 0.5}, {0.5, 0.5}});
    for (const auto& p : wrl::rate_curve(ch, 40)) {
        CHECK(p.randomness_cost <= 1e-12);
    }
}

TEST_CASE("envelope edge cases") {
    const DiscreteDistribution u = DiscreteDistribution::uniform(2);
    std::vector<RateCurvePoint> one = {{0.3, 0.25, u}};
    const ConcaveEnvelope env1(one);
    REQUIRE(env1.vertices().size() == 1);
    CHECK(env1.value_at(0.0) == 0.25);
    CHECK(env1.value_at(1.0) == 0.25);

    std::vector<RateCurvePoint> two = {{0.0, 0.0, u}, {0.5, 0.4, u}};
    const ConcaveEnvelope env2(two);
    REQUIRE(env2.vertices().size() == 2);
    CHECK(env2.value_at(0.25) == doctest::Approx(0.2).epsilon(1e-12));

    CHECK_THROWS_AS(ConcaveEnvelope(std::vector<RateCurvePoint>{}), std::invalid_argument);
}

TEST_CASE("envelope dominates every sampled point and is concave") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto pts = wrl::rate_curve(ch, 150);
    const ConcaveEnvelope env(pts);
    for (const auto& p : pts) {
        CHECK(env.value_at(p.randomness_cost) >= p.secrecy_gain - 1e-12);
    }
    const auto& v = env.vertices();
    for (std::size_t i = 1; i < v.size(); ++i) {
        CHECK(v[i].cost > v[i - 1].cost);
    }
    for (std::size_t i = 2; i < v.size(); ++i) {
        const double s1 = (v[i - 1].gain - v[i - 2].gain) / (v[i - 1].cost - v[i - 2].cost);
        const double s2 = (v[i].gain - v[i - 1].gain) / (v[i].cost - v[i - 1].cost);
        CHECK(s2 <= s1 + 1e-12);
    }
    // vertices are a subset of curve points
    for (const auto& vert : v) {
        CHECK(vert.point_index < pts.size());
        CHECK(pts[vert.point_index].randomness_cost == vert.cost);
        CHECK(pts[vert.point_index].secrecy_gain == vert.gain);
    }
}

TEST_CASE("secrecy capacity endpoints on the BSC pair") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);

    const auto zero = wrl::secrecy_capacity(ch, 0.0, 200);
    CHECK(zero.rate == 0.0);
    CHECK(zero.constraint_active);

    const auto unconstrained = wrl::secrecy_capacity(ch, wrl::kInfiniteBudget, 200);
    const double closed = oracles::h_binary(0.3) - oracles::h_binary(0.1);
    CHECK(std::fabs(unconstrained.rate - closed) < 2e-3);
    CHECK_FALSE(unconstrained.constraint_active);
    CHECK(unconstrained.randomness_used ==
          doctest::Approx(1.0 - oracles::h_binary(0.3)).epsilon(1e-6));

    // budget above the peak cost matches the unconstrained value
    const auto big = wrl::secrecy_capacity(ch, 0.2, 200);
    CHECK(big.rate == unconstrained.rate);
    CHECK_FALSE(big.constraint_active);

    const auto mid = wrl::secrecy_capacity(ch, 0.05, 200);
    CHECK(mid.rate > 0.0);
    CHECK(mid.rate < unconstrained.rate);
    CHECK(mid.constraint_active);
    CHECK(mid.randomness_used <= 0.05 + 1e-9);

    CHECK_THROWS_AS(wrl::secrecy_capacity(ch, -0.1, 100), std::invalid_argument);
}

TEST_CASE("constrained capacity matches the exhaustive mixture oracle") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const unsigned res = 100;
    const auto [costs, gains] = cost_gain(wrl::rate_curve(ch, res));
    for (double budget : {0.02, 0.05, 0.08, 0.118709, 1.0}) {
        const auto oracle = oracles::brute_capacity(costs, gains, res, budget);
        const auto env = wrl::secrecy_capacity(ch, budget, res);
        CAPTURE(budget);
        // the oracle's lambda grid is a subset of the envelope's mixtures
        CHECK(oracle.rate <= env.rate + 1e-12);
        CHECK(env.rate - oracle.rate <= 2.0 / res);
    }
}

TEST_CASE("capacity is nondecreasing and concave in the budget") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    std::vector<double> rates;
    const double max_budget = 0.15;
    const int samples = 20;
    for (int i = 0; i < samples; ++i) {
        const double b = max_budget * i / (samples - 1);
        rates.push_back(wrl::secrecy_capacity(ch, b, 200).rate);
    }
    for (int i = 1; i < samples; ++i) CHECK(rates[i] >= rates[i - 1] - 1e-12);
    for (int i = 2; i < samples; ++i) {
        CHECK(rates[i] - 2 * rates[i - 1] + rates[i - 2] <= 1e-6);
    }
}

TEST_CASE("grid refinement never loses rate on nested grids") {
    const auto ch = WiretapChannel::bsc_pair(0.05, 0.2);
    for (double budget : {0.03, 0.1, 0.5}) {
        const double coarse = wrl::secrecy_capacity(ch, budget, 60).rate;
        const double fine = wrl::secrecy_capacity(ch, budget, 120).rate;
        CHECK(fine >= coarse - 1e-9);
    }
}

TEST_CASE("capacity result reproduces through the information measures") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    for (double budget : {0.03, 0.07, 0.11, 0.5}) {
        const auto res = wrl::secrecy_capacity(ch, budget, 128);
        const DiscreteDistribution p_u({res.lambda, 1.0 - res.lambda});
        std::vector<wrl::JointDistribution> jy = {
            wrl::input_output_joint(res.input0, ch, wrl::Side::receiver),
            wrl::input_output_joint(res.input1, ch, wrl::Side::receiver)};
        std::vector<wrl::JointDistribution> jz = {
            wrl::input_output_joint(res.input0, ch, wrl::Side::eavesdropper),
            wrl::input_output_joint(res.input1, ch, wrl::Side::eavesdropper)};
        const double iy = wrl::conditional_mutual_information(p_u, jy);
        const double iz = wrl::conditional_mutual_information(p_u, jz);
        CAPTURE(budget);
        CHECK(iy - iz == doctest::Approx(res.rate).epsilon(1e-9));
        CHECK(iz == doctest::Approx(res.randomness_used).epsilon(1e-9));
    }
}

TEST_CASE("deterministic results on repeated evaluation") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const auto a = wrl::secrecy_capacity(ch, 0.05, 150);
    const auto b = wrl::secrecy_capacity(ch, 0.05, 150);
    CHECK(a.rate == b.rate);
    CHECK(a.lambda == b.lambda);
    CHECK(a.randomness_used == b.randomness_used);
    CHECK(a.input0.probs() == b.input0.probs());
    CHECK(a.input1.probs() == b.input1.probs());

    // worker count does not change values
    const auto c = wrl::secrecy_capacity(ch, 0.05, 150, 8);
    CHECK(a.rate == c.rate);
    CHECK(a.randomness_used == c.randomness_used);
}

TEST_CASE("achievable rate under Renyi-limited randomization") {
    const auto ch = WiretapChannel::bsc_pair(0.1, 0.3);
    const unsigned n = 10;

    // uniform randomization: R2/n equals the nominal rate
    const double rr = 0.3;
    const auto u = DiscreteDistribution::uniform(wrl::blocks_for_rate(n, rr));
    const double via_renyi = wrl::achievable_rate_renyi(ch, u, n, 200);
    const double via_budget = wrl::secrecy_capacity(ch, rr, 200).rate;
    CHECK(via_renyi == doctest::Approx(via_budget).epsilon(1e-6));

    // a point mass has no collision entropy
    const auto pm = DiscreteDistribution::point_mass(8, 3);
    CHECK(wrl::achievable_rate_renyi(ch, pm, n, 100) == 0.0);

    // the biased source binds strictly below the unconstrained value
    const auto biased = wrl::biased_example_source(n, 0.3, 0.19);
    const double capped = wrl::achievable_rate_renyi(ch, biased, n, 200);
    const double unconstrained = wrl::secrecy_capacity(ch, wrl::kInfiniteBudget, 200).rate;
    CHECK(capped > 0.0);
    CHECK(capped < unconstrained - 1e-3);
    const double r2_rate = wrl::renyi2(biased) / n;
    const double h_rate = wrl::entropy(biased) / n;
    CHECK(r2_rate < 1.0 - oracles::h_binary(0.3));
    CHECK(h_rate > 1.0 - oracles::h_binary(0.3));
}
