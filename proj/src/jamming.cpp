#include "wrl/jamming.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wrl/common.hpp"
#include "wrl/randomness.hpp"
#include "wrl/rng.hpp"

namespace wrl {

double max_jamming_power(double sigma2, double entropy_bits) {
    require(sigma2 > 0.0, "noise variance must be positive");
    require(entropy_bits >= 0.0, "entropy must be nonnegative");
    return sigma2 * (std::exp2(2.0 * entropy_bits) - 1.0);
}

double displayed_power_bound(double sigma2, double entropy_bits) {
    require(sigma2 > 0.0, "noise variance must be positive");
    require(entropy_bits >= 0.0, "entropy must be nonnegative");
    return sigma2 * std::exp2(2.0 * entropy_bits - 1.0);
}

JammingScenario::JammingScenario(double sigma2_, double entropy_bits_)
    : sigma2(sigma2_),
      entropy_bits(entropy_bits_),
      rho_max(max_jamming_power(sigma2_, entropy_bits_)) {}

namespace {

// sup |F_a - F_b| over the pooled sample; a and b get sorted in place
double ks_two_sample(std::vector<double>& a, std::vector<double>& b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        d = std::max(d, std::fabs(ia / na - ib / nb));
    }
    return d;
}

}  // namespace

double simulate_jamming(double sigma2, double rho, unsigned n, double code_rate,
                        std::uint64_t num_samples, std::uint64_t seed) {
    require(sigma2 > 0.0, "noise variance must be positive");
    require(rho >= 0.0, "jamming power must be nonnegative");
    require(n >= 1 && num_samples >= 1, "need a block length and samples");
    const std::uint64_t words = blocks_for_rate(n, code_rate);
    if (words > max_enum()) {
        throw ResourceLimitError("jamming_codebook_words", words, max_enum());
    }
    const std::uint64_t coords = num_samples * n;
    if (coords > (std::uint64_t{1} << 26)) {
        throw ResourceLimitError("jamming_sample_coords", coords,
                                 std::uint64_t{1} << 26);
    }

    const double jam_std = std::sqrt(rho);
    const double noise_std = std::sqrt(sigma2);
    const double target_std = std::sqrt(sigma2 + rho);

    Rng book_rng(derive_seed(seed, kStreamCodebook, 0));
    std::vector<double> codebook(words * n);
    for (double& c : codebook) c = book_rng.gaussian(0.0, jam_std);

    Rng rng(derive_seed(seed, kStreamJamming, 0));
    std::vector<double> pooled(coords);
    for (std::uint64_t s = 0; s < num_samples; ++s) {
        const std::uint64_t w = rng.next_u64() & (words - 1);
        const double* word = codebook.data() + w * n;
        for (unsigned t = 0; t < n; ++t) {
            pooled[s * n + t] = word[t] + rng.gaussian(0.0, noise_std);
        }
    }

    Rng ref_rng(derive_seed(seed, kStreamReference, 0));
    std::vector<double> reference(coords);
    for (double& r : reference) r = ref_rng.gaussian(0.0, target_std);

    return ks_two_sample(pooled, reference);
}

}  // namespace wrl
