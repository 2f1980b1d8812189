#pragma once

// Seeded deterministic RNG used throughout the library.
//
// Stream derivation contract: every parallelizable unit of work (codebook c,
// trial t, ...) draws from its own generator seeded by
// derive_seed(master, domain, index). Serial and parallel runs therefore
// consume identical random sequences per unit and merge deterministically.

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace wrl {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Domain tags for derive_seed.
inline constexpr std::uint64_t kStreamCodebook = 1;
inline constexpr std::uint64_t kStreamTrial = 2;
inline constexpr std::uint64_t kStreamJamming = 3;
inline constexpr std::uint64_t kStreamReference = 4;

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t domain,
                                 std::uint64_t index) {
    std::uint64_t s = master ^ (0xd1b54a32d192ed03ULL * (domain + 1));
    s += 0x2545f4914f6cdd1dULL * index;
    return splitmix64(s);
}

// xoshiro256** with splitmix64 state expansion.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Inverse-CDF categorical sample; probs must sum to ~1.
    int sample(const double* probs, int k) {
        const double u = next_double();
        double c = 0.0;
        for (int i = 0; i < k; ++i) {
            c += probs[i];
            if (u < c) return i;
        }
        return k - 1;
    }

    // Marsaglia polar method.
    double gaussian(double mean, double stddev) {
        if (stddev <= 0.0) return mean;
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u, v, r2;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            r2 = u * u + v * v;
        } while (r2 >= 1.0 || r2 == 0.0);
        const double f = std::sqrt(-2.0 * std::log(r2) / r2);
        spare_ = v * f;
        have_spare_ = true;
        return mean + stddev * u * f;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wrl
