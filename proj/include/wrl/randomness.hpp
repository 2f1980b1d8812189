#pragma once

// Local randomness: the i.i.d. source model, the biased benchmark source,
// and the uniformization extractor with exact distance accounting.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "wrl/distribution.hpp"

namespace wrl {

struct RandomnessSource {
    DiscreteDistribution p;  // per-symbol law, i.i.d. across uses

    double entropy_bits() const;
    double renyi2_bits() const;
};

// Benchmark source over {0 .. 2^ceil(nR)-1}: symbol 0 carries mass 2^(-n a R),
// the rest share the remainder equally. alpha must lie in (0, 1/2).
DiscreteDistribution biased_example_source(unsigned n, double alpha, double R);

// Closed forms for the same source; usable for n far beyond what can be
// materialized as a vector.
double biased_example_entropy(unsigned n, double alpha, double R);
double biased_example_renyi2(unsigned n, double alpha, double R);

// V(p, q) = sum |p - q|, in [0, 2].
double variational_distance(const double* p, const double* q, std::size_t n);
double variational_distance(const DiscreteDistribution& p, const DiscreteDistribution& q);

// Deterministic map from length-n source sequences to bins {0..K-1}.
// Sequences index as big-endian base-|R| numbers.
class Extractor {
public:
    Extractor(std::size_t alphabet, unsigned n, std::size_t num_bins,
              std::vector<std::uint32_t> assignment, double achieved_distance);

    std::size_t alphabet() const { return alphabet_; }
    unsigned n() const { return n_; }
    std::size_t num_bins() const { return num_bins_; }
    double achieved_distance() const { return distance_; }
    const std::vector<std::uint32_t>& assignment() const { return map_; }

    std::size_t extract(std::span<const int> seq) const;
    std::size_t extract_index(std::uint64_t sequence_index) const;

    // Exact output distribution over bins, accumulated in sequence order
    // from the given per-symbol law.
    std::vector<double> bin_masses(const DiscreteDistribution& p) const;

private:
    std::size_t alphabet_;
    unsigned n_;
    std::size_t num_bins_;
    std::vector<std::uint32_t> map_;
    double distance_;
};

// K = 2^ceil(n * rate_bits). Greedy balancing: sequences sorted by
// probability descending (ties in lexicographic order) are assigned to the
// currently lightest bin. Distance to uniform is recomputed exactly from the
// finished assignment.
Extractor build_extractor(const RandomnessSource& src, unsigned n, double rate_bits);

// Count 2^ceil(n * rate_bits) with a snap tolerance of 1e-9 on the exponent.
std::uint64_t blocks_for_rate(unsigned n, double rate_bits);

// Plain-text export: header "n=<n> K=<K> distance=<v>", then one line per
// sequence "<digits> <bin>" in lexicographic order. Round-trips bit-exactly.
void write_extractor(const Extractor& ex, std::ostream& os);
Extractor read_extractor(std::istream& is, std::size_t alphabet);

}  // namespace wrl
