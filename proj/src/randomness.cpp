#include "wrl/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "wrl/common.hpp"
#include "wrl/info.hpp"
#include "wrl/kernels.hpp"

namespace wrl {

double RandomnessSource::entropy_bits() const { return entropy(p); }
double RandomnessSource::renyi2_bits() const { return renyi2(p); }

namespace {

// ceil(n * rate) with a 1e-9 snap so 10 * 0.3 lands on 3, not 4
double ceil_rate_exponent(unsigned n, double rate_bits) {
    const double raw = static_cast<double>(n) * rate_bits;
    const double snapped = std::round(raw);
    return std::fabs(raw - snapped) < 1e-9 ? snapped : std::ceil(raw);
}

}  // namespace

std::uint64_t blocks_for_rate(unsigned n, double rate_bits) {
    require(rate_bits >= 0.0, "rate must be nonnegative");
    const double exponent = ceil_rate_exponent(n, rate_bits);
    require(exponent < 63.0, "rate exponent too large");
    return std::uint64_t{1} << static_cast<unsigned>(exponent);
}

DiscreteDistribution biased_example_source(unsigned n, double alpha, double R) {
    require(n >= 1, "block length must be >= 1");
    require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 1/2)");
    require(R > 0.0, "rate must be positive");
    const std::uint64_t m = blocks_for_rate(n, R);
    if (m > max_enum()) {
        throw ResourceLimitError("biased_source_alphabet", m, max_enum());
    }
    const double head = std::exp2(-static_cast<double>(n) * alpha * R);
    std::vector<double> p(m);
    p[0] = head;
    if (m > 1) {
        const double rest = (1.0 - head) / static_cast<double>(m - 1);
        for (std::uint64_t i = 1; i < m; ++i) p[i] = rest;
    }
    return DiscreteDistribution(std::move(p));
}

double biased_example_entropy(unsigned n, double alpha, double R) {
    require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 1/2)");
    const double nar = static_cast<double>(n) * alpha * R;
    const double head = std::exp2(-nar);
    const double mm = std::exp2(ceil_rate_exponent(n, R));
    if (mm <= 1.0) return 0.0;
    const double tail = 1.0 - head;
    double h = nar * head;
    if (tail > 0.0) h -= tail * std::log2(tail / (mm - 1.0));
    return h;
}

double biased_example_renyi2(unsigned n, double alpha, double R) {
    require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 1/2)");
    const double head = std::exp2(-static_cast<double>(n) * alpha * R);
    const double mm = std::exp2(ceil_rate_exponent(n, R));
    double coll = head * head;
    if (mm > 1.0) coll += (1.0 - head) * (1.0 - head) / (mm - 1.0);
    return -std::log2(coll);
}

double variational_distance(const double* p, const double* q, std::size_t n) {
    return kernels::sum_abs_diff(p, q, n);
}

double variational_distance(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    require(p.size() == q.size(), "variational distance needs equal alphabets");
    return variational_distance(p.data(), q.data(), p.size());
}

Extractor::Extractor(std::size_t alphabet, unsigned n, std::size_t num_bins,
                     std::vector<std::uint32_t> assignment, double achieved_distance)
    : alphabet_(alphabet),
      n_(n),
      num_bins_(num_bins),
      map_(std::move(assignment)),
      distance_(achieved_distance) {
    require(alphabet_ >= 1 && n_ >= 1 && num_bins_ >= 1, "extractor shape invalid");
    std::uint64_t seqs = 1;
    for (unsigned i = 0; i < n_; ++i) seqs *= alphabet_;
    require(map_.size() == seqs, "assignment must cover every sequence");
    for (std::uint32_t b : map_) {
        require(b < num_bins_, "bin index out of range");
    }
}

std::size_t Extractor::extract(std::span<const int> seq) const {
    require(seq.size() == n_, "sequence length mismatch");
    std::uint64_t idx = 0;
    for (int s : seq) {
        require(s >= 0 && static_cast<std::size_t>(s) < alphabet_,
                "symbol outside source alphabet");
        idx = idx * alphabet_ + static_cast<std::uint64_t>(s);
    }
    return map_[idx];
}

std::size_t Extractor::extract_index(std::uint64_t sequence_index) const {
    require(sequence_index < map_.size(), "sequence index out of range");
    return map_[sequence_index];
}

std::vector<double> Extractor::bin_masses(const DiscreteDistribution& p) const {
    require(p.size() == alphabet_, "per-symbol law has wrong alphabet");
    // powers table keeps equal-composition sequences bit-identical
    std::vector<std::vector<double>> pw(alphabet_, std::vector<double>(n_ + 1, 1.0));
    for (std::size_t s = 0; s < alphabet_; ++s) {
        for (unsigned c = 1; c <= n_; ++c) pw[s][c] = pw[s][c - 1] * p[s];
    }
    std::vector<unsigned> counts(alphabet_, 0);
    std::vector<double> mass(num_bins_, 0.0);
    std::vector<int> digits(n_, 0);
    counts[0] = n_;
    for (std::uint64_t idx = 0;; ++idx) {
        double prob = 1.0;
        for (std::size_t s = 0; s < alphabet_; ++s) prob *= pw[s][counts[s]];
        mass[map_[idx]] += prob;
        // odometer increment
        int pos = static_cast<int>(n_) - 1;
        while (pos >= 0) {
            --counts[digits[pos]];
            if (static_cast<std::size_t>(digits[pos]) + 1 < alphabet_) {
                ++digits[pos];
                ++counts[digits[pos]];
                break;
            }
            digits[pos] = 0;
            ++counts[0];
            --pos;
        }
        if (pos < 0) break;
    }
    return mass;
}

Extractor build_extractor(const RandomnessSource& src, unsigned n, double rate_bits) {
    require(n >= 1, "block length must be >= 1");
    const std::size_t r = src.p.size();
    double seq_count_f = 1.0;
    for (unsigned i = 0; i < n; ++i) seq_count_f *= static_cast<double>(r);
    if (seq_count_f > static_cast<double>(max_enum())) {
        throw ResourceLimitError("source_sequences",
                                 static_cast<std::uint64_t>(seq_count_f), max_enum());
    }
    std::uint64_t seqs = 1;
    for (unsigned i = 0; i < n; ++i) seqs *= r;
    const std::uint64_t k = blocks_for_rate(n, rate_bits);
    require(k <= seqs, "bin count exceeds sequence count");

    // canonical per-sequence probabilities (see Extractor::bin_masses)
    std::vector<std::vector<double>> pw(r, std::vector<double>(n + 1, 1.0));
    for (std::size_t s = 0; s < r; ++s) {
        for (unsigned c = 1; c <= n; ++c) pw[s][c] = pw[s][c - 1] * src.p[s];
    }
    std::vector<double> prob(seqs);
    {
        std::vector<unsigned> counts(r, 0);
        std::vector<int> digits(n, 0);
        counts[0] = n;
        for (std::uint64_t idx = 0;; ++idx) {
            double pr = 1.0;
            for (std::size_t s = 0; s < r; ++s) pr *= pw[s][counts[s]];
            prob[idx] = pr;
            int pos = static_cast<int>(n) - 1;
            while (pos >= 0) {
                --counts[digits[pos]];
                if (static_cast<std::size_t>(digits[pos]) + 1 < r) {
                    ++digits[pos];
                    ++counts[digits[pos]];
                    break;
                }
                digits[pos] = 0;
                ++counts[0];
                --pos;
            }
            if (pos < 0) break;
        }
    }

    std::vector<std::uint64_t> order(seqs);
    for (std::uint64_t i = 0; i < seqs; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        if (prob[a] != prob[b]) return prob[a] > prob[b];
        return a < b;
    });

    // lightest bin first; ties resolve to the lowest bin index
    using Slot = std::pair<double, std::uint64_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<Slot>> bins;
    for (std::uint64_t b = 0; b < k; ++b) bins.emplace(0.0, b);
    std::vector<std::uint32_t> map(seqs, 0);
    for (std::uint64_t i = 0; i < seqs; ++i) {
        auto [mass, bin] = bins.top();
        bins.pop();
        map[order[i]] = static_cast<std::uint32_t>(bin);
        bins.emplace(mass + prob[order[i]], bin);
    }

    // exact recomputation in sequence order
    std::vector<double> mass(k, 0.0);
    for (std::uint64_t i = 0; i < seqs; ++i) mass[map[i]] += prob[i];
    const double target = 1.0 / static_cast<double>(k);
    double dist = 0.0;
    for (std::uint64_t b = 0; b < k; ++b) dist += std::fabs(mass[b] - target);

    return Extractor(r, n, k, std::move(map), dist);
}

namespace {

char digit_char(std::size_t d) {
    return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + (d - 10));
}

int digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
    return -1;
}

}  // namespace

void write_extractor(const Extractor& ex, std::ostream& os) {
    require(ex.alphabet() <= 36, "export supports alphabets up to 36 symbols");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", ex.achieved_distance());
    os << "n=" << ex.n() << " K=" << ex.num_bins() << " distance=" << buf << "\n";
    const auto& map = ex.assignment();
    std::string digits(ex.n(), '0');
    for (std::uint64_t idx = 0; idx < map.size(); ++idx) {
        std::uint64_t v = idx;
        for (unsigned pos = ex.n(); pos-- > 0;) {
            digits[pos] = digit_char(v % ex.alphabet());
            v /= ex.alphabet();
        }
        os << digits << ' ' << map[idx] << "\n";
    }
}

Extractor read_extractor(std::istream& is, std::size_t alphabet) {
    std::string header;
    require(static_cast<bool>(std::getline(is, header)), "extractor file is empty");
    unsigned n = 0;
    std::uint64_t k = 0;
    double distance = 0.0;
    if (std::sscanf(header.c_str(), "n=%u K=%llu distance=%lf", &n,
                    reinterpret_cast<unsigned long long*>(&k), &distance) != 3) {
        throw std::invalid_argument("bad extractor header: " + header);
    }
    std::uint64_t seqs = 1;
    for (unsigned i = 0; i < n; ++i) seqs *= alphabet;
    std::vector<std::uint32_t> map(seqs, 0);
    std::string line;
    std::uint64_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string digits;
        std::uint64_t bin = 0;
        require(static_cast<bool>(ls >> digits >> bin), "bad extractor row");
        require(digits.size() == n, "extractor row has wrong sequence length");
        std::uint64_t idx = 0;
        for (char c : digits) {
            const int d = digit_value(c);
            require(d >= 0 && static_cast<std::size_t>(d) < alphabet,
                    "extractor row digit outside alphabet");
            idx = idx * alphabet + static_cast<std::uint64_t>(d);
        }
        map[idx] = static_cast<std::uint32_t>(bin);
        ++rows;
    }
    require(rows == seqs, "extractor file does not cover every sequence");
    return Extractor(alphabet, n, k, std::move(map), distance);
}

}  // namespace wrl
