#pragma once

#include <cstddef>
#include <vector>

namespace wrl {

// Probability vector over a finite alphabet {0..K-1}.
//
// Construction renormalizes and then nudges the largest entry so the stored
// values sum to exactly 1.0 in double arithmetic whenever that is reachable
// within a few one-ulp adjustments. Information quantities on degenerate
// inputs (point masses) then come out exactly zero.
class DiscreteDistribution {
public:
    explicit DiscreteDistribution(std::vector<double> probs);

    static DiscreteDistribution uniform(std::size_t k);
    static DiscreteDistribution point_mass(std::size_t k, std::size_t at);

    std::size_t size() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const { return p_; }
    const double* data() const { return p_.data(); }

    bool operator==(const DiscreteDistribution& o) const { return p_ == o.p_; }

private:
    DiscreteDistribution() = default;
    std::vector<double> p_;
};

// Joint distribution over a product alphabet A x B, row-major in a.
class JointDistribution {
public:
    JointDistribution(std::size_t na, std::size_t nb, std::vector<double> table);

    // j(a,b) = p(a) * rows[a][b]; rows must be row-stochastic over B.
    static JointDistribution from_input_and_rows(
        const DiscreteDistribution& pa, const std::vector<std::vector<double>>& rows);

    std::size_t na() const { return na_; }
    std::size_t nb() const { return nb_; }
    double at(std::size_t a, std::size_t b) const { return t_[a * nb_ + b]; }
    const std::vector<double>& table() const { return t_; }

    // Marginals as raw sums, not renormalized.
    std::vector<double> marginal_a() const;
    std::vector<double> marginal_b() const;

private:
    std::size_t na_ = 0, nb_ = 0;
    std::vector<double> t_;
};

// Renormalizes v in place (see DiscreteDistribution). Exposed for code that
// keeps plain vectors, e.g. channel kernel rows.
void normalize_exact(std::vector<double>& v);

}  // namespace wrl
