#include "wrl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wrl/common.hpp"

namespace wrl {

void normalize_exact(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) {
        require(std::isfinite(x), "distribution entry must be finite");
        require(x >= -1e-12, "distribution entry must be nonnegative");
        sum += x;
    }
    require(sum > 0.0, "distribution must have positive total mass");
    for (double& x : v) {
        x = x <= 0.0 ? 0.0 : x / sum;
    }
    // Push the rounding residual into the largest entry until the sequential
    // sum is exactly 1.0 (usually one pass).
    for (int pass = 0; pass < 8; ++pass) {
        double s = std::accumulate(v.begin(), v.end(), 0.0);
        if (s == 1.0) break;
        auto it = std::max_element(v.begin(), v.end());
        *it -= s - 1.0;
        if (*it < 0.0) *it = 0.0;
    }
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probs)
    : p_(std::move(probs)) {
    require(!p_.empty(), "distribution must be nonempty");
    normalize_exact(p_);
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t k) {
    require(k >= 1, "alphabet size must be >= 1");
    return DiscreteDistribution(std::vector<double>(k, 1.0));
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t k, std::size_t at) {
    require(k >= 1, "alphabet size must be >= 1");
    require(at < k, "point mass location out of range");
    std::vector<double> v(k, 0.0);
    v[at] = 1.0;
    DiscreteDistribution d;
    d.p_ = std::move(v);
    return d;
}

JointDistribution::JointDistribution(std::size_t na, std::size_t nb,
                                     std::vector<double> table)
    : na_(na), nb_(nb), t_(std::move(table)) {
    require(na_ >= 1 && nb_ >= 1, "joint alphabet sizes must be >= 1");
    require(t_.size() == na_ * nb_, "joint table size mismatch");
    double sum = 0.0;
    for (double x : t_) {
        require(std::isfinite(x) && x >= -1e-12, "joint entry must be nonnegative");
        sum += x;
    }
    require(std::fabs(sum - 1.0) <= 1e-9, "joint mass must be 1 within 1e-9");
    for (double& x : t_) {
        if (x < 0.0) x = 0.0;
    }
}

JointDistribution JointDistribution::from_input_and_rows(
    const DiscreteDistribution& pa, const std::vector<std::vector<double>>& rows) {
    require(pa.size() == rows.size(), "input size must match row count");
    const std::size_t na = pa.size();
    const std::size_t nb = rows.empty() ? 0 : rows[0].size();
    std::vector<double> t(na * nb);
    for (std::size_t a = 0; a < na; ++a) {
        require(rows[a].size() == nb, "ragged kernel rows");
        const double w = pa[a];
        for (std::size_t b = 0; b < nb; ++b) t[a * nb + b] = w * rows[a][b];
    }
    return JointDistribution(na, nb, std::move(t));
}

std::vector<double> JointDistribution::marginal_a() const {
    std::vector<double> m(na_, 0.0);
    for (std::size_t a = 0; a < na_; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < nb_; ++b) s += t_[a * nb_ + b];
        m[a] = s;
    }
    return m;
}

std::vector<double> JointDistribution::marginal_b() const {
    std::vector<double> m(nb_, 0.0);
    for (std::size_t a = 0; a < na_; ++a) {
        for (std::size_t b = 0; b < nb_; ++b) m[b] += t_[a * nb_ + b];
    }
    return m;
}

}  // namespace wrl
