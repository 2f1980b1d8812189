#include "wrl/info.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "wrl/common.hpp"
#include "wrl/kernels.hpp"
#include "wrl/lp.hpp"

namespace wrl {

double entropy_bits(const double* p, std::size_t n) {
    return -kernels::sum_plog2p(p, n);
}

double entropy(const DiscreteDistribution& p) {
    return entropy_bits(p.data(), p.size());
}

double renyi2(const DiscreteDistribution& p) {
    return -std::log2(kernels::sum_squares(p.data(), p.size()));
}

double mutual_information(const JointDistribution& j) {
    const auto ma = j.marginal_a();
    const auto mb = j.marginal_b();
    const double h_a = entropy_bits(ma.data(), ma.size());
    const double h_b = entropy_bits(mb.data(), mb.size());
    const double h_ab = entropy_bits(j.table().data(), j.table().size());
    return std::max(0.0, h_a + h_b - h_ab);
}

double conditional_mutual_information(const DiscreteDistribution& p_u,
                                      const std::vector<JointDistribution>& joints) {
    require(p_u.size() == joints.size(),
            "conditional MI: |joints| must equal the support of p_u");
    double s = 0.0;
    for (std::size_t u = 0; u < joints.size(); ++u) {
        if (p_u[u] > 0.0) s += p_u[u] * mutual_information(joints[u]);
    }
    return s;
}

JointDistribution input_output_joint(const DiscreteDistribution& p_x,
                                     const WiretapChannel& ch, Side side) {
    require(p_x.size() == ch.nx(), "input distribution size must match nx");
    return JointDistribution::from_input_and_rows(
        p_x, side == Side::receiver ? ch.y_kernel() : ch.z_kernel());
}

DegradednessResult is_degraded(const WiretapChannel& ch, double tol) {
    const std::size_t ny = ch.ny(), nz = ch.nz(), nx = ch.nx();
    // variables: q[y][z] row-major, then t
    const std::size_t nq = ny * nz;
    std::vector<lp::Constraint> cons;
    for (std::size_t y = 0; y < ny; ++y) {
        lp::Constraint c;
        c.a.assign(nq + 1, 0.0);
        for (std::size_t z = 0; z < nz; ++z) c.a[y * nz + z] = 1.0;
        c.rel = lp::Relation::eq;
        c.b = 1.0;
        cons.push_back(std::move(c));
    }
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t z = 0; z < nz; ++z) {
            lp::Constraint up, down;
            up.a.assign(nq + 1, 0.0);
            down.a.assign(nq + 1, 0.0);
            for (std::size_t y = 0; y < ny; ++y) {
                up.a[y * nz + z] = ch.y_given_x(x)[y];
                down.a[y * nz + z] = ch.y_given_x(x)[y];
            }
            up.a[nq] = -1.0;   // (W_Y Q)[x,z] - t <= W_Z[x,z]
            up.rel = lp::Relation::le;
            up.b = ch.z_given_x(x)[z];
            down.a[nq] = 1.0;  // (W_Y Q)[x,z] + t >= W_Z[x,z]
            down.rel = lp::Relation::ge;
            down.b = ch.z_given_x(x)[z];
            cons.push_back(std::move(up));
            cons.push_back(std::move(down));
        }
    }
    std::vector<double> obj(nq + 1, 0.0);
    obj[nq] = 1.0;
    const lp::Result r = lp::solve_min(obj, cons);

    DegradednessResult out;
    out.ny = ny;
    out.nz = nz;
    out.residual = r.feasible ? r.objective : std::numeric_limits<double>::infinity();
    out.degraded = r.feasible && r.objective <= tol;
    if (out.degraded) {
        out.witness.assign(r.x.begin(), r.x.begin() + nq);
        for (double& v : out.witness) {
            if (v < 0.0) v = 0.0;
        }
    }
    return out;
}

namespace {

void compositions_rec(std::size_t parts, unsigned remaining, std::vector<unsigned>& cur,
                      const std::function<void(const std::vector<unsigned>&)>& emit) {
    if (cur.size() + 1 == parts) {
        cur.push_back(remaining);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (unsigned k = 0; k <= remaining; ++k) {
        cur.push_back(k);
        compositions_rec(parts, remaining - k, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

std::uint64_t simplex_grid_size(std::size_t parts, unsigned resolution) {
    // C(resolution + parts - 1, parts - 1), saturating
    std::uint64_t r = 1;
    for (std::size_t i = 1; i < parts; ++i) {
        const std::uint64_t num = resolution + i;
        if (r > (std::uint64_t{1} << 62) / num) return std::uint64_t{1} << 63;
        r = r * num / i;
    }
    return r;
}

std::vector<DiscreteDistribution> simplex_grid(std::size_t parts, unsigned resolution) {
    require(parts >= 1, "simplex grid needs at least one part");
    require(resolution >= 2, "grid resolution must be >= 2");
    const std::uint64_t count = simplex_grid_size(parts, resolution);
    if (count > max_enum()) {
        throw ResourceLimitError("simplex_grid_points", count, max_enum());
    }
    std::vector<DiscreteDistribution> grid;
    grid.reserve(count);
    std::vector<unsigned> cur;
    compositions_rec(parts, resolution, cur, [&](const std::vector<unsigned>& k) {
        std::vector<double> p(parts);
        for (std::size_t i = 0; i < parts; ++i) {
            p[i] = static_cast<double>(k[i]) / resolution;
        }
        grid.emplace_back(std::move(p));
    });
    return grid;
}

LessCapableVerdict is_less_capable(const WiretapChannel& ch, unsigned grid_resolution) {
    require(grid_resolution >= 2, "grid resolution must be >= 2");
    const auto grid = simplex_grid(ch.nx(), grid_resolution);
    double max_gap = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double i_y = mutual_information(input_output_joint(grid[g], ch, Side::receiver));
        const double i_z = mutual_information(input_output_joint(grid[g], ch, Side::eavesdropper));
        const double gap = i_z - i_y;
        if (gap > max_gap) {
            max_gap = gap;
            arg = g;
        }
    }
    return LessCapableVerdict{max_gap <= 1e-9, max_gap, grid[arg]};
}

}  // namespace wrl
