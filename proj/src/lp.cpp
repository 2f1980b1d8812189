#include "wrl/lp.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "wrl/common.hpp"

namespace wrl::lp {

namespace {

constexpr double kEps = 1e-11;

// Canonical-form tableau. Basis columns stay identity through pivots.
struct Tableau {
    std::size_t m, n;
    std::vector<double> t;  // m x n
    std::vector<double> b;
    std::vector<std::size_t> basis;

    double& at(std::size_t i, std::size_t j) { return t[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return t[i * n + j]; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double piv = at(pr, pc);
        for (std::size_t j = 0; j < n; ++j) at(pr, j) /= piv;
        b[pr] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = at(i, pc);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) at(i, j) -= f * at(pr, j);
            b[i] -= f * b[pr];
            at(i, pc) = 0.0;
        }
        basis[pr] = pc;
    }
};

// Minimizes c over the tableau with Bland's rule; columns with
// allowed[j] == false never enter. Returns false on iteration blowup.
bool run_simplex(Tableau& tb, const std::vector<double>& c,
                 const std::vector<char>& allowed) {
    const std::size_t iter_cap = 2000 * (tb.m + tb.n) + 10000;
    for (std::size_t iter = 0; iter < iter_cap; ++iter) {
        // reduced costs r_j = c_j - c_B . column_j
        std::size_t enter = tb.n;
        for (std::size_t j = 0; j < tb.n; ++j) {
            if (!allowed[j]) continue;
            double r = c[j];
            for (std::size_t i = 0; i < tb.m; ++i) {
                const double cb = c[tb.basis[i]];
                if (cb != 0.0) r -= cb * tb.at(i, j);
            }
            if (r < -kEps) {
                enter = j;
                break;  // Bland: smallest index
            }
        }
        if (enter == tb.n) return true;  // optimal

        std::size_t leave = tb.m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tb.m; ++i) {
            const double a = tb.at(i, enter);
            if (a > kEps) {
                const double ratio = tb.b[i] / a;
                if (ratio < best_ratio - kEps ||
                    (ratio < best_ratio + kEps &&
                     (leave == tb.m || tb.basis[i] < tb.basis[leave]))) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
        }
        if (leave == tb.m) return true;  // unbounded; callers' objectives are bounded
        tb.pivot(leave, enter);
    }
    return false;
}

}  // namespace

Result solve_min(const std::vector<double>& c, const std::vector<Constraint>& cons) {
    const std::size_t n0 = c.size();
    const std::size_t m = cons.size();
    require(m > 0, "lp: no constraints");

    std::vector<std::vector<double>> rows(m);
    std::vector<double> rhs(m);
    std::vector<Relation> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        require(cons[i].a.size() == n0, "lp: constraint arity mismatch");
        rows[i] = cons[i].a;
        rhs[i] = cons[i].b;
        rel[i] = cons[i].rel;
        if (rhs[i] < 0.0) {
            for (double& v : rows[i]) v = -v;
            rhs[i] = -rhs[i];
            if (rel[i] == Relation::le) {
                rel[i] = Relation::ge;
            } else if (rel[i] == Relation::ge) {
                rel[i] = Relation::le;
            }
        }
    }

    std::size_t n_slack = 0, n_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] != Relation::eq) ++n_slack;
        if (rel[i] != Relation::le) ++n_art;
    }
    const std::size_t n = n0 + n_slack + n_art;

    Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.t.assign(m * n, 0.0);
    tb.b = rhs;
    tb.basis.assign(m, 0);

    std::vector<char> is_art(n, 0);
    std::size_t slack_col = n0;
    std::size_t art_col = n0 + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n0; ++j) tb.at(i, j) = rows[i][j];
        switch (rel[i]) {
            case Relation::le:
                tb.at(i, slack_col) = 1.0;
                tb.basis[i] = slack_col++;
                break;
            case Relation::ge:
                tb.at(i, slack_col) = -1.0;
                ++slack_col;
                tb.at(i, art_col) = 1.0;
                is_art[art_col] = 1;
                tb.basis[i] = art_col++;
                break;
            case Relation::eq:
                tb.at(i, art_col) = 1.0;
                is_art[art_col] = 1;
                tb.basis[i] = art_col++;
                break;
        }
    }

    Result res;
    res.feasible = false;
    res.objective = 0.0;

    if (n_art > 0) {
        std::vector<double> phase1(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (is_art[j]) phase1[j] = 1.0;
        }
        std::vector<char> allowed(n, 1);
        if (!run_simplex(tb, phase1, allowed)) return res;
        double art_sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (is_art[tb.basis[i]]) art_sum += tb.b[i];
        }
        if (art_sum > 1e-8) return res;
        // drive remaining artificials out where possible
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_art[tb.basis[i]]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!is_art[j] && std::fabs(tb.at(i, j)) > kEps) {
                    tb.pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<double> cost(n, 0.0);
    for (std::size_t j = 0; j < n0; ++j) cost[j] = c[j];
    std::vector<char> allowed(n, 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_art[j]) allowed[j] = 0;
    }
    if (!run_simplex(tb, cost, allowed)) return res;

    res.feasible = true;
    res.x.assign(n0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < n0) res.x[tb.basis[i]] = tb.b[i];
    }
    res.objective = 0.0;
    for (std::size_t j = 0; j < n0; ++j) res.objective += c[j] * res.x[j];
    return res;
}

}  // namespace wrl::lp
