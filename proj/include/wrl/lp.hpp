#pragma once

// Small dense linear-program solver (two-phase primal simplex with Bland's
// rule). Desk-scale problems only; used for the degradedness test.

#include <cstddef>
#include <vector>

namespace wrl::lp {

enum class Relation { le, ge, eq };

struct Constraint {
    std::vector<double> a;
    Relation rel;
    double b;
};

struct Result {
    bool feasible;
    double objective;
    std::vector<double> x;
};

// Minimizes c.x subject to the constraints and x >= 0.
Result solve_min(const std::vector<double>& c, const std::vector<Constraint>& cons);

}  // namespace wrl::lp
