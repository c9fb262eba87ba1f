#pragma once

#include "hypint/rational.hpp"

#include <vector>

namespace hypint {

enum class LpStatus { optimal, infeasible, unbounded };

// Exact LP in standard form: minimize c.x subject to a x = b, x >= 0.
// Bland's rule throughout, so every solve terminates. On optimal the dual
// vector y satisfies y a <= c componentwise and y.b = objective; the solver
// checks this internally before returning.
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rat objective;
    VecQ x;
    VecQ y;
};

LpSolution lp_solve(const MatQ& a, const VecQ& b, const VecQ& c);

bool lp_feasible(const MatQ& a, const VecQ& b);

// Row-constraint form: relations are -1 (<=), 0 (=), +1 (>=). Variables
// default to x >= 0; marked variables are free (split internally).
struct LpProblem {
    long vars = 0;
    VecQ objective;             // empty means pure feasibility
    std::vector<bool> free_var; // empty means all nonnegative
    MatQ rows;
    std::vector<int> relations;
    VecQ rhs;

    explicit LpProblem(long nvars) : vars(nvars) {}
    void constraint(VecQ row, int relation, Rat bound);
};

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    Rat objective;
    VecQ x; // original variables
};

LpOutcome lp_solve(const LpProblem& prob);

} // namespace hypint
