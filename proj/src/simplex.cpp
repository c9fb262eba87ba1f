#include "hypint/simplex.hpp"

#include "hypint/error.hpp"
#include "hypint/linalg.hpp"

namespace hypint {

namespace {

// Full-tableau simplex core. Columns are [structural | artificial | rhs];
// the cost row sits at index m. Bland's rule: entering column is the least
// eligible index, leaving row breaks ratio ties by least basis column.
struct Tableau {
    long m = 0;
    long ncols = 0; // structural + artificial
    MatQ t;         // m constraint rows plus cost row, width ncols + 1
    std::vector<long> basis;

    void pivot(long row, long col) {
        Rat inv = 1 / t[row][col];
        for (long j = 0; j <= ncols; ++j)
            t[row][j] *= inv;
        for (long i = 0; i <= m; ++i) {
            if (i == row || t[i][col] == 0)
                continue;
            Rat f = t[i][col];
            for (long j = 0; j <= ncols; ++j)
                t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    // Minimize the cost row over columns [0, limit). Returns false on
    // unbounded descent.
    bool iterate(long limit) {
        for (;;) {
            long enter = -1;
            for (long j = 0; j < limit; ++j) {
                if (t[m][j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0)
                return true;
            long leave = -1;
            Rat best;
            for (long i = 0; i < m; ++i) {
                if (t[i][enter] <= 0)
                    continue;
                Rat ratio = t[i][ncols] / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpSolution lp_solve(const MatQ& a, const VecQ& b, const VecQ& c) {
    const long m0 = static_cast<long>(a.size());
    const long n = static_cast<long>(c.size());
    if (static_cast<long>(b.size()) != m0)
        throw internal_error("lp_solve: rhs size mismatch");
    for (const VecQ& row : a) {
        if (static_cast<long>(row.size()) != n)
            throw internal_error("lp_solve: row size mismatch");
    }

    // Sign-normalized working copy; remember flips for the dual map-back.
    MatQ rows = a;
    VecQ rhs = b;
    std::vector<bool> flipped(m0, false);
    for (long i = 0; i < m0; ++i) {
        if (rhs[i] < 0) {
            flipped[i] = true;
            rhs[i] = -rhs[i];
            for (Rat& q : rows[i])
                q = -q;
        }
    }

    Tableau tb;
    tb.m = m0;
    tb.ncols = n + m0;
    tb.t.assign(m0 + 1, VecQ(tb.ncols + 1));
    tb.basis.resize(m0);
    for (long i = 0; i < m0; ++i) {
        for (long j = 0; j < n; ++j)
            tb.t[i][j] = rows[i][j];
        tb.t[i][n + i] = 1;
        tb.t[i][tb.ncols] = rhs[i];
        tb.basis[i] = n + i;
    }
    // Phase 1 cost: sum of artificials, reduced against the artificial basis.
    for (long j = 0; j <= tb.ncols; ++j) {
        Rat s;
        for (long i = 0; i < m0; ++i)
            s += tb.t[i][j];
        tb.t[m0][j] = (j >= n && j < tb.ncols) ? Rat(0) : -s;
    }
    tb.iterate(tb.ncols); // bounded below by zero, never unbounded

    LpSolution sol;
    if (-tb.t[tb.m][tb.ncols] > 0) {
        sol.status = LpStatus::infeasible;
        return sol;
    }

    // Drive leftover artificials out of the basis; an all-zero structural
    // row is redundant and gets dropped.
    for (long i = 0; i < tb.m;) {
        if (tb.basis[i] < n) {
            ++i;
            continue;
        }
        long col = -1;
        for (long j = 0; j < n; ++j) {
            if (tb.t[i][j] != 0) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            tb.pivot(i, col);
            ++i;
        } else {
            tb.t.erase(tb.t.begin() + i);
            tb.basis.erase(tb.basis.begin() + i);
            --tb.m;
        }
    }

    // Phase 2 cost row from the original objective.
    for (long j = 0; j < n; ++j)
        tb.t[tb.m][j] = c[j];
    for (long j = n; j <= tb.ncols; ++j)
        tb.t[tb.m][j] = 0;
    for (long i = 0; i < tb.m; ++i) {
        if (tb.t[tb.m][tb.basis[i]] == 0)
            continue;
        Rat f = tb.t[tb.m][tb.basis[i]];
        for (long j = 0; j <= tb.ncols; ++j)
            tb.t[tb.m][j] -= f * tb.t[i][j];
    }
    if (!tb.iterate(n)) {
        sol.status = LpStatus::unbounded;
        return sol;
    }

    sol.status = LpStatus::optimal;
    sol.x.assign(n, Rat(0));
    for (long i = 0; i < tb.m; ++i)
        sol.x[tb.basis[i]] = tb.t[i][tb.ncols];
    sol.objective = dot(c, sol.x);

    // Dual from the cost row: it equals [c, 0, 0] minus a combination y of
    // the sign-normalized rows [rows | I | rhs], so the entry under
    // artificial column n + i is exactly -y_i.  That certificate covers
    // every original row, dropped redundant ones included (they may carry
    // nonzero multipliers, which is still dual feasible).
    sol.y.assign(m0, Rat(0));
    for (long i = 0; i < m0; ++i) {
        Rat yi = -tb.t[tb.m][n + i];
        sol.y[i] = flipped[i] ? -yi : yi;
    }

    // Certificate check against the original data.
    for (long j = 0; j < n; ++j) {
        Rat yaj;
        for (long i = 0; i < m0; ++i)
            yaj += sol.y[i] * a[i][j];
        if (yaj > c[j])
            throw internal_error("lp_solve: dual infeasible");
    }
    if (dot(sol.y, b) != sol.objective)
        throw internal_error("lp_solve: duality gap");
    return sol;
}

bool lp_feasible(const MatQ& a, const VecQ& b) {
    VecQ c(a.empty() ? 0 : a[0].size(), Rat(0));
    return lp_solve(a, b, c).status == LpStatus::optimal;
}

void LpProblem::constraint(VecQ row, int relation, Rat bound) {
    if (static_cast<long>(row.size()) != vars)
        throw internal_error("LpProblem: row size mismatch");
    rows.push_back(std::move(row));
    relations.push_back(relation);
    rhs.push_back(std::move(bound));
}

LpOutcome lp_solve(const LpProblem& prob) {
    const long m = static_cast<long>(prob.rows.size());
    std::vector<bool> is_free =
        prob.free_var.empty() ? std::vector<bool>(prob.vars, false) : prob.free_var;
    if (static_cast<long>(is_free.size()) != prob.vars)
        throw internal_error("LpProblem: free_var size mismatch");

    // Column layout: each variable, a negative copy for free ones, then one
    // slack per inequality row.
    std::vector<long> col_of(prob.vars), neg_col(prob.vars, -1);
    long ncols = 0;
    for (long v = 0; v < prob.vars; ++v) {
        col_of[v] = ncols++;
        if (is_free[v])
            neg_col[v] = ncols++;
    }
    long slack0 = ncols;
    for (int rel : prob.relations)
        if (rel != 0)
            ++ncols;

    MatQ a(m, VecQ(ncols));
    long slack = slack0;
    for (long i = 0; i < m; ++i) {
        for (long v = 0; v < prob.vars; ++v) {
            a[i][col_of[v]] = prob.rows[i][v];
            if (neg_col[v] >= 0)
                a[i][neg_col[v]] = -prob.rows[i][v];
        }
        if (prob.relations[i] != 0)
            a[i][slack++] = prob.relations[i] < 0 ? Rat(1) : Rat(-1);
    }
    VecQ c(ncols);
    if (!prob.objective.empty()) {
        if (static_cast<long>(prob.objective.size()) != prob.vars)
            throw internal_error("LpProblem: objective size mismatch");
        for (long v = 0; v < prob.vars; ++v) {
            c[col_of[v]] = prob.objective[v];
            if (neg_col[v] >= 0)
                c[neg_col[v]] = -prob.objective[v];
        }
    }

    LpSolution std_sol = lp_solve(a, prob.rhs, c);
    LpOutcome out;
    out.status = std_sol.status;
    if (std_sol.status != LpStatus::optimal)
        return out;
    out.objective = std_sol.objective;
    out.x.resize(prob.vars);
    for (long v = 0; v < prob.vars; ++v) {
        out.x[v] = std_sol.x[col_of[v]];
        if (neg_col[v] >= 0)
            out.x[v] -= std_sol.x[neg_col[v]];
    }
    return out;
}

} // namespace hypint
