#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypint/linalg.hpp"
#include "hypint/simplex.hpp"

using namespace hypint;

namespace {

MatQ mat(std::initializer_list<std::initializer_list<int>> rows) {
    MatQ m;
    for (const auto& r : rows) {
        VecQ v;
        for (int e : r)
            v.emplace_back(e);
        m.push_back(std::move(v));
    }
    return m;
}

VecQ vec(std::initializer_list<int> entries) {
    VecQ v;
    for (int e : entries)
        v.emplace_back(e);
    return v;
}

} // namespace

TEST_CASE("standard form optimum on a segment") {
    // min x + y on x + 2y = 1, x, y >= 0: optimum at (0, 1/2).
    LpSolution s = lp_solve(mat({{1, 2}}), vec({1}), vec({1, 1}));
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == Rat(1, 2));
    CHECK(s.x[0] == 0);
    CHECK(s.x[1] == Rat(1, 2));
    CHECK(dot(s.y, vec({1})) == s.objective);
}

TEST_CASE("infeasible when the rhs needs negative mass") {
    LpSolution s = lp_solve(mat({{1, 1}}), VecQ{Rat(-1)}, vec({0, 0}));
    CHECK(s.status == LpStatus::infeasible);
    LpSolution t = lp_solve(mat({{1}, {1}}), vec({1, 2}), vec({0}));
    CHECK(t.status == LpStatus::infeasible);
}

TEST_CASE("unbounded objective without constraints") {
    LpSolution s = lp_solve(MatQ{}, VecQ{}, VecQ{Rat(-1)});
    CHECK(s.status == LpStatus::unbounded);
}

TEST_CASE("unbounded recession direction inside a cone") {
    // min -x + -y on x - y = 0: the diagonal recedes.
    LpSolution s = lp_solve(mat({{1, -1}}), vec({0}), vec({-1, -1}));
    CHECK(s.status == LpStatus::unbounded);
}

TEST_CASE("degenerate vertex still terminates") {
    // Only feasible point is the origin.
    LpSolution s = lp_solve(mat({{1, 1}}), vec({0}), vec({1, -1}));
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == 0);
    CHECK(s.x == vec({0, 0}));
}

TEST_CASE("redundant rows are tolerated") {
    // Duplicate constraint; basis can only hold one of the two rows.
    LpSolution s = lp_solve(mat({{1, 2}, {2, 4}}), vec({1, 2}), vec({1, 1}));
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == Rat(1, 2));
    CHECK(dot(s.y, vec({1, 2})) == s.objective);
}

TEST_CASE("lp_feasible matches phase one") {
    CHECK(lp_feasible(mat({{1, 1}}), vec({2})));
    CHECK(!lp_feasible(mat({{1}, {1}}), vec({1, 2})));
    CHECK(lp_feasible(MatQ{}, VecQ{}));
}

TEST_CASE("randomized feasible instances satisfy the certificate") {
    std::mt19937 rng(20240812);
    std::uniform_int_distribution<long> dim(1, 4);
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<int> nonneg(0, 4);
    for (int iter = 0; iter < 250; ++iter) {
        long m = dim(rng), n = dim(rng) + 1;
        MatQ a(m, VecQ(n));
        for (auto& row : a)
            for (Rat& q : row)
                q = entry(rng);
        VecQ x0(n), c(n), b(m);
        for (Rat& q : x0)
            q = nonneg(rng);
        for (Rat& q : c)
            q = nonneg(rng); // keeps the objective bounded below by zero
        for (long i = 0; i < m; ++i)
            b[i] = dot(a[i], x0);
        LpSolution s = lp_solve(a, b, c);
        REQUIRE(s.status == LpStatus::optimal);
        CHECK(s.objective <= dot(c, x0));
        for (long i = 0; i < m; ++i)
            CHECK(dot(a[i], s.x) == b[i]);
        for (const Rat& q : s.x)
            CHECK(q >= 0);
        CHECK(dot(s.y, b) == s.objective);
    }
}

TEST_CASE("row problems with slack variables") {
    // min -x on 0 <= x <= 5.
    LpProblem p(1);
    p.objective = VecQ{Rat(-1)};
    p.constraint(VecQ{Rat(1)}, -1, Rat(5));
    LpOutcome o = lp_solve(p);
    REQUIRE(o.status == LpStatus::optimal);
    CHECK(o.objective == -5);
    CHECK(o.x[0] == 5);
}

TEST_CASE("free variables can go negative") {
    LpProblem p(1);
    p.free_var = {true};
    p.objective = VecQ{Rat(1)};
    p.constraint(VecQ{Rat(1)}, 1, Rat(-3, 2));
    LpOutcome o = lp_solve(p);
    REQUIRE(o.status == LpStatus::optimal);
    CHECK(o.objective == Rat(-3, 2));
    CHECK(o.x[0] == Rat(-3, 2));
}

TEST_CASE("free variable squeezed by contradictory bounds") {
    LpProblem p(1);
    p.free_var = {true};
    p.constraint(VecQ{Rat(1)}, 1, Rat(1, 2));
    p.constraint(VecQ{Rat(1)}, -1, Rat(0));
    CHECK(lp_solve(p).status == LpStatus::infeasible);
}

TEST_CASE("feasibility-only problems report a zero objective") {
    LpProblem p(1);
    p.constraint(VecQ{Rat(1)}, 1, Rat(2));
    p.constraint(VecQ{Rat(1)}, -1, Rat(3));
    LpOutcome o = lp_solve(p);
    REQUIRE(o.status == LpStatus::optimal);
    CHECK(o.objective == 0);
    CHECK(o.x[0] >= 2);
    CHECK(o.x[0] <= 3);
}

TEST_CASE("mixed equalities and inequalities with a free variable") {
    // min x + z with x >= 0, z free, x + z = 1, z <= 2: optimum value 1.
    LpProblem p(2);
    p.free_var = {false, true};
    p.objective = vec({1, 1});
    p.constraint(vec({1, 1}), 0, Rat(1));
    p.constraint(vec({0, 1}), -1, Rat(2));
    LpOutcome o = lp_solve(p);
    REQUIRE(o.status == LpStatus::optimal);
    CHECK(o.objective == 1);
    CHECK(o.x[0] + o.x[1] == 1);
}
