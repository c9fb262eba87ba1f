#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hypint/error.hpp"
#include "hypint/lattice.hpp"
#include "hypint/linalg.hpp"

using namespace hypint;

namespace {

MatZ imat(std::initializer_list<std::initializer_list<int>> rows) {
    MatZ m;
    for (const auto& r : rows) {
        VecZ v;
        for (int e : r)
            v.emplace_back(e);
        m.push_back(std::move(v));
    }
    return m;
}

VecZ ivec(std::initializer_list<int> entries) {
    VecZ v;
    for (int e : entries)
        v.emplace_back(e);
    return v;
}

VecQ qvec(std::initializer_list<Rat> entries) { return VecQ(entries); }

VecZ combine(const MatZ& rows, const VecZ& coeffs) {
    VecZ out(rows.empty() ? 0 : rows[0].size(), Int(0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] += coeffs[r] * rows[r][j];
    return out;
}

bool same_lattice(const MatZ& a, const MatZ& b, long dim) {
    SpanLattice la(a, dim), lb(b, dim);
    for (const VecZ& row : a)
        if (!lb.contains(row))
            return false;
    for (const VecZ& row : b)
        if (!la.contains(row))
            return false;
    return true;
}

Configuration gauss_configuration() {
    // Rank-one relation setting in ambient dimension five: the five standard
    // basis vectors plus (1,1,1,-1,-1).
    return Configuration::from_columns(imat({{1, 0, 0, 0, 0},
                                             {0, 1, 0, 0, 0},
                                             {0, 0, 1, 0, 0},
                                             {0, 0, 0, 1, 0},
                                             {0, 0, 0, 0, 1},
                                             {1, 1, 1, -1, -1}}));
}

} // namespace

TEST_CASE("hermite form is canonical") {
    SUBCASE("sign normalization") {
        HnfResult a = hnf_rows(imat({{1, 2}}));
        HnfResult b = hnf_rows(imat({{-1, -2}}));
        CHECK(a.h == b.h);
        CHECK(a.rank == 1);
        CHECK(a.h[0] == ivec({1, 2}));
    }
    SUBCASE("entries above a pivot are reduced") {
        HnfResult r = hnf_rows(imat({{4, 0}, {1, 1}}));
        REQUIRE(r.rank == 2);
        CHECK(r.h[0] == ivec({1, 1}));
        CHECK(r.h[1] == ivec({0, 4}));
    }
    SUBCASE("zero rows sink") {
        HnfResult r = hnf_rows(imat({{2, 4}, {1, 2}, {3, 6}}));
        CHECK(r.rank == 1);
        CHECK(r.h[0] == ivec({1, 2}));
        CHECK(r.h[1] == ivec({0, 0}));
        CHECK(r.h[2] == ivec({0, 0}));
    }
}

TEST_CASE("hermite transform is unimodular") {
    std::mt19937 rng(20240813);
    std::uniform_int_distribution<long> dim(1, 5);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int iter = 0; iter < 200; ++iter) {
        long rows = dim(rng), cols = dim(rng);
        MatZ m(rows, VecZ(cols));
        for (auto& r : m)
            for (Int& z : r)
                z = entry(rng);
        HnfResult res = hnf_rows(m);
        // u * m == h, row by row.
        for (long i = 0; i < rows; ++i)
            CHECK(combine(m, res.u[i]) == res.h[i]);
        Rat d = det(to_rational_mat(res.u));
        CHECK((d == 1 || d == -1));
        // Echelon shape: pivots strictly to the right, positive, and the
        // entries above each pivot lie in [0, pivot).
        long last = -1;
        for (long i = 0; i < res.rank; ++i) {
            long p = 0;
            while (res.h[i][p] == 0)
                ++p;
            CHECK(p > last);
            last = p;
            CHECK(res.h[i][p] > 0);
            for (long j = 0; j < i; ++j) {
                CHECK(res.h[j][p] >= 0);
                CHECK(res.h[j][p] < res.h[i][p]);
            }
        }
        for (long i = res.rank; i < rows; ++i)
            CHECK(res.h[i] == VecZ(cols, Int(0)));
    }
}

TEST_CASE("smith invariants") {
    CHECK(snf_invariants(imat({{2, 0}, {0, 3}})) == (VecZ{1, 6}));
    CHECK(snf_invariants(imat({{1, 0}, {0, 1}})) == (VecZ{1, 1}));
    CHECK(snf_invariants(imat({{2, 4}, {4, 8}})) == (VecZ{2}));
    CHECK(snf_invariants(imat({{0}})).empty());
    CHECK(snf_invariants(imat({{6, 4}, {2, 8}})) == (VecZ{2, 20}));
}

TEST_CASE("configuration construction") {
    SUBCASE("homogeneity form found when it exists") {
        Configuration cfg = Configuration::from_columns(imat({{1, 0}, {1, 1}}));
        REQUIRE(cfg.nonconfluent());
        for (const VecZ& a : cfg.vectors)
            CHECK(dot(*cfg.h, to_rational_vec(a)) == 1);
    }
    SUBCASE("no homogeneity form on unequal scalars") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {2}}));
        CHECK(!cfg.nonconfluent());
    }
    SUBCASE("duplicate vectors are accepted") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {1}}));
        CHECK(cfg.count() == 2);
        CHECK(cfg.nonconfluent());
    }
    SUBCASE("shape errors") {
        CHECK_THROWS_AS(Configuration::from_columns(MatZ{}), input_error);
        CHECK_THROWS_AS(Configuration::from_columns(imat({{1, 0}, {1}})), input_error);
    }
    SUBCASE("matrix layout is column per vector") {
        Configuration cfg = Configuration::from_columns(imat({{1, 2}, {3, 4}}));
        MatZ a = cfg.matrix();
        CHECK(a == imat({{1, 3}, {2, 4}}));
    }
}

TEST_CASE("kernel basis on known configurations") {
    SUBCASE("one relation in dimension one") {
        MatZ k = kernel_basis(Configuration::from_columns(imat({{1}, {2}})));
        REQUIRE(k.size() == 1);
        CHECK(k[0] == ivec({2, -1}));
    }
    SUBCASE("injective configuration has no relations") {
        MatZ k = kernel_basis(Configuration::from_columns(imat({{1, 0}, {0, 1}})));
        CHECK(k.empty());
    }
    SUBCASE("rank-one relation lattice in dimension five") {
        MatZ k = kernel_basis(gauss_configuration());
        REQUIRE(k.size() == 1);
        CHECK(same_lattice(k, imat({{-1, -1, -1, 1, 1, 1}}), 6));
    }
}

TEST_CASE("kernel basis is saturated on random configurations") {
    std::mt19937 rng(20240814);
    std::uniform_int_distribution<long> ddim(1, 3), dcount(1, 5);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int iter = 0; iter < 200; ++iter) {
        long d = ddim(rng), n = dcount(rng);
        MatZ cols(n, VecZ(d));
        for (auto& c : cols)
            for (Int& z : c)
                z = entry(rng);
        Configuration cfg = Configuration::from_columns(cols);
        MatZ k = kernel_basis(cfg);
        // Every basis vector is an exact relation.
        for (const VecZ& l : k) {
            VecZ s(d, Int(0));
            for (long i = 0; i < n; ++i)
                for (long j = 0; j < d; ++j)
                    s[j] += l[i] * cfg.vectors[i][j];
            CHECK(s == VecZ(d, Int(0)));
        }
        // Rank matches the rational kernel, and the basis is saturated.
        MatQ a(d, VecQ(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < d; ++j)
                a[j][i] = Rat(cfg.vectors[i][j]);
        MatQ rational_kernel = nullspace(a);
        CHECK(k.size() == rational_kernel.size());
        if (!k.empty()) {
            VecZ inv = snf_invariants(k);
            CHECK(inv == VecZ(inv.size(), Int(1)));
            SpanLattice span(k, n);
            for (const VecQ& w : rational_kernel)
                CHECK(span.contains(primitive_vector(w)));
        }
    }
}

TEST_CASE("span membership and cosets") {
    SUBCASE("even numbers") {
        SpanLattice za(imat({{2}}), 1);
        CHECK(!za.contains(ivec({3})));
        CHECK(za.contains(ivec({-4})));
        CHECK(za.same_coset(qvec({Rat(5, 2)}), qvec({Rat(1, 2)})));
        CHECK(!za.same_coset(qvec({Rat(1, 2)}), qvec({Rat(0)})));
    }
    SUBCASE("full integer lattice from two scalars") {
        SpanLattice za = SpanLattice::column_span(Configuration::from_columns(imat({{1}, {2}})));
        for (int x = -5; x <= 5; ++x)
            CHECK(za.contains(ivec({x})));
    }
    SUBCASE("checkerboard sublattice matches the parity oracle") {
        // (a, b) lies in the span of (1,1) and (1,-1) iff a + b is even.
        SpanLattice za(imat({{1, 1}, {1, -1}}), 2);
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b)
                CHECK(za.contains(ivec({a, b})) == ((a + b) % 2 == 0));
    }
    SUBCASE("non-integral differences are never in the span") {
        SpanLattice za(imat({{1, 0}, {0, 1}}), 2);
        CHECK(!za.contains(qvec({Rat(1, 2), Rat(0)})));
    }
}

TEST_CASE("span decomposition reconstructs random members") {
    std::mt19937 rng(20240815);
    std::uniform_int_distribution<long> dcount(1, 5);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int iter = 0; iter < 200; ++iter) {
        long n = dcount(rng);
        MatZ gens(n, VecZ(3));
        for (auto& g : gens)
            for (Int& z : g)
                z = entry(rng);
        SpanLattice span(gens, 3);
        VecZ coeffs(n);
        for (Int& z : coeffs)
            z = entry(rng);
        VecZ x = combine(gens, coeffs);
        REQUIRE(span.contains(x));
        auto dec = span.decompose(x);
        REQUIRE(dec.has_value());
        CHECK(combine(gens, *dec) == x);
    }
}

TEST_CASE("negative support") {
    CHECK(negative_support(qvec({Rat(-1), Rat(0), Rat(-1, 2)})) == (std::vector<long>{0}));
    CHECK(negative_support(qvec({Rat(0), Rat(0), Rat(0)})).empty());
    CHECK(negative_support(qvec({Rat(-2), Rat(-1)})) == (std::vector<long>{0, 1}));
}

TEST_CASE("graded tuple enumeration") {
    auto tuples = graded_tuples(1, 2, Int(100));
    REQUIRE(tuples.size() == 5);
    CHECK(tuples[0] == std::vector<long>{0});
    CHECK(tuples[1] == std::vector<long>{-1});
    CHECK(tuples[2] == std::vector<long>{1});
    CHECK(tuples[3] == std::vector<long>{-2});
    CHECK(tuples[4] == std::vector<long>{2});
    CHECK(graded_tuples(0, 5, Int(10)) == std::vector<std::vector<long>>{{}});
    CHECK_THROWS_AS(graded_tuples(3, 10, Int(100)), resource_error);
}

TEST_CASE("support preserving offsets") {
    SUBCASE("one active coordinate filters the ray") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {2}}));
        auto offs = support_preserving_offsets(cfg, qvec({Rat(-1), Rat(0)}), 3);
        REQUIRE(offs.size() == 4);
        CHECK(offs[0] == ivec({0, 0}));
        CHECK(offs[1] == ivec({-2, 1}));
        CHECK(offs[2] == ivec({-4, 2}));
        CHECK(offs[3] == ivec({-6, 3}));
    }
    SUBCASE("no integer coordinates means no constraint") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {2}}));
        auto offs = support_preserving_offsets(cfg, qvec({Rat(-1, 2), Rat(1, 3)}), 3);
        CHECK(offs.size() == 7);
    }
    SUBCASE("rank-one ray in the five dimensional configuration") {
        Configuration cfg = gauss_configuration();
        VecQ v = qvec({Rat(-1), Rat(-1, 2), Rat(-1, 2), Rat(0), Rat(0), Rat(0)});
        auto offs = support_preserving_offsets(cfg, v, 2);
        REQUIRE(offs.size() == 3);
        CHECK(offs[0] == ivec({0, 0, 0, 0, 0, 0}));
        CHECK(offs[1] == ivec({-1, -1, -1, 1, 1, 1}));
        CHECK(offs[2] == ivec({-2, -2, -2, 2, 2, 2}));
    }
    SUBCASE("emitted offsets satisfy the defining predicate") {
        Configuration cfg = gauss_configuration();
        VecQ v = qvec({Rat(-1), Rat(-1, 2), Rat(-1, 2), Rat(0), Rat(0), Rat(0)});
        auto target = negative_support(v);
        for (const VecZ& l : support_preserving_offsets(cfg, v, 3)) {
            VecQ w = v;
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] += Rat(l[i]);
            CHECK(negative_support(w) == target);
        }
    }
}

TEST_CASE("minimal support verdicts") {
    SUBCASE("empty support is minimal outright") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {2}}));
        auto res = minimal_support_check(cfg, qvec({Rat(0), Rat(0)}), 3);
        CHECK(res.verdict == MinimalSupportResult::Verdict::minimal);
    }
    SUBCASE("relaxation certifies minimality") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {2}}));
        auto res = minimal_support_check(cfg, qvec({Rat(-1), Rat(0)}), 3);
        CHECK(res.verdict == MinimalSupportResult::Verdict::minimal);
    }
    SUBCASE("witness found for a shrinkable support") {
        Configuration cfg = Configuration::from_columns(imat({{1}, {1}}));
        auto res = minimal_support_check(cfg, qvec({Rat(-1), Rat(1)}), 3);
        REQUIRE(res.verdict == MinimalSupportResult::Verdict::not_minimal);
        REQUIRE(res.witness.has_value());
        CHECK(*res.witness == ivec({1, -1}));
    }
    SUBCASE("feasible relaxation without an integer witness stays bounded") {
        // Shrinking the support needs a basis coefficient strictly between
        // 1/2 and 2/3, which no integer achieves.
        Configuration cfg = Configuration::from_columns(imat({{3}, {2}}));
        auto res = minimal_support_check(cfg, qvec({Rat(-1), Rat(2)}), 5);
        CHECK(res.verdict == MinimalSupportResult::Verdict::minimal_within_bound);
        CHECK(!res.witness.has_value());
    }
}
