#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypint/eisenstein.hpp"
#include "hypint/error.hpp"
#include "hypint/linalg.hpp"
#include "hypint/series.hpp"

using namespace hypint;

namespace {

VecQ qvec(std::initializer_list<Rat> entries) { return VecQ(entries); }

MatQ qmat(std::initializer_list<std::initializer_list<Rat>> rows) {
    MatQ m;
    for (const auto& r : rows)
        m.emplace_back(r);
    return m;
}

MatZ zmat(std::initializer_list<std::initializer_list<int>> rows) {
    MatZ m;
    for (const auto& r : rows) {
        VecZ v;
        for (int e : r)
            v.emplace_back(e);
        m.push_back(std::move(v));
    }
    return m;
}

// sqrt(1+X): annihilated by Z^2 - 1 - X, coefficients binom(1/2, m).
AlgebraicSeries sqrt_series(long order) {
    AlgebraicSeries s;
    s.annihilator = qmat({{Rat(-1), Rat(-1)}, {}, {Rat(1)}});
    Rat c(1);
    for (long m = 0; m <= order; ++m) {
        s.prefix.push_back(c);
        c *= Rat(1, 2) - Rat(m);
        c /= Rat(m + 1);
    }
    return s;
}

// 1/(1-X): annihilated by (1-X) Z - 1, all coefficients 1.
AlgebraicSeries geometric_series(long order) {
    AlgebraicSeries s;
    s.annihilator = qmat({{Rat(-1)}, {Rat(1), Rat(-1)}});
    s.prefix.assign(order + 1, Rat(1));
    return s;
}

// 1/(1+X): annihilated by (1+X) Z - 1, coefficients (-1)^m.
AlgebraicSeries alternating_series(long order) {
    AlgebraicSeries s;
    s.annihilator = qmat({{Rat(-1)}, {Rat(1), Rat(1)}});
    for (long m = 0; m <= order; ++m)
        s.prefix.push_back(Rat(m % 2 == 0 ? 1 : -1));
    return s;
}

// X + X^2, a root of (Z - X)^2 - X^4 that starts with a double point: the
// Z-derivative vanishes to order 2 along the branch.
AlgebraicSeries cusp_series(long order) {
    AlgebraicSeries s;
    s.annihilator = qmat({{Rat(0), Rat(0), Rat(1), Rat(0), Rat(-1)},
                          {Rat(0), Rat(-2)},
                          {Rat(1)}});
    s.prefix.assign(order + 1, Rat(0));
    if (order >= 1)
        s.prefix[1] = 1;
    if (order >= 2)
        s.prefix[2] = 1;
    return s;
}

// sum binom(2m, m) X^m = 1/sqrt(1-4X), annihilated by (1-4X) Z^2 - 1.
AlgebraicSeries central_binomial_series(long order) {
    AlgebraicSeries s;
    s.annihilator = qmat({{Rat(-1)}, {}, {Rat(1), Rat(-4)}});
    Int c = 1;
    for (long m = 0; m <= order; ++m) {
        s.prefix.push_back(Rat(c));
        c = c * 2 * (2 * m + 1) / (m + 1);
    }
    return s;
}

// The polynomial 1 + X/2 + X^2/3 as its own expansion, annihilator Z - f.
AlgebraicSeries polynomial_series(long order) {
    AlgebraicSeries s;
    s.annihilator = qmat({{Rat(-1), Rat(-1, 2), Rat(-1, 3)}, {Rat(1)}});
    s.prefix.assign(order + 1, Rat(0));
    s.prefix[0] = 1;
    if (order >= 1)
        s.prefix[1] = Rat(1, 2);
    if (order >= 2)
        s.prefix[2] = Rat(1, 3);
    return s;
}

} // namespace

TEST_CASE("tail normalization of the square root") {
    AlgebraicSeries s = sqrt_series(10);
    TailNormalization tn = tail_normalize(s);

    CHECK(tn.mu == 0);
    CHECK(tn.head_degree == 1);
    CHECK(tn.tail_shift == 1);
    CHECK(tn.unit_part == qvec({Rat(2), Rat(1)}));
    CHECK(tn.defect == qvec({Rat(1, 4)}));
    CHECK(tn.remainder == qmat({{Rat(1)}}));
    CHECK(tn.tail_poly_q == qmat({{Rat(-1, 4)}, {Rat(-1)}, {Rat(-1)}}));
    CHECK(tn.scale == 8);
    CHECK(tn.tail_poly == zmat({{-1}, {-4}, {-4}}));
}

TEST_CASE("tail normalization of the geometric series") {
    AlgebraicSeries s = geometric_series(12);
    TailNormalization tn = tail_normalize(s);

    CHECK(tn.mu == 0);
    CHECK(tn.head_degree == 1);
    CHECK(tn.unit_part == qvec({Rat(1), Rat(-1)}));
    CHECK(tn.defect == qvec({Rat(-1)}));
    CHECK(tn.remainder.empty());
    CHECK(tn.scale == 1);
    CHECK(tn.tail_poly == zmat({{1}, {1}}));

    // The normalized equation holds exactly here, not only to the checked
    // order: the tail X + X^2 + ... solves t = X (t + 1) coefficientwise.
    VecQ tail(8, Rat(1));
    tail[0] = 0;
    VecQ rhs(8, Rat(0));
    rhs[1] = Rat(tn.tail_poly[0][0]);
    for (int i = 0; i + 1 < 8; ++i)
        rhs[i + 1] += Rat(tn.tail_poly[1][0]) * tail[i];
    for (int i = 0; i < 8; ++i)
        CHECK(Rat(tn.scale) * tail[i] == rhs[i]);
}

TEST_CASE("tail normalization at a vanishing derivative") {
    AlgebraicSeries s = cusp_series(8);
    TailNormalization tn = tail_normalize(s);

    CHECK(tn.mu == 2);
    CHECK(tn.head_degree == 5);
    CHECK(tn.tail_shift == 3);
    CHECK(tn.unit_part == qvec({Rat(2)}));
    CHECK(tn.defect.empty());
    CHECK(tn.remainder == qmat({{Rat(1)}}));
    CHECK(tn.scale == 2);
    CHECK(tn.tail_poly.size() == 3);
    CHECK(tn.tail_poly[0].empty());
    CHECK(tn.tail_poly[1].empty());
    CHECK(tn.tail_poly[2] == zmat({{-1}})[0]);
}

TEST_CASE("tail normalization of polynomials") {
    AlgebraicSeries s = polynomial_series(6);
    TailNormalization tn = tail_normalize(s);

    CHECK(tn.mu == 0);
    CHECK(tn.head_degree == 1);
    CHECK(tn.unit_part == qvec({Rat(1)}));
    CHECK(tn.defect == qvec({Rat(-1, 3)}));
    CHECK(tn.scale == 3);
    CHECK(tn.tail_poly == zmat({{1}}));

    // Degree within the head: the tail vanishes and so does the equation.
    AlgebraicSeries affine;
    affine.annihilator = qmat({{Rat(-1), Rat(-1, 2)}, {Rat(1)}});
    affine.prefix = qvec({Rat(1), Rat(1, 2), Rat(0), Rat(0)});
    TailNormalization affine_tn = tail_normalize(affine);
    CHECK(affine_tn.scale == 1);
    CHECK(affine_tn.tail_poly.empty());
}

TEST_CASE("tail normalization accepts ragged and padded rows") {
    AlgebraicSeries s = sqrt_series(6);
    s.annihilator = qmat({{Rat(-1), Rat(-1), Rat(0), Rat(0)},
                          {Rat(0)},
                          {Rat(1), Rat(0)},
                          {}});
    TailNormalization tn = tail_normalize(s);
    CHECK(tn.scale == 8);
    CHECK(tn.tail_poly == zmat({{-1}, {-4}, {-4}}));
}

TEST_CASE("denominator constant for the square root") {
    AlgebraicSeries s = sqrt_series(100);
    TailNormalization tn = tail_normalize(s);
    DenominatorBound bound = denominator_constant(tn, s);

    CHECK(bound.constant == 8);
    CHECK(bound.prefix_minimal == 4);
    CHECK(bound.verified_order == 100);

    // The rescaled tail recursion produces these integers; equivalently
    // 8^m c_{m+1} for m = 1, 2, 3.
    CHECK(Rat(8) * s.prefix[2] == Rat(-1));
    CHECK(Rat(64) * s.prefix[3] == Rat(4));
    CHECK(Rat(512) * s.prefix[4] == Rat(-20));

    CHECK(constant_clears_prefix(s, 8));
    CHECK(constant_clears_prefix(s, 4));
    CHECK_FALSE(constant_clears_prefix(s, 2));
    CHECK_FALSE(is_integer(Rat(4) * s.prefix[2])); // 2^2 c_2 = -1/2
}

TEST_CASE("denominator constants across the examples") {
    {
        AlgebraicSeries s = geometric_series(20);
        DenominatorBound b = denominator_constant(tail_normalize(s), s);
        CHECK(b.constant == 1);
        CHECK(b.prefix_minimal == 1);
    }
    {
        AlgebraicSeries s = cusp_series(12);
        DenominatorBound b = denominator_constant(tail_normalize(s), s);
        CHECK(b.constant == 2);
        CHECK(b.prefix_minimal == 1); // integer prefix, the scale is not needed
    }
    {
        AlgebraicSeries s = central_binomial_series(30);
        DenominatorBound b = denominator_constant(tail_normalize(s), s);
        CHECK(b.constant == 2);
        CHECK(b.prefix_minimal == 1);
        CHECK(b.verified_order == 30);
    }
    {
        AlgebraicSeries s = polynomial_series(6);
        DenominatorBound b = denominator_constant(tail_normalize(s), s);
        // lcm of the coefficient denominators; no factor can be dropped.
        CHECK(b.constant == 6);
        CHECK(b.prefix_minimal == 6);
    }
}

TEST_CASE("prefix consistency is monotone") {
    AlgebraicSeries full = sqrt_series(10);
    for (long t = 1; t <= 10; ++t) {
        AlgebraicSeries s = full;
        s.prefix.resize(t + 1);
        TailNormalization tn = tail_normalize(s);
        CHECK(tn.mu == 0);
        CHECK(tn.scale == 8);
        CHECK(tn.tail_poly == zmat({{-1}, {-4}, {-4}}));
        DenominatorBound b = denominator_constant(tn, s);
        CHECK(b.constant == 8);
        CHECK(b.verified_order == t);
    }

    AlgebraicSeries cusp = cusp_series(8);
    cusp.prefix.resize(5); // one coefficient short of the head
    CHECK_THROWS_AS(tail_normalize(cusp), input_error);
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(tail_normalize({qmat({}), qvec({Rat(1)})}), input_error);
    CHECK_THROWS_AS(tail_normalize({qmat({{Rat(0), Rat(0)}, {}}), qvec({Rat(1)})}),
                    input_error);
    CHECK_THROWS_AS(tail_normalize({qmat({{Rat(1), Rat(2)}}), qvec({Rat(1)})}),
                    input_error);
    CHECK_THROWS_AS(tail_normalize({qmat({{Rat(-1)}, {Rat(1)}}), qvec({})}),
                    input_error);

    // Wrong coefficient: the annihilator no longer vanishes on the prefix.
    AlgebraicSeries wrong = sqrt_series(6);
    wrong.prefix[2] = Rat(1, 8);
    CHECK_THROWS_AS(tail_normalize(wrong), input_error);

    // Squaring the annihilator keeps the prefix a root but kills the
    // derivative along it; the defect order never shows up.
    AlgebraicSeries squared = sqrt_series(6);
    squared.annihilator = qmat({{Rat(1), Rat(2), Rat(1)},
                                {},
                                {Rat(-2), Rat(-2)},
                                {},
                                {Rat(1)}});
    CHECK_THROWS_AS(tail_normalize(squared), input_error);

    // Normalization paired with a prefix it does not match.
    AlgebraicSeries good = sqrt_series(8);
    TailNormalization tn = tail_normalize(good);
    AlgebraicSeries stale = good;
    stale.prefix[8] += 1;
    CHECK_THROWS_AS(denominator_constant(tn, stale), input_error);

    CHECK_THROWS_AS(constant_clears_prefix(sqrt_series(4), 0), input_error);
    CHECK_THROWS_AS(constant_clears_prefix({qmat({}), qvec({})}, 2), input_error);
}

TEST_CASE("alternating series links to the lattice analyzer") {
    // One-variable shadow of the configuration below: coefficients (-1)^m,
    // algebraic with constant 1.
    AlgebraicSeries s = alternating_series(16);
    TailNormalization tn = tail_normalize(s);
    CHECK(tn.scale == 1);
    DenominatorBound b = denominator_constant(tn, s);
    CHECK(b.constant == 1);

    // The exponent (-1/3, -2/3) on the line pairs bracket products into
    // (-1)^m exactly, so the analyzer certifies integrality at every prime
    // away from the denominator 3.
    Configuration cfg = Configuration::from_columns(zmat({{1}, {1}}));
    VecQ v = qvec({Rat(-1, 3), Rat(-2, 3)});
    for (int prime : {2, 5, 7, 11}) {
        Certificate cert = analyze(cfg, v, prime);
        CHECK(cert.status == CertificateStatus::integral_certified);
        CHECK(cert.w_p_v == Rat(prime - 1));
        CHECK(cert.lower_bound == Rat(prime - 1));
    }

    // Contrast: the coefficients of 2F1(1/2, 1/2; 1; X) satisfy no such
    // polynomial relation; a low-degree candidate fails the consistency
    // gate immediately.
    AlgebraicSeries gauss;
    gauss.annihilator = qmat({{Rat(-1), Rat(-1)}, {}, {Rat(1)}});
    gauss.prefix = qvec({Rat(1), Rat(1, 4), Rat(9, 64), Rat(25, 256)});
    CHECK_THROWS_AS(tail_normalize(gauss), input_error);
}
