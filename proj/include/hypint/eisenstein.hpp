#pragma once

#include "hypint/rational.hpp"

namespace hypint {

/*
 * Denominator growth of one-variable algebraic power series.
 *
 * For an algebraic f = sum c_m X^m the coefficient denominators grow at
 * most geometrically: there is a positive integer N with N^m c_m integral
 * for every m > 0.  The constructive route splits f into a head of degree
 * M and a shifted tail
 *
 *   tail(X) = sum_{m > M} c_m X^(m - M'),
 *
 * which satisfies scale * tail = X * F0(X, tail) with an integer scale and
 * an integer bivariate F0.  Matching coefficients in that equation gives
 * the recursion that bounds the denominators; N is assembled from |scale|
 * and a finite head correction.
 *
 * Bivariate polynomials are stored as rows indexed by the Z-power: row j
 * lists the X-coefficients of Z^j, constant term first.  Rows may have
 * unequal lengths; missing entries are zero.
 */

struct AlgebraicSeries {
    MatQ annihilator; // F(X, Z), nonzero, of minimal Z-degree for f
    VecQ prefix;      // c_0 .. c_T with F(X, head) = 0 mod X^(T+1)
};

struct TailNormalization {
    long mu = 0;          // X-adic order of dF/dZ along the series
    long head_degree = 0; // M = 2 mu + 1
    long tail_shift = 0;  // M' = mu + 1
    Int scale;            // nonzero integer in scale * tail = X * F0(X, tail)
    MatZ tail_poly;       // F0, integer coefficients

    // Construction intermediates, kept because they are checkable facts:
    // dF/dZ(X, head) = X^mu * unit_part with unit_part(0) != 0,
    // F(X, head) = X^(head_degree + 1) * defect, and remainder is the
    // order-two Taylor rest of F at the head.  tail_poly_q is the rational
    // tail polynomial before denominator clearing.
    VecQ unit_part;
    VecQ defect;
    MatQ remainder;
    MatQ tail_poly_q;
};

/**
 * Head/tail split of an algebraic series.
 *
 * Checks that the annihilator vanishes on the prefix to order T+1, reads
 * off mu from the first nonzero coefficient of dF/dZ along the prefix,
 * builds the tail equation, and verifies it against the prefix exactly.
 *
 * @throws input_error if the annihilator is zero, does not involve Z, does
 *         not annihilate the prefix, or the prefix is too short (shorter
 *         than 2 mu + 2, or all of dF/dZ cancels on it)
 */
TailNormalization tail_normalize(const AlgebraicSeries& s);

struct DenominatorBound {
    Int constant;        // N with N^m c_m integral, backed by the recursion
    Int prefix_minimal;  // greedy reduction of N; valid on the prefix only
    long verified_order; // both constants re-checked against c_1 .. c_T
};

/**
 * Denominator constant N with N^m c_m integral for all m > 0.
 *
 * Runs the coefficient recursion of the tail equation, confirming that
 * |scale|^m clears the tail coefficient denominators, then widens N so the
 * finitely many head coefficients clear too.  The recursion values are
 * compared against the prefix entry by entry; a mismatch means the prefix
 * is not the expansion of a root of the annihilator.
 *
 * The returned constant is valid for every m by the tail equation; the
 * greedy prefix_minimal drops prime factors while c_1 .. c_T keep passing
 * and carries no guarantee beyond the prefix.
 *
 * @throws input_error on recursion mismatch
 */
DenominatorBound denominator_constant(const TailNormalization& tn,
                                      const AlgebraicSeries& s);

// Direct check that n^m c_m is integral for m = 1 .. T.  n must be >= 1.
bool constant_clears_prefix(const AlgebraicSeries& s, const Int& n);

} // namespace hypint
