#pragma once

#include "hypint/rational.hpp"

namespace hypint {

/*
 * p-adic digit arithmetic.
 *
 * The building blocks:
 *
 *   digit_sum(t, p)        sum of base-p digits of a nonnegative integer
 *   factorial_ord(t, p)    ord_p(t!) = (t - digit_sum(t, p)) / (p - 1)
 *   product_ord(t, k, p)   ord_p(t (t-1) ... (t-k+1)), 0 <= k <= t
 *   padic_truncate(t,p,b)  the unique integer in [0, p^b) congruent to the
 *                          p-integral rational t modulo p^b
 *
 * and the base-h digit shift maps on boxed rationals.  For r in [-1, 0] with
 * reduced denominator D coprime to h, digit_shift_neg(r, h) is the unique
 * r' in [-1, 0] with D r' integral and r - h r' in {0, ..., h-1}; it peels
 * one base-h digit off the expansion of r.  digit_shift_pos is the mirror
 * map on [0, 1] (h r' - r in {0, ..., h-1}).  Both fix the endpoints and
 * are computed by a single modular inversion, never by scanning candidates.
 */

Int digit_sum(const Int& t, const Int& p);
Int factorial_ord(const Int& t, const Int& p);
Int product_ord(const Int& t, const Int& k, const Int& p);

bool padic_integral(const Rat& t, const Int& p);
Int padic_truncate(const Rat& t, const Int& p, const Int& b);

// Multiplicative order of p modulo m; requires gcd(p, m) = 1 and m <= the
// documented cap of 10^6 (order search is linear in the order).  m = 1 -> 1.
Int multiplicative_order(const Int& p, const Int& m);
inline constexpr long kMaxOrderModulus = 1'000'000;

Rat digit_shift_neg(const Rat& r, const Int& h);
Rat digit_shift_pos(const Rat& r, const Int& h);

// k-fold iterates.  The shift maps are bijections on each denominator class,
// so the orbit is purely periodic and k is reduced mod the orbit period.
Rat digit_shift_neg_iter(const Rat& r, const Int& h, const Int& k);
Rat digit_shift_pos_iter(const Rat& r, const Int& h, const Int& k);

struct WeightResult {
    Rat weight;     // sum_i digit_sum((1-p^a) r_i, p) / a
    VecQ per_entry; // digit_sum((1-p^a) r_i, p) / a for each i
    Int order;      // a = multiplicative order of p mod modulus
    Int modulus;    // lcm of the reduced denominators of the entries
};

/**
 * Weight of a vector r with entries in [-1, 0], each entry p-integral.
 *
 * With D' the lcm of the entry denominators and a the multiplicative order
 * of p mod D', every (1 - p^a) r_i is an integer in [0, p^a - 1]; the weight
 * is the total base-p digit sum divided by a.  The value does not depend on
 * which admissible exponent is used (any multiple of a gives the same ratio).
 *
 * @throws input_error if an entry leaves [-1, 0], an entry denominator is
 *         divisible by p, or D' exceeds the modulus cap.
 */
WeightResult padic_weight(const VecQ& r, const Int& p);

// Same value computed along the shift-map orbit:
//   (1 - p)/a * sum_{mu < a} sum_i digit_shift_neg_iter(r_i, p, mu).
// Kept as an independent route; the two must agree exactly.
Rat padic_weight_by_orbit(const VecQ& r, const Int& p);

// Weight with a caller-supplied exponent b, for callers that know (1-p^b) r
// is integral by construction (avoids the order search and its modulus cap).
Rat padic_weight_with_exponent(const VecQ& r, const Int& p, const Int& b);

} // namespace hypint
