#pragma once

#include <optional>
#include <vector>

#include "hypint/geometry.hpp"
#include "hypint/lattice.hpp"

namespace hypint {

/*
 * Series engine for a configuration A and a starting exponent v.
 *
 * The formal solution attached to v is sum_l [v]_l pi^(sum l_i) x^(v+l),
 * where l runs over the relation-lattice offsets that preserve the negative
 * support of v and [v]_l is the coordinatewise bracket product
 *
 *   [v_i]_{l_i} = 1                                   l_i = 0
 *                 1/((v_i+1)(v_i+2)...(v_i+l_i))      l_i > 0
 *                 v_i(v_i-1)...(v_i+l_i+1)            l_i < 0.
 *
 * The uniformizer pi only ever enters through its valuation 1/(p-1), so a
 * term is stored as an exact rational together with the pi exponent and the
 * resulting valuation.  Every term carries the valuation twice: once by
 * direct factorization of the coefficient and once through the truncation
 * formula; the two must agree exactly, and tests rely on that.
 */

struct SeriesTerm {
    VecZ l;
    Rat coefficient;       // [v]_l
    Int pi_exponent;       // sum of the entries of l
    Rat valuation;         // ord_p(coefficient) + pi_exponent/(p-1)
    Rat formula_valuation; // truncation route, see valuation_by_formula
};

// Bracket coefficient of a single offset, with both valuation routes filled
// in.  Rejects l outside the relation lattice of cfg and l that changes the
// negative support of v (which is exactly when the product could hit zero
// or a division by zero).
SeriesTerm coefficient(const Configuration& cfg, const VecQ& v, const VecZ& l,
                       const Int& p);

struct FormulaValuation {
    Rat value;
    // Least truncation exponent for which both 0 <= trunc(v_i) + l_i and
    // trunc(v_i) + l_i <= p^b - 1 hold; the value is constant from there on.
    long b = 0;
    // Weight-difference form (b/(p-1)) (w_p(v + l/(1-p^b)) - w_p(v)), filled
    // when the shifted point lands back in [-1, 0]^N.
    std::optional<Rat> orbit_value;
};

// Valuation of [v]_l pi^(sum l_i) without touching the coefficient itself:
// truncate v to b base-p digits and take the digit-sum difference over p-1.
FormulaValuation valuation_by_formula(const Configuration& cfg, const VecQ& v,
                                      const VecZ& l, const Int& p);

// All terms with kernel-basis coefficients in [-order, order], in graded
// coefficient order.  Every term has both valuation fields populated.
std::vector<SeriesTerm> expand(const Configuration& cfg, const VecQ& v, const Int& p,
                               long order, const Int& guard = kDefaultEnumerationGuard);

enum class CertificateStatus { integral_certified, unbounded_certified, undecided };

// A point r in [-1, 0]^N on the same coset as v, strictly lighter, together
// with the exponent b and offset l = (1 - p^b)(r - v) reconstructing it.
struct UnboundedWitness {
    VecQ r;
    long b = 0;
    VecZ l;
};

struct SearchBounds {
    long b_steps = 0;   // exponents b = a, 2a, ..., b_steps * a were tried
    long box_radius = 0;
};

struct Certificate {
    CertificateStatus status = CertificateStatus::undecided;
    Int p;
    Rat w_p_v;
    Rat lower_bound;
    std::optional<UnboundedWitness> witness;
    Int residue_modulus; // denominators of v (and the witness) cleared
    Int residue;         // p mod residue_modulus
    SearchBounds search_bounds;
};

struct AnalyzeOptions {
    long b_steps = 3;
    long box_radius = 8;
    Int guard = kDefaultScanGuard;
};

/**
 * Decide integrality of the series attached to v at p, as far as the finite
 * search allows.
 *
 * Computes the weight of v and the face-coset lower bound.  Equality
 * certifies integrality.  Otherwise a strictly lighter point of the form
 * v + (1-p^b)^{-1} l is searched for; finding one certifies unbounded
 * coefficient valuations, with the graded-first witness kept for
 * determinism.  When neither happens the result is `undecided` and records
 * the explored ranges; no general decision procedure is available.
 *
 * @throws input_error    if an entry of v leaves [-1, 0] or is not p-integral
 * @throws resource_error if an enumeration or scan exceeds its guard
 */
Certificate analyze(const Configuration& cfg, const VecQ& v, const Int& p,
                    const AnalyzeOptions& opts = {});

struct FamilyTerm {
    long c = 0;
    VecZ l;           // (1 - p^(b c)) (r - v)
    Rat predicted;    // (b c / (p-1)) (w_p(r) - w_p(v))
};

// The offset family showing that a lighter point r forces unbounded
// valuations: term c has valuation (b c/(p-1)) (w_p(r) - w_p(v)), where b is
// the least exponent making (1 - p^b)(r - v) integral.  Predictions match
// valuation_by_formula exactly; for r = v the stream is constantly zero.
std::vector<FamilyTerm> unbounded_family(const VecQ& v, const VecQ& r, const Int& p,
                                         long count);

struct ResidueStatement {
    CertificateStatus status = CertificateStatus::undecided;
    Int modulus;
    Int residue;
};

// Extend a certificate to the full congruence class p mod d: the verdict
// holds for every prime in the class (for d = 1, every prime not dividing
// the auxiliary denominators).  d must clear the denominators of v and of
// the witness, otherwise input_error.
ResidueStatement residue_transfer(const Certificate& cert, const Int& d);

/**
 * Formal check that the truncated series solves the hypergeometric system.
 *
 * Euler operators vanish termwise by homogeneity; that identity is verified
 * exactly on every enumerated term.  For each kernel-basis vector the box
 * operator (the difference of the two monomial derivative products) is
 * applied and the coefficient of every reachable monomial is checked to
 * cancel.  Membership of a source term in the series is decided exactly, so
 * each reported monomial is a genuine certificate, not a truncation
 * artifact.  Returns false on the first surviving monomial; that happens
 * precisely when v lacks minimal negative support.
 *
 * @throws input_error if order is too small to reach any monomial
 */
bool verify_hypergeometric_system(const Configuration& cfg, const VecQ& v, long order,
                                  const Int& guard = kDefaultEnumerationGuard);

} // namespace hypint
