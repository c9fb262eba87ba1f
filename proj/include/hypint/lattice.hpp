#pragma once

#include <optional>
#include <vector>

#include "hypint/rational.hpp"

namespace hypint {

/*
 * Integer linear algebra for vector configurations.
 *
 * A Configuration holds N integer vectors a_1, ..., a_N in Z^dim (stored as
 * the rows of `vectors`, so vectors[i] is a_i).  Around it:
 *
 *   kernel_basis      canonical basis of {l in Z^N : sum l_i a_i = 0},
 *                     saturated (a Z-basis of the full relation lattice)
 *   SpanLattice       the subgroup of Z^dim generated by given vectors,
 *                     with membership, coset, and decomposition queries
 *   negative_support  indices i with v_i a negative integer (0-based)
 *   support_preserving_offsets
 *                     all lattice vectors l in a coefficient box with
 *                     negative_support(v + l) == negative_support(v)
 *   minimal_support_check
 *                     searches for l shrinking the negative support; a
 *                     rational-relaxation pass can certify that no such l
 *                     exists at all, otherwise the verdict is relative to
 *                     the searched box
 *
 * All outputs are deterministic: Hermite forms are the canonical ones
 * (positive pivots, entries above a pivot reduced into [0, pivot)), and
 * enumerations are sorted by (sum of |coefficients|, lexicographic).
 */

// Row-style Hermite normal form h = u * m with u unimodular.  Zero rows of
// h sink to the bottom; `rank` counts the nonzero rows.
struct HnfResult {
    MatZ h;
    MatZ u;
    long rank = 0;
};
HnfResult hnf_rows(const MatZ& m);

// Diagonal invariants d_1 | d_2 | ... of the Smith normal form, nonzero
// entries only.  All ones iff the row span is saturated in Z^cols.
VecZ snf_invariants(MatZ m);

struct Configuration {
    long dim = 0;
    MatZ vectors;          // vectors[i] = a_i, each of length dim
    std::optional<VecQ> h; // rational form with h . a_i = 1 for every i

    // Validates shapes and derives h when the system h . a_i = 1 is
    // solvable.  Duplicate vectors are accepted.
    static Configuration from_columns(MatZ columns);

    long count() const { return static_cast<long>(vectors.size()); }
    bool nonconfluent() const { return h.has_value(); }

    // The dim x count matrix whose i-th column is a_i.
    MatZ matrix() const;
};

// Canonical saturated basis of the relation lattice, one row per basis
// vector (possibly none).
MatZ kernel_basis(const Configuration& cfg);

// Subgroup of Z^dim generated by integer vectors, in Hermite form.
class SpanLattice {
public:
    SpanLattice(MatZ generators, long dim);
    static SpanLattice column_span(const Configuration& cfg);

    long dim() const { return dim_; }
    const MatZ& basis() const { return h_; }

    bool contains(const VecZ& x) const;
    // Rational vectors: false unless every coordinate is an integer.
    bool contains(const VecQ& x) const;
    bool same_coset(const VecQ& x, const VecQ& y) const;

    // Integer coefficients over the original generators, or nullopt when x
    // is not in the span.
    std::optional<VecZ> decompose(const VecZ& x) const;

private:
    long dim_ = 0;
    MatZ gens_;
    MatZ h_;                   // nonzero Hermite rows
    MatZ u_;                   // transform rows matching h_
    std::vector<long> pivots_; // pivot column per row of h_
};

// 0-based indices i with v_i a negative integer.
std::vector<long> negative_support(const VecQ& v);

// All integer tuples in [-radius, radius]^k sorted by (sum |c_i|, lex).
// Throws resource_error when (2 radius + 1)^k exceeds the guard.
std::vector<std::vector<long>> graded_tuples(long k, long radius, const Int& guard);

inline const Int kDefaultEnumerationGuard = 4'000'000;

// Lattice vectors l = sum c_r b_r over the kernel basis with coefficients
// in [-box_radius, box_radius] and negative_support(v + l) equal to
// negative_support(v), in graded coefficient order.
std::vector<VecZ> support_preserving_offsets(const Configuration& cfg, const VecQ& v,
                                             long box_radius,
                                             const Int& guard = kDefaultEnumerationGuard);

struct MinimalSupportResult {
    enum class Verdict { minimal, not_minimal, minimal_within_bound };
    Verdict verdict = Verdict::minimal;
    std::optional<VecZ> witness; // offset l with negative_support(v + l)
                                 // a proper subset of negative_support(v)
};

// Box search for a support-shrinking offset.  When none is found, a linear
// relaxation over every proper subset of the support can prove that no
// integer offset shrinks it either; only then is the verdict `minimal`.
MinimalSupportResult minimal_support_check(const Configuration& cfg, const VecQ& v,
                                           long box_radius,
                                           const Int& guard = kDefaultEnumerationGuard);

} // namespace hypint
