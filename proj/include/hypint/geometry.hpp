#pragma once

#include <optional>
#include <vector>

#include "hypint/lattice.hpp"

namespace hypint {

/*
 * Exact polyhedral machinery around the cone generated by a configuration.
 *
 * Everything is rational arithmetic: the H-description comes from a double
 * description run over the dual cone, weights are exact simplex optima, and
 * the lattice-coset minimum is a complete enumeration of the coset points
 * inside the dilation weight(witness) * Delta, which is finite because the
 * origin lies in Delta (dilations are nested).  The minimum over such a
 * coset is therefore attained, even though it is defined as an infimum.
 *
 * Enumerations carry an explicit node-count guard; exceeding it raises
 * resource_error deterministically, independent of thread count.
 */

// H-description of cone(a_1, ..., a_N): facet rows f with f.x >= 0 and
// equation rows g with g.x = 0.  The facet list is irredundant; `dim` is
// the dimension of the cone (ambient minus the number of equations).  A
// zero cone has dim 0 and an identity equation block.
struct ConeDescription {
    long ambient = 0;
    long dim = 0;
    MatZ facets;
    MatZ equations;
};

// Requires ambient dimension <= 8 and at most 64 distinct generators.
ConeDescription cone_facets(const Configuration& cfg);

bool cone_contains(const ConeDescription& cone, const VecQ& x);

// Faces are tracked by their tight facet index sets, which stays correct
// for non-simplicial cones.
struct FaceDescriptor {
    std::vector<long> tight; // sorted facet indices
};

// Facet indices vanishing at x; x must lie in the cone.
std::vector<long> tight_facets(const ConeDescription& cone, const VecQ& x);

// Smallest closed face containing x.  Rejects points outside the cone.
FaceDescriptor smallest_face(const ConeDescription& cone, const VecQ& x);

// True iff x lies in the cone and its tight set equals the face's, i.e.
// x belongs to the relative interior of the face.
bool rel_interior_test(const ConeDescription& cone, const FaceDescriptor& face, const VecQ& x);

// min { sum t_i : sum t_i a_i = gamma, t >= 0 }, or nullopt when gamma is
// outside the cone.  For nonconfluent configurations this equals h(gamma)
// on the cone.
std::optional<Rat> polytope_weight(const Configuration& cfg, const VecQ& gamma);

inline const Int kDefaultScanGuard = 1'000'000;

struct CosetScanResult {
    Rat minimum;
    VecQ minimizer;       // lexicographically least optimal point
    long long minimizer_count = 0;
    long long nodes = 0;  // explored search-tree size, schedule independent
};

// Minimum of the weight over (witness + L) intersected with the relative
// interior of `face`, where L is the lattice spanned by the rows of
// `lattice`.  The witness must itself lie in that relative interior; its
// weight caps the search region.  Parallel workers split the top search
// level; results merge deterministically (minimum, then lexicographic
// minimizer, then counts).
CosetScanResult coset_min_weight(const Configuration& cfg, const ConeDescription& cone,
                                 const FaceDescriptor& face, const VecQ& witness,
                                 const MatZ& lattice, const Int& guard = kDefaultScanGuard);

// Lower bound for the p-adic weight over the coset of v: the scaled sum of
// per-orbit coset minima.  e divides the orbit length a.
struct WeightBound {
    long e = 0;
    VecQ per_mu_terms;
    Rat bound;
};
WeightBound orbit_lower_bound(const Configuration& cfg, const VecQ& v, const Int& p,
                              const Int& guard = kDefaultScanGuard);

// Per-orbit equality between the digit-sum term -sum_i phi^(mu)(v_i) and
// the coset minimum.  All-true certifies p-integrality of the associated
// series, and the verdict transfers to every prime in the same residue
// class modulo the denominator.
struct OrbitEqualityResult {
    std::vector<bool> per_mu; // mu = 0 .. a-1
    bool all = false;
};
OrbitEqualityResult per_orbit_equality(const Configuration& cfg, const VecQ& v, const Int& p,
                                       const Int& guard = kDefaultScanGuard);
bool per_orbit_equality_at(const Configuration& cfg, const VecQ& v, const Int& p, long mu,
                           const Int& guard = kDefaultScanGuard);

// Weight criterion for exponent vectors in {-1, 0}^N with the -1 entries
// in the first `m_count` slots: compares the coset minimum over the column
// span with m_count.  Requires a homogeneity form.
struct SupportWeightCriterion {
    Rat minimum;
    bool holds = false;
};
SupportWeightCriterion support_weight_criterion(const Configuration& cfg, long m_count,
                                                const Int& guard = kDefaultScanGuard);

// True iff `point` is the unique weight minimizer of the relative interior
// of the cone intersected with point + Z^ambient.  `point` must lie in the
// relative interior.
bool unique_interior_minimizer(const Configuration& cfg, const VecQ& point,
                               const Int& guard = kDefaultScanGuard);

} // namespace hypint
