#include "hypint/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "hypint/arith.hpp"
#include "hypint/error.hpp"
#include "hypint/linalg.hpp"
#include "hypint/simplex.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hypint {

namespace {

Rat dot_zq(const VecZ& a, const VecQ& b) {
    if (a.size() != b.size())
        throw internal_error("dot_zq: size mismatch");
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += Rat(a[i]) * b[i];
    return s;
}

// Double description state for the dual cone {y : cons_i . y >= 0}.
// Rays are kept primitive; the lineality block shrinks as constraints
// consume it.
struct DualCone {
    MatQ lin;
    std::vector<VecZ> rays;
};

std::vector<std::uint64_t> tight_masks(const std::vector<VecZ>& rays, const MatZ& cons,
                                       long processed) {
    std::vector<std::uint64_t> out(rays.size(), 0);
    for (std::size_t r = 0; r < rays.size(); ++r)
        for (long c = 0; c < processed; ++c)
            if (dot(cons[c], rays[r]) == 0)
                out[r] |= std::uint64_t(1) << c;
    return out;
}

void normalize_rays(std::vector<VecZ>& rays) {
    for (VecZ& r : rays)
        r = primitive_vector(to_rational_vec(r));
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    rays.erase(std::remove_if(rays.begin(), rays.end(),
                              [](const VecZ& r) {
                                  return std::all_of(r.begin(), r.end(),
                                                     [](const Int& z) { return z == 0; });
                              }),
               rays.end());
}

} // namespace

ConeDescription cone_facets(const Configuration& cfg) {
    if (cfg.dim > 8)
        throw input_error("cone computation supports ambient dimension up to 8");
    const long n = cfg.dim;

    MatZ cons;
    for (const VecZ& a : cfg.vectors) {
        if (std::find(cons.begin(), cons.end(), a) == cons.end())
            cons.push_back(a);
    }
    if (static_cast<long>(cons.size()) > 64)
        throw input_error("cone computation supports at most 64 distinct generators");

    DualCone dc;
    dc.lin.assign(n, VecQ(n, Rat(0)));
    for (long i = 0; i < n; ++i)
        dc.lin[i][i] = 1;

    for (long ci = 0; ci < static_cast<long>(cons.size()); ++ci) {
        const VecZ& g = cons[ci];
        long d0 = -1;
        for (std::size_t l = 0; l < dc.lin.size(); ++l) {
            if (dot_zq(g, dc.lin[l]) != 0) {
                d0 = static_cast<long>(l);
                break;
            }
        }
        if (d0 >= 0) {
            VecQ dir = dc.lin[d0];
            dc.lin.erase(dc.lin.begin() + d0);
            Rat gd = dot_zq(g, dir);
            if (gd < 0) {
                for (Rat& q : dir)
                    q = -q;
                gd = -gd;
            }
            for (VecQ& d : dc.lin) {
                Rat f = dot_zq(g, d) / gd;
                if (f != 0)
                    for (long j = 0; j < n; ++j)
                        d[j] -= f * dir[j];
            }
            std::vector<VecZ> updated;
            for (const VecZ& r : dc.rays) {
                Rat f = Rat(dot(g, r)) / gd;
                VecQ moved = to_rational_vec(r);
                if (f != 0)
                    for (long j = 0; j < n; ++j)
                        moved[j] -= f * dir[j];
                updated.push_back(primitive_vector(moved));
            }
            updated.push_back(primitive_vector(dir));
            dc.rays = std::move(updated);
            normalize_rays(dc.rays);
            continue;
        }
        // g vanishes on the lineality block; split the rays.
        std::vector<Int> side(dc.rays.size());
        bool cuts = false;
        for (std::size_t r = 0; r < dc.rays.size(); ++r) {
            side[r] = dot(g, dc.rays[r]);
            if (side[r] < 0)
                cuts = true;
        }
        if (!cuts)
            continue;
        auto masks = tight_masks(dc.rays, cons, ci);
        std::vector<VecZ> next;
        for (std::size_t r = 0; r < dc.rays.size(); ++r)
            if (side[r] >= 0)
                next.push_back(dc.rays[r]);
        for (std::size_t p = 0; p < dc.rays.size(); ++p) {
            if (side[p] <= 0)
                continue;
            for (std::size_t q = 0; q < dc.rays.size(); ++q) {
                if (side[q] >= 0)
                    continue;
                std::uint64_t common = masks[p] & masks[q];
                bool adjacent = true;
                for (std::size_t o = 0; o < dc.rays.size() && adjacent; ++o) {
                    if (o == p || o == q)
                        continue;
                    if ((masks[o] & common) == common)
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                VecZ combo(n);
                for (long j = 0; j < n; ++j)
                    combo[j] = side[p] * dc.rays[q][j] - side[q] * dc.rays[p][j];
                next.push_back(combo);
            }
        }
        dc.rays = std::move(next);
        normalize_rays(dc.rays);
    }

    ConeDescription cone;
    cone.ambient = n;
    // The dual lineality is the space of equations of the original cone.
    MatQ eqs = dc.lin;
    rref(eqs);
    while (!eqs.empty() && std::all_of(eqs.back().begin(), eqs.back().end(),
                                       [](const Rat& q) { return q == 0; }))
        eqs.pop_back();
    for (const VecQ& row : eqs)
        cone.equations.push_back(primitive_vector(row));
    cone.dim = n - static_cast<long>(cone.equations.size());

    // Facet normals are the dual rays reduced modulo the dual lineality.
    std::vector<VecZ> facets;
    for (const VecZ& r : dc.rays) {
        VecQ red = to_rational_vec(r);
        for (std::size_t e = 0; e < eqs.size(); ++e) {
            long p = 0;
            while (eqs[e][p] == 0)
                ++p;
            Rat f = red[p];
            if (f != 0)
                for (long j = 0; j < n; ++j)
                    red[j] -= f * eqs[e][j];
        }
        facets.push_back(primitive_vector(red));
    }
    normalize_rays(facets);
    cone.facets = std::move(facets);

    for (const VecZ& a : cfg.vectors) {
        for (const VecZ& f : cone.facets)
            if (dot(f, a) < 0)
                throw internal_error("cone_facets: generator violates a facet");
        for (const VecZ& g : cone.equations)
            if (dot(g, a) != 0)
                throw internal_error("cone_facets: generator violates an equation");
    }
    return cone;
}

bool cone_contains(const ConeDescription& cone, const VecQ& x) {
    if (static_cast<long>(x.size()) != cone.ambient)
        throw input_error("cone membership: dimension mismatch");
    for (const VecZ& g : cone.equations)
        if (dot_zq(g, x) != 0)
            return false;
    for (const VecZ& f : cone.facets)
        if (dot_zq(f, x) < 0)
            return false;
    return true;
}

std::vector<long> tight_facets(const ConeDescription& cone, const VecQ& x) {
    std::vector<long> out;
    for (std::size_t f = 0; f < cone.facets.size(); ++f)
        if (dot_zq(cone.facets[f], x) == 0)
            out.push_back(static_cast<long>(f));
    return out;
}

FaceDescriptor smallest_face(const ConeDescription& cone, const VecQ& x) {
    if (!cone_contains(cone, x))
        throw input_error("smallest_face: point is outside the cone");
    return FaceDescriptor{tight_facets(cone, x)};
}

bool rel_interior_test(const ConeDescription& cone, const FaceDescriptor& face, const VecQ& x) {
    return cone_contains(cone, x) && tight_facets(cone, x) == face.tight;
}

std::optional<Rat> polytope_weight(const Configuration& cfg, const VecQ& gamma) {
    if (static_cast<long>(gamma.size()) != cfg.dim)
        throw input_error("weight: dimension mismatch");
    MatQ a(cfg.dim, VecQ(cfg.count()));
    for (long i = 0; i < cfg.count(); ++i)
        for (long j = 0; j < cfg.dim; ++j)
            a[j][i] = Rat(cfg.vectors[i][j]);
    LpSolution sol = lp_solve(a, gamma, VecQ(cfg.count(), Rat(1)));
    if (sol.status == LpStatus::infeasible)
        return std::nullopt;
    if (sol.status != LpStatus::optimal)
        throw internal_error("weight LP cannot be unbounded");
    return sol.objective;
}

namespace {

struct ScanContext {
    const Configuration& cfg;
    const ConeDescription& cone;
    const std::vector<long>& target_tight;
    const MatZ& lattice;
    long k = 0;
    Rat cap;
    long guard = 0;
};

struct ScanAccum {
    bool found = false;
    bool overflow = false;
    Rat best;
    VecQ arg;
    long long count = 0;
    long long nodes = 0;
};

void merge_accum(ScanAccum& into, const ScanAccum& from) {
    into.nodes += from.nodes;
    into.overflow = into.overflow || from.overflow;
    if (!from.found)
        return;
    if (!into.found || from.best < into.best) {
        into.found = true;
        into.best = from.best;
        into.arg = from.arg;
        into.count = from.count;
    } else if (from.best == into.best) {
        into.count += from.count;
        if (lex_less(from.arg, into.arg))
            into.arg = from.arg;
    }
}

// Range of the level-th lattice coefficient compatible with staying inside
// the dilation cap * Delta, with later coefficients relaxed to reals.
// Returns false when the relaxation is already infeasible.
bool level_bounds(const ScanContext& ctx, long level, const VecQ& x, Int& lo, Int& hi) {
    const long nfree = ctx.k - level;
    const long nvars = ctx.cfg.count() + nfree;
    LpProblem prob(nvars);
    prob.free_var.assign(nvars, false);
    for (long z = 0; z < nfree; ++z)
        prob.free_var[ctx.cfg.count() + z] = true;
    for (long j = 0; j < ctx.cfg.dim; ++j) {
        VecQ row(nvars);
        for (long i = 0; i < ctx.cfg.count(); ++i)
            row[i] = Rat(ctx.cfg.vectors[i][j]);
        for (long z = 0; z < nfree; ++z)
            row[ctx.cfg.count() + z] = -Rat(ctx.lattice[level + z][j]);
        prob.constraint(std::move(row), 0, x[j]);
    }
    VecQ budget(nvars);
    for (long i = 0; i < ctx.cfg.count(); ++i)
        budget[i] = 1;
    prob.constraint(std::move(budget), -1, ctx.cap);

    prob.objective.assign(nvars, Rat(0));
    prob.objective[ctx.cfg.count()] = 1;
    LpOutcome down = lp_solve(prob);
    if (down.status == LpStatus::infeasible)
        return false;
    if (down.status != LpStatus::optimal)
        throw internal_error("coset scan: unbounded coefficient range");
    prob.objective[ctx.cfg.count()] = -1;
    LpOutcome up = lp_solve(prob);
    if (up.status != LpStatus::optimal)
        throw internal_error("coset scan: lost feasibility flipping objective");
    lo = ceil_int(down.objective);
    hi = floor_int(-up.objective);
    return true;
}

void scan_leaf(const ScanContext& ctx, const VecQ& x, ScanAccum& acc) {
    if (!cone_contains(ctx.cone, x) || tight_facets(ctx.cone, x) != ctx.target_tight)
        return;
    Rat w;
    if (ctx.cfg.nonconfluent()) {
        w = dot(*ctx.cfg.h, x);
    } else {
        auto opt = polytope_weight(ctx.cfg, x);
        if (!opt)
            throw internal_error("coset scan: cone member without a weight");
        w = *opt;
    }
    if (!acc.found || w < acc.best) {
        acc.found = true;
        acc.best = w;
        acc.arg = x;
        acc.count = 1;
    } else if (w == acc.best) {
        ++acc.count;
        if (lex_less(x, acc.arg))
            acc.arg = x;
    }
}

void scan(const ScanContext& ctx, long level, const VecQ& x, ScanAccum& acc) {
    if (++acc.nodes > ctx.guard) {
        acc.overflow = true;
        return;
    }
    if (level == ctx.k) {
        scan_leaf(ctx, x, acc);
        return;
    }
    Int lo, hi;
    if (!level_bounds(ctx, level, x, lo, hi))
        return;
    for (Int z = lo; z <= hi && !acc.overflow; ++z) {
        VecQ next = x;
        for (long j = 0; j < ctx.cfg.dim; ++j)
            next[j] += Rat(z * ctx.lattice[level][j]);
        scan(ctx, level + 1, next, acc);
    }
}

} // namespace

CosetScanResult coset_min_weight(const Configuration& cfg, const ConeDescription& cone,
                                 const FaceDescriptor& face, const VecQ& witness,
                                 const MatZ& lattice, const Int& guard) {
    if (static_cast<long>(witness.size()) != cfg.dim)
        throw input_error("coset scan: witness dimension mismatch");
    for (const VecZ& row : lattice)
        if (static_cast<long>(row.size()) != cfg.dim)
            throw input_error("coset scan: lattice row dimension mismatch");
    if (!rel_interior_test(cone, face, witness))
        throw input_error("coset scan: witness is not in the face's relative interior");
    auto cap = polytope_weight(cfg, witness);
    if (!cap)
        throw internal_error("coset scan: witness weight is undefined");

    ScanContext ctx{cfg, cone, face.tight, lattice,
                    static_cast<long>(lattice.size()), *cap,
                    guard.fits_slong_p() ? guard.get_si()
                                         : std::numeric_limits<long>::max()};

    ScanAccum total;
    if (ctx.k == 0) {
        scan(ctx, 0, witness, total);
    } else {
        ++total.nodes;
        Int lo, hi;
        if (level_bounds(ctx, 0, witness, lo, hi)) {
            Int span = hi - lo + 1;
            if (span > ctx.guard)
                throw resource_error("coset scan: top-level range of " + span.get_str() +
                                     " branches exceeds the guard");
            const long width = span.get_si();
            std::vector<ScanAccum> per(width);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
            for (long idx = 0; idx < width; ++idx) {
                Int z = lo + idx;
                VecQ x = witness;
                for (long j = 0; j < cfg.dim; ++j)
                    x[j] += Rat(z * lattice[0][j]);
                scan(ctx, 1, x, per[idx]);
            }
            for (const ScanAccum& a : per)
                merge_accum(total, a);
        }
    }
    if (total.overflow || total.nodes > ctx.guard)
        throw resource_error("coset scan explored more than " +
                             Int(ctx.guard).get_str() + " nodes");
    if (!total.found)
        throw internal_error("coset scan: witness leaf was not recovered");
    return CosetScanResult{total.best, total.arg, total.count, total.nodes};
}

namespace {

VecQ orbit_offset(const Configuration& cfg, const VecQ& v, const Int& p, long mu) {
    VecQ beta(cfg.dim, Rat(0));
    for (long i = 0; i < cfg.count(); ++i) {
        Rat phi = digit_shift_neg_iter(v[i], p, Int(mu));
        for (long j = 0; j < cfg.dim; ++j)
            beta[j] += phi * Rat(cfg.vectors[i][j]);
    }
    return beta;
}

VecQ negated(const VecQ& x) {
    VecQ out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = -x[i];
    return out;
}

} // namespace

WeightBound orbit_lower_bound(const Configuration& cfg, const VecQ& v, const Int& p,
                              const Int& guard) {
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("orbit bound: v has the wrong length");
    WeightResult wr = padic_weight(v, p); // also validates the box and p-integrality
    const long a = wr.order.get_si();

    const VecQ beta = orbit_offset(cfg, v, p, 0);
    SpanLattice za = SpanLattice::column_span(cfg);
    long e = 0;
    for (long mu = 1; mu <= a; ++mu) {
        if (za.same_coset(orbit_offset(cfg, v, p, mu), beta)) {
            e = mu;
            break;
        }
    }
    if (e == 0 || a % e != 0)
        throw internal_error("orbit bound: period does not divide the orbit length");

    ConeDescription cone = cone_facets(cfg);
    FaceDescriptor face = smallest_face(cone, negated(beta));

    WeightBound out;
    out.e = e;
    Rat sum;
    for (long mu = 0; mu < e; ++mu) {
        VecQ witness = negated(orbit_offset(cfg, v, p, mu));
        if (!rel_interior_test(cone, face, witness))
            throw internal_error("orbit bound: offset left the face's relative interior");
        Rat term = coset_min_weight(cfg, cone, face, witness, za.basis(), guard).minimum;
        out.per_mu_terms.push_back(term);
        sum += term;
    }
    out.bound = Rat(p - 1) * sum / Rat(e);
    return out;
}

OrbitEqualityResult per_orbit_equality(const Configuration& cfg, const VecQ& v, const Int& p,
                                       const Int& guard) {
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("orbit equality: v has the wrong length");
    WeightResult wr = padic_weight(v, p);
    const long a = wr.order.get_si();

    const VecQ beta = orbit_offset(cfg, v, p, 0);
    SpanLattice za = SpanLattice::column_span(cfg);
    ConeDescription cone = cone_facets(cfg);
    FaceDescriptor face = smallest_face(cone, negated(beta));

    OrbitEqualityResult out;
    out.all = true;
    for (long mu = 0; mu < a; ++mu) {
        Rat lhs;
        for (long i = 0; i < cfg.count(); ++i)
            lhs -= digit_shift_neg_iter(v[i], p, Int(mu));
        VecQ witness = negated(orbit_offset(cfg, v, p, mu));
        if (!rel_interior_test(cone, face, witness))
            throw internal_error("orbit equality: offset left the face's relative interior");
        Rat min = coset_min_weight(cfg, cone, face, witness, za.basis(), guard).minimum;
        out.per_mu.push_back(lhs == min);
        out.all = out.all && lhs == min;
    }
    return out;
}

bool per_orbit_equality_at(const Configuration& cfg, const VecQ& v, const Int& p, long mu,
                           const Int& guard) {
    if (mu < 0)
        throw input_error("orbit equality: negative orbit index");
    OrbitEqualityResult res = per_orbit_equality(cfg, v, p, guard);
    return res.per_mu[mu % res.per_mu.size()];
}

SupportWeightCriterion support_weight_criterion(const Configuration& cfg, long m_count,
                                                const Int& guard) {
    if (!cfg.nonconfluent())
        throw input_error("support weight criterion needs a homogeneity form");
    if (m_count < 0 || m_count > cfg.count())
        throw input_error("support weight criterion: count out of range");
    VecQ witness(cfg.dim, Rat(0));
    for (long i = 0; i < m_count; ++i)
        for (long j = 0; j < cfg.dim; ++j)
            witness[j] += Rat(cfg.vectors[i][j]);
    ConeDescription cone = cone_facets(cfg);
    FaceDescriptor face = smallest_face(cone, witness);
    SpanLattice za = SpanLattice::column_span(cfg);
    CosetScanResult res = coset_min_weight(cfg, cone, face, witness, za.basis(), guard);
    return SupportWeightCriterion{res.minimum, res.minimum == Rat(m_count)};
}

bool unique_interior_minimizer(const Configuration& cfg, const VecQ& point, const Int& guard) {
    ConeDescription cone = cone_facets(cfg);
    FaceDescriptor face = smallest_face(cone, point);
    if (!face.tight.empty())
        throw input_error("uniqueness check: point is not interior to the cone");
    MatZ identity(cfg.dim, VecZ(cfg.dim, Int(0)));
    for (long j = 0; j < cfg.dim; ++j)
        identity[j][j] = 1;
    CosetScanResult res = coset_min_weight(cfg, cone, face, point, identity, guard);
    return res.minimizer_count == 1 && res.minimizer == point;
}

} // namespace hypint
