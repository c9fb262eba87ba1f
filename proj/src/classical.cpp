#include "hypint/classical.hpp"

#include <algorithm>
#include <string>

#include "hypint/arith.hpp"
#include "hypint/error.hpp"
#include "hypint/linalg.hpp"
#include "hypint/simplex.hpp"

namespace hypint {

namespace {

// Shape and range checks shared by every entry point.  make_spec fills the
// modulus before running them, so a spec that passed once keeps passing.
void validate(const ClassicalSpec& spec) {
    const long jn = static_cast<long>(spec.upper_exponents.size());
    const long kn = static_cast<long>(spec.lower_exponents.size());
    if (jn == 0 || kn == 0)
        throw input_error("classical spec: needs upper and lower Pochhammer forms");
    const long r = static_cast<long>(spec.upper_exponents[0].size());
    if (r == 0)
        throw input_error("classical spec: forms need at least one variable");
    for (const MatZ* m : {&spec.upper_exponents, &spec.lower_exponents}) {
        for (const VecZ& row : *m) {
            if (static_cast<long>(row.size()) != r)
                throw input_error("classical spec: coefficient rows must share one length");
            bool zero = true;
            for (const Int& c : row) {
                if (c < 0)
                    throw input_error("classical spec: coefficients must be nonnegative");
                if (c != 0)
                    zero = false;
            }
            if (zero)
                throw input_error("classical spec: zero coefficient row");
        }
    }
    for (long s = 0; s < r; ++s) {
        Int up, down;
        for (const VecZ& row : spec.upper_exponents)
            up += row[s];
        for (const VecZ& row : spec.lower_exponents)
            down += row[s];
        if (up == 0)
            throw input_error("classical spec: a variable appears in no form");
        if (up != down)
            throw input_error("classical spec: upper and lower column sums must agree");
    }
    if (static_cast<long>(spec.upper.size()) != jn ||
        static_cast<long>(spec.lower.size()) != kn)
        throw input_error("classical spec: one parameter per form");
    for (const VecQ* params : {&spec.upper, &spec.lower})
        for (const Rat& q : *params)
            if (q <= 0 || q > 1)
                throw input_error("classical spec: parameters must lie in (0, 1]");
    VecQ all = spec.upper;
    all.insert(all.end(), spec.lower.begin(), spec.lower.end());
    Int dens = lcm_of_denominators(all);
    if (spec.modulus <= 0 || spec.modulus % dens != 0)
        throw input_error("classical spec: modulus must be a positive multiple of "
                          "the parameter denominator lcm " + dens.get_str());
}

void check_tuples(const ClassicalSpec& spec, const VecQ& upper, const VecQ& lower) {
    if (upper.size() != spec.upper.size() || lower.size() != spec.lower.size())
        throw input_error("xi: one parameter per form");
    for (const VecQ* params : {&upper, &lower})
        for (const Rat& q : *params)
            if (q <= 0 || q > 1)
                throw input_error("xi: parameters must lie in (0, 1]");
    VecQ all = upper;
    all.insert(all.end(), lower.begin(), lower.end());
    if (spec.modulus % lcm_of_denominators(all) != 0)
        throw input_error("xi: parameter denominators must divide the family modulus");
}

Rat pochhammer(const Rat& x, const Int& k) {
    Rat out(1);
    Rat factor = x;
    for (Int i = 0; i < k; ++i) {
        out *= factor;
        factor += 1;
    }
    return out;
}

Rat form_value(const VecZ& row, const VecQ& x) {
    Rat s;
    for (std::size_t i = 0; i < row.size(); ++i)
        s += Rat(row[i]) * x[i];
    return s;
}

VecQ negated(const VecQ& x) {
    VecQ out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = -x[i];
    return out;
}

Int xi_value(const ClassicalSpec& spec, const VecQ& upper, const VecQ& lower,
             const VecQ& x) {
    Int out;
    for (std::size_t j = 0; j < upper.size(); ++j)
        out += floor_int(Rat(1) - upper[j] + form_value(spec.upper_exponents[j], x));
    for (std::size_t k = 0; k < lower.size(); ++k)
        out -= floor_int(Rat(1) - lower[k] + form_value(spec.lower_exponents[k], x));
    return out;
}

// One-variable minimum: xi is constant between consecutive breakpoints of
// its floors and right-continuous, so evaluating every breakpoint inside
// [0, 1) is exhaustive.  Ties resolve to the least point.
XiMinimum sweep_minimum(const ClassicalSpec& spec, const VecQ& upper, const VecQ& lower,
                        const Int& guard) {
    Int budget = 1;
    for (const MatZ* m : {&spec.upper_exponents, &spec.lower_exponents})
        for (const VecZ& row : *m)
            budget += row[0] + 1;
    if (budget > guard)
        throw resource_error("breakpoint sweep over " + budget.get_str() +
                             " points exceeds the guard");

    std::vector<Rat> points{Rat(0)};
    auto add_breaks = [&points](const MatZ& rows, const VecQ& params) {
        for (std::size_t f = 0; f < rows.size(); ++f) {
            const Int& c = rows[f][0];
            for (Int z = 0; z <= c; ++z) {
                Rat x = (params[f] - 1 + Rat(z)) / Rat(c);
                if (x >= 0 && x < 1)
                    points.push_back(x);
            }
        }
    };
    add_breaks(spec.upper_exponents, upper);
    add_breaks(spec.lower_exponents, lower);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    XiMinimum best;
    bool found = false;
    for (const Rat& x : points) {
        Int value = xi_value(spec, upper, lower, {x});
        if (!found || value < best.minimum) {
            found = true;
            best.minimum = value;
            best.minimizer = {x};
        }
    }
    return best;
}

// Multivariate minimum through the attached configuration: xi values are
// exactly the weight gaps over the integer coset of the interior point
// -beta, so the coset scan finds the minimum, and a margin-maximizing LP
// rebuilds a preimage point of the cube from the optimal coset point.
XiMinimum lattice_minimum(const ClassicalSpec& spec, const VecQ& upper, const VecQ& lower,
                          const Int& guard) {
    ClassicalSpec shifted = spec;
    shifted.upper = upper;
    shifted.lower = lower;
    BuiltSystem built = build_configuration(shifted);
    const long r = spec.vars();
    const long jn = spec.upper_count();
    const long n = built.cfg.dim;
    const long count = built.cfg.count();

    VecQ witness = negated(built.beta);
    ConeDescription cone = cone_facets(built.cfg);
    FaceDescriptor face = smallest_face(cone, witness);
    if (!face.tight.empty())
        throw internal_error("xi minimum: -beta is not interior");
    MatZ identity(n, VecZ(n, Int(0)));
    for (long j = 0; j < n; ++j)
        identity[j][j] = 1;
    CosetScanResult scan =
        coset_min_weight(built.cfg, cone, face, witness, identity, guard);

    Rat base;
    for (const Rat& w : witness)
        base += w;
    Rat gap = scan.minimum - base;
    if (!is_integer(gap))
        throw internal_error("xi minimum: weight gap is not an integer");

    // Decompose the optimal coset point as sum z_i a_i with z_i in (0, 1]
    // over the first r + J vectors and in [0, 1) over the rest; the last r
    // coordinates of any such z form a cube point attaining the minimum.
    // The margin variable keeps the one-sided strict bounds exact.
    LpProblem prob(count + 1);
    prob.objective.assign(count + 1, Rat(0));
    prob.objective[count] = -1;
    for (long j = 0; j < n; ++j) {
        VecQ row(count + 1, Rat(0));
        for (long i = 0; i < count; ++i)
            row[i] = Rat(built.cfg.vectors[i][j]);
        prob.constraint(std::move(row), 0, scan.minimizer[j]);
    }
    for (long i = 0; i < count; ++i) {
        VecQ above(count + 1, Rat(0));
        above[i] = 1;
        if (i < r + jn) {
            above[count] = -1;
            prob.constraint(std::move(above), 1, Rat(0));
            VecQ below(count + 1, Rat(0));
            below[i] = 1;
            prob.constraint(std::move(below), -1, Rat(1));
        } else {
            above[count] = 1;
            prob.constraint(std::move(above), -1, Rat(1));
        }
    }
    LpOutcome sol = lp_solve(prob);
    if (sol.status != LpStatus::optimal || sol.x[count] <= 0)
        throw internal_error("xi minimum: coset point has no half-open decomposition");

    XiMinimum best;
    best.minimum = floor_int(gap);
    best.minimizer.assign(sol.x.begin() + n, sol.x.begin() + n + r);
    if (xi_value(spec, upper, lower, best.minimizer) != best.minimum)
        throw internal_error("xi minimum: recovered point misses the minimum");
    return best;
}

} // namespace

ClassicalSpec make_spec(MatZ upper_exponents, MatZ lower_exponents, VecQ upper,
                        VecQ lower, const Int& modulus) {
    ClassicalSpec spec{std::move(upper_exponents), std::move(lower_exponents),
                       std::move(upper), std::move(lower), modulus};
    if (spec.modulus == 0) {
        VecQ all = spec.upper;
        all.insert(all.end(), spec.lower.begin(), spec.lower.end());
        spec.modulus = lcm_of_denominators(all);
    }
    validate(spec);
    return spec;
}

BuiltSystem build_configuration(const ClassicalSpec& spec) {
    validate(spec);
    const long r = spec.vars();
    const long jn = spec.upper_count();
    const long kn = spec.lower_count();
    const long n = r + jn + kn;

    MatZ columns;
    for (long i = 0; i < n; ++i) {
        VecZ e(n, Int(0));
        e[i] = 1;
        columns.push_back(std::move(e));
    }
    for (long s = 0; s < r; ++s) {
        VecZ a(n, Int(0));
        a[s] = 1;
        for (long j = 0; j < jn; ++j)
            a[r + j] = spec.upper_exponents[j][s];
        for (long k = 0; k < kn; ++k)
            a[r + jn + k] = -spec.lower_exponents[k][s];
        columns.push_back(std::move(a));
    }

    BuiltSystem out;
    out.cfg = Configuration::from_columns(std::move(columns));
    if (!out.cfg.nonconfluent())
        throw internal_error("classical configuration lost its homogeneity form");

    out.v.assign(n + r, Rat(0));
    for (long s = 0; s < r; ++s)
        out.v[s] = -1;
    for (long j = 0; j < jn; ++j)
        out.v[r + j] = -spec.upper[j];
    for (long k = 0; k < kn; ++k)
        out.v[r + jn + k] = spec.lower[k] - 1;

    out.beta.assign(n, Rat(0));
    for (long i = 0; i < out.cfg.count(); ++i)
        for (long j = 0; j < n; ++j)
            out.beta[j] += out.v[i] * Rat(out.cfg.vectors[i][j]);
    return out;
}

Rat F_coefficient(const ClassicalSpec& spec, const VecZ& m) {
    validate(spec);
    if (static_cast<long>(m.size()) != spec.vars())
        throw input_error("classical coefficient: multi-index has the wrong length");
    for (const Int& e : m)
        if (e < 0)
            throw input_error("classical coefficient: multi-index must be nonnegative");
    Rat out(1);
    for (std::size_t j = 0; j < spec.upper.size(); ++j)
        out *= pochhammer(spec.upper[j], dot(spec.upper_exponents[j], m));
    for (std::size_t k = 0; k < spec.lower.size(); ++k)
        out /= pochhammer(spec.lower[k], dot(spec.lower_exponents[k], m));
    return out;
}

Int xi_eval(const VecQ& upper, const VecQ& lower, const ClassicalSpec& spec,
            const VecQ& x) {
    validate(spec);
    check_tuples(spec, upper, lower);
    if (static_cast<long>(x.size()) != spec.vars())
        throw input_error("xi: point has the wrong length");
    return xi_value(spec, upper, lower, x);
}

XiMinimum xi_minimum(const VecQ& upper, const VecQ& lower, const ClassicalSpec& spec,
                     const Int& guard) {
    validate(spec);
    check_tuples(spec, upper, lower);
    if (spec.vars() == 1)
        return sweep_minimum(spec, upper, lower, guard);
    return lattice_minimum(spec, upper, lower, guard);
}

Int xi_grid_sample(const VecQ& upper, const VecQ& lower, const ClassicalSpec& spec,
                   long resolution) {
    validate(spec);
    check_tuples(spec, upper, lower);
    if (resolution < 1)
        throw input_error("grid sample needs a positive resolution");
    const long r = spec.vars();
    Int total = 1;
    for (long s = 0; s < r; ++s) {
        total *= resolution;
        if (total > 1'000'000)
            throw resource_error("grid sample of " + Int(resolution).get_str() + "^" +
                                 std::to_string(r) + " points exceeds the cap");
    }
    std::vector<long> digits(r, 0);
    VecQ x(r, Rat(0));
    Int best;
    bool found = false;
    for (;;) {
        for (long s = 0; s < r; ++s) {
            x[s] = Rat(digits[s], resolution);
            x[s].canonicalize();
        }
        Int value = xi_value(spec, upper, lower, x);
        if (!found || value < best) {
            found = true;
            best = value;
        }
        long s = 0;
        while (s < r && ++digits[s] == resolution)
            digits[s++] = 0;
        if (s == r)
            break;
    }
    return best;
}

IntegralityCheck residue_class_check(const ClassicalSpec& spec, const Int& h,
                                     const Int& guard) {
    validate(spec);
    if (h <= 0)
        throw input_error("residue class must be positive");
    if (gcd(h, spec.modulus) != 1)
        throw input_error("residue class is not prime to the modulus");
    const long a = multiplicative_order(h, spec.modulus).get_si();

    IntegralityCheck out;
    out.holds = true;
    for (long mu = 0; mu < a; ++mu) {
        XiTrace trace;
        trace.mu = mu;
        for (const Rat& theta : spec.upper)
            trace.upper.push_back(digit_shift_pos_iter(theta, h, Int(mu)));
        for (const Rat& sigma : spec.lower)
            trace.lower.push_back(digit_shift_pos_iter(sigma, h, Int(mu)));
        XiMinimum xm = xi_minimum(trace.upper, trace.lower, spec, guard);
        trace.minimum = xm.minimum;
        trace.minimizer = xm.minimizer;
        out.holds = out.holds && trace.minimum >= 0;
        out.per_mu.push_back(std::move(trace));
    }
    return out;
}

ResidueClassSurvey residue_survey(const ClassicalSpec& spec, const Int& guard) {
    validate(spec);
    ResidueClassSurvey out;
    out.holds = true;
    for (Int h = 1; h <= spec.modulus; ++h) {
        if (gcd(h, spec.modulus) != 1)
            continue;
        ClassTrace trace{h, residue_class_check(spec, h, guard)};
        out.holds = out.holds && trace.result.holds;
        out.classes.push_back(std::move(trace));
    }
    out.rescalings_exist = out.holds;
    return out;
}

bool minimum_route_agreement(const ClassicalSpec& spec, long mu, const Int& p,
                             const Int& guard) {
    validate(spec);
    if (spec.vars() != 1)
        throw input_error("route agreement probe is one-variable only");
    if (mu < 0)
        throw input_error("route agreement: negative orbit index");
    if (!is_prime(p))
        throw input_error("route agreement needs a prime");
    if (gcd(p, spec.modulus) != 1)
        throw input_error("route agreement: prime divides the modulus");

    BuiltSystem built = build_configuration(spec);
    bool lattice_route = per_orbit_equality_at(built.cfg, built.v, p, mu, guard);

    VecQ upper, lower;
    for (const Rat& theta : spec.upper)
        upper.push_back(digit_shift_pos_iter(theta, p, Int(mu)));
    for (const Rat& sigma : spec.lower)
        lower.push_back(digit_shift_pos_iter(sigma, p, Int(mu)));
    bool sweep_route = xi_minimum(upper, lower, spec, guard).minimum >= 0;
    return lattice_route == sweep_route;
}

} // namespace hypint
