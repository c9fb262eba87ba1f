#include "hypint/series.hpp"

#include <algorithm>
#include <set>

#include "hypint/arith.hpp"
#include "hypint/error.hpp"

namespace hypint {

namespace {

constexpr long kMaxTruncationExponent = 4096;

void require_prime(const Int& p) {
    if (!is_prime(p))
        throw input_error("p must be prime");
}

bool in_kernel(const Configuration& cfg, const VecZ& l) {
    for (long j = 0; j < cfg.dim; ++j) {
        Int s;
        for (long i = 0; i < cfg.count(); ++i)
            s += l[i] * cfg.vectors[i][j];
        if (s != 0)
            return false;
    }
    return true;
}

VecQ shifted_point(const VecQ& v, const VecZ& l) {
    VecQ out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] + Rat(l[i]);
    return out;
}

void check_offset(const Configuration& cfg, const VecQ& v, const VecZ& l) {
    if (static_cast<long>(v.size()) != cfg.count() ||
        static_cast<long>(l.size()) != cfg.count())
        throw input_error("vector length does not match the configuration");
    if (!in_kernel(cfg, l))
        throw input_error("offset is not a relation of the configuration");
    if (negative_support(shifted_point(v, l)) != negative_support(v))
        throw input_error("offset changes the negative support");
}

// One coordinate of [v]_l.  Within the fixed negative support no factor can
// vanish, so the products below are invertible.
Rat bracket_factor(const Rat& vi, const Int& li) {
    Rat out(1);
    if (li > 0) {
        Rat den(1);
        for (Int j = 1; j <= li; ++j)
            den *= vi + Rat(j);
        out = Rat(1) / den;
    } else if (li < 0) {
        for (Int j = 0; j > li; --j)
            out *= vi + Rat(j);
    }
    return out;
}

Rat bracket_product(const VecQ& v, const VecZ& l) {
    Rat out(1);
    for (std::size_t i = 0; i < v.size(); ++i)
        out *= bracket_factor(v[i], l[i]);
    return out;
}

Rat falling(const Rat& x, const Int& k) {
    Rat out(1);
    for (Int j = 0; j < k; ++j)
        out *= x - Rat(j);
    return out;
}

Int power(const Int& p, long b) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(b));
    return out;
}

bool in_unit_box(const VecQ& x) {
    for (const Rat& q : x)
        if (q < -1 || q > 0)
            return false;
    return true;
}

} // namespace

SeriesTerm coefficient(const Configuration& cfg, const VecQ& v, const VecZ& l,
                       const Int& p) {
    require_prime(p);
    check_offset(cfg, v, l);
    SeriesTerm t;
    t.l = l;
    t.coefficient = bracket_product(v, l);
    for (const Int& li : l)
        t.pi_exponent += li;
    t.valuation = Rat(padic_ord(t.coefficient, p)) + Rat(t.pi_exponent) / Rat(p - 1);
    t.formula_valuation = valuation_by_formula(cfg, v, l, p).value;
    return t;
}

FormulaValuation valuation_by_formula(const Configuration& cfg, const VecQ& v,
                                      const VecZ& l, const Int& p) {
    require_prime(p);
    check_offset(cfg, v, l);
    const long n = cfg.count();
    for (const Rat& q : v)
        if (!padic_integral(q, p))
            throw input_error("starting exponent is not p-integral");

    Int pb(1);
    for (long b = 1; b <= kMaxTruncationExponent; ++b) {
        pb *= p;
        VecZ tr(n);
        bool ok = true;
        for (long i = 0; i < n && ok; ++i) {
            tr[i] = padic_truncate(v[i], p, b);
            Int s = tr[i] + l[i];
            if (s < 0 || s >= pb)
                ok = false;
        }
        if (!ok)
            continue;

        Int before, after;
        for (long i = 0; i < n; ++i) {
            before += digit_sum(tr[i], p);
            after += digit_sum(tr[i] + l[i], p);
        }
        FormulaValuation out;
        out.value = Rat(after - before) / Rat(p - 1);
        out.b = b;

        // Cross-route: shift the whole point by l/(1-p^b) and compare
        // weights, possible whenever both endpoints sit in [-1, 0]^N and
        // the exponent clears the denominators of v.
        bool clears = in_unit_box(v);
        for (long i = 0; i < n && clears; ++i)
            if ((pb - 1) % Int(v[i].get_den()) != 0)
                clears = false;
        if (clears) {
            Rat q = Rat(1) - Rat(pb);
            VecQ r(n);
            for (long i = 0; i < n; ++i)
                r[i] = v[i] + Rat(l[i]) / q;
            if (in_unit_box(r)) {
                Rat wv = padic_weight_with_exponent(v, p, b);
                Rat wr = padic_weight_with_exponent(r, p, b);
                out.orbit_value = Rat(b) / Rat(p - 1) * (wr - wv);
            }
        }
        return out;
    }
    throw internal_error("valuation_by_formula: no admissible truncation exponent");
}

std::vector<SeriesTerm> expand(const Configuration& cfg, const VecQ& v, const Int& p,
                               long order, const Int& guard) {
    require_prime(p);
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("vector length does not match the configuration");
    for (const Rat& q : v)
        if (!padic_integral(q, p))
            throw input_error("starting exponent is not p-integral");
    std::vector<VecZ> offsets = support_preserving_offsets(cfg, v, order, guard);
    std::vector<SeriesTerm> terms;
    terms.reserve(offsets.size());
    for (const VecZ& l : offsets)
        terms.push_back(coefficient(cfg, v, l, p));
    return terms;
}

Certificate analyze(const Configuration& cfg, const VecQ& v, const Int& p,
                    const AnalyzeOptions& opts) {
    require_prime(p);
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("vector length does not match the configuration");
    WeightResult wv = padic_weight(v, p);

    Certificate cert;
    cert.p = p;
    cert.w_p_v = wv.weight;
    cert.search_bounds.b_steps = opts.b_steps;
    cert.search_bounds.box_radius = opts.box_radius;
    cert.lower_bound = orbit_lower_bound(cfg, v, p, opts.guard).bound;
    Int modulus = lcm_of_denominators(v);

    if (cert.w_p_v == cert.lower_bound ||
        per_orbit_equality(cfg, v, p, opts.guard).all) {
        cert.status = CertificateStatus::integral_certified;
    } else {
        // Hunt for a strictly lighter point v + (1-p^b)^{-1} l.  Ascending b
        // and graded offsets make the first hit canonical.
        std::vector<VecZ> offsets =
            support_preserving_offsets(cfg, v, opts.box_radius, opts.guard);
        const long n = cfg.count();
        const long a = static_cast<long>(wv.order.get_si());
        for (long step = 1; step <= opts.b_steps && !cert.witness; ++step) {
            long b = step * a;
            Int pb = power(p, b);
            Rat q = Rat(1) - Rat(pb);
            for (const VecZ& l : offsets) {
                VecQ r(n);
                bool ok = true;
                for (long i = 0; i < n && ok; ++i) {
                    Rat s = q * v[i] + Rat(l[i]); // integral: a | b clears v
                    if (s < 0 || s > Rat(pb - 1))
                        ok = false;
                    else
                        r[i] = s / q;
                }
                if (!ok)
                    continue;
                Rat wr = padic_weight_with_exponent(r, p, b);
                if (wr < cert.w_p_v) {
                    cert.status = CertificateStatus::unbounded_certified;
                    cert.witness = UnboundedWitness{r, b, l};
                    Int wd = lcm_of_denominators(r);
                    mpz_lcm(modulus.get_mpz_t(), modulus.get_mpz_t(), wd.get_mpz_t());
                    break;
                }
            }
        }
    }

    cert.residue_modulus = modulus;
    cert.residue = p % modulus;
    return cert;
}

std::vector<FamilyTerm> unbounded_family(const VecQ& v, const VecQ& r, const Int& p,
                                         long count) {
    require_prime(p);
    if (v.size() != r.size())
        throw input_error("witness length does not match");
    Rat wv = padic_weight(v, p).weight;
    Rat wr = padic_weight(r, p).weight;
    const long n = static_cast<long>(v.size());
    VecQ diff(n);
    for (long i = 0; i < n; ++i)
        diff[i] = r[i] - v[i];
    long b = static_cast<long>(multiplicative_order(p, lcm_of_denominators(diff)).get_si());
    Rat delta = wr - wv;

    std::vector<FamilyTerm> out;
    out.reserve(count);
    for (long c = 1; c <= count; ++c) {
        Rat scale = Rat(1) - Rat(power(p, b * c));
        FamilyTerm term;
        term.c = c;
        term.l.resize(n);
        for (long i = 0; i < n; ++i) {
            Rat x = scale * diff[i];
            if (!is_integer(x))
                throw internal_error("unbounded_family: non-integral offset");
            term.l[i] = Int(x.get_num());
        }
        term.predicted = Rat(b * c) / Rat(p - 1) * delta;
        out.push_back(std::move(term));
    }
    return out;
}

ResidueStatement residue_transfer(const Certificate& cert, const Int& d) {
    if (d < 1)
        throw input_error("transfer modulus must be positive");
    if (d % cert.residue_modulus != 0)
        throw input_error("transfer modulus does not clear the denominators");
    ResidueStatement out;
    out.status = cert.status;
    out.modulus = d;
    out.residue = cert.p % d;
    return out;
}

bool verify_hypergeometric_system(const Configuration& cfg, const VecQ& v, long order,
                                  const Int& guard) {
    if (static_cast<long>(v.size()) != cfg.count())
        throw input_error("vector length does not match the configuration");
    if (order < 0)
        throw input_error("truncation order must be nonnegative");
    std::vector<VecZ> offsets = support_preserving_offsets(cfg, v, order, guard);
    const long n = cfg.count();

    // Euler operators: sum_i a_i (v + l)_i is the same for every term.
    VecQ beta(cfg.dim, Rat(0));
    for (long j = 0; j < cfg.dim; ++j)
        for (long i = 0; i < n; ++i)
            beta[j] += v[i] * Rat(cfg.vectors[i][j]);
    for (const VecZ& l : offsets) {
        for (long j = 0; j < cfg.dim; ++j) {
            Rat s;
            for (long i = 0; i < n; ++i)
                s += (v[i] + Rat(l[i])) * Rat(cfg.vectors[i][j]);
            if (s != beta[j])
                return false;
        }
    }

    // Box operators for each kernel-basis relation g: the two derivative
    // products must produce the same coefficient on every monomial either
    // can reach.  Membership of a source term is decided exactly via the
    // negative support, never by box inclusion.
    std::vector<long> nsupp = negative_support(v);
    auto source = [&](const VecZ& s, const VecZ& part) -> Rat {
        VecQ at = shifted_point(v, s);
        if (negative_support(at) != nsupp)
            return Rat(0);
        Rat out = bracket_product(v, s);
        for (long i = 0; i < n; ++i)
            if (part[i] > 0)
                out *= falling(at[i], part[i]);
        return out;
    };
    for (const VecZ& g : kernel_basis(cfg)) {
        VecZ gp(n), gm(n);
        for (long i = 0; i < n; ++i) {
            if (g[i] > 0)
                gp[i] = g[i];
            else
                gm[i] = -g[i];
        }
        std::set<VecZ> monomials;
        for (const VecZ& l : offsets) {
            VecZ mp(n), mm(n);
            for (long i = 0; i < n; ++i) {
                mp[i] = l[i] - gp[i];
                mm[i] = l[i] - gm[i];
            }
            monomials.insert(mp);
            monomials.insert(mm);
        }
        for (const VecZ& m : monomials) {
            VecZ sp(n), sm(n);
            for (long i = 0; i < n; ++i) {
                sp[i] = m[i] + gp[i];
                sm[i] = m[i] + gm[i];
            }
            if (source(sp, gp) != source(sm, gm))
                return false;
        }
    }
    return true;
}

} // namespace hypint
