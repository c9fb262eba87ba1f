#include "hypint/eisenstein.hpp"

#include <algorithm>
#include <string>

#include "hypint/error.hpp"

namespace hypint {

namespace {

void trim(VecQ& p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

// -1 for the zero polynomial.
long order_of(const VecQ& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0)
            return static_cast<long>(i);
    return -1;
}

VecQ add(const VecQ& a, const VecQ& b) {
    VecQ out = a.size() >= b.size() ? a : b;
    const VecQ& small = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < small.size(); ++i)
        out[i] += small[i];
    return out;
}

VecQ scale_poly(const VecQ& a, const Rat& f) {
    VecQ out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * f;
    return out;
}

// Product mod X^limit; limit < 0 means the full product.
VecQ mul_trunc(const VecQ& a, const VecQ& b, long limit) {
    if (a.empty() || b.empty() || limit == 0)
        return {};
    long full = static_cast<long>(a.size() + b.size()) - 1;
    long n = limit < 0 ? full : std::min(limit, full);
    VecQ out(n, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0 || static_cast<long>(i) >= n)
            continue;
        for (std::size_t j = 0; j < b.size() && static_cast<long>(i + j) < n; ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

VecQ truncated(VecQ p, long limit) {
    if (limit >= 0 && static_cast<long>(p.size()) > limit)
        p.resize(limit);
    return p;
}

// sum_j f[j](X) g(X)^j mod X^limit, Horner over the Z-power.
VecQ substitute(const MatQ& f, const VecQ& g, long limit) {
    VecQ acc;
    for (long j = static_cast<long>(f.size()) - 1; j >= 0; --j) {
        acc = mul_trunc(acc, g, limit);
        acc = add(acc, truncated(f[j], limit));
    }
    return acc;
}

MatQ derivative_z(const MatQ& f) {
    MatQ d;
    for (std::size_t j = 1; j < f.size(); ++j)
        d.push_back(scale_poly(f[j], Rat(static_cast<long>(j))));
    return d;
}

VecQ shift_up(const VecQ& p, long k) {
    if (p.empty())
        return {};
    VecQ out(p.size() + k, Rat(0));
    std::copy(p.begin(), p.end(), out.begin() + k);
    return out;
}

VecQ shift_down(const VecQ& p, long k) {
    for (long i = 0; i < k && i < static_cast<long>(p.size()); ++i)
        if (p[i] != 0)
            throw internal_error("eisenstein: inexact division by a power of X");
    if (static_cast<long>(p.size()) <= k)
        return {};
    return VecQ(p.begin() + k, p.end());
}

// Rows of F(X, head + W) by W-power: row i = sum_j binom(j, i) f_j head^(j-i).
MatQ taylor_rows(const MatQ& f, const VecQ& head) {
    const long degz = static_cast<long>(f.size()) - 1;
    std::vector<VecQ> headpow(degz + 1);
    headpow[0] = {Rat(1)};
    for (long e = 1; e <= degz; ++e)
        headpow[e] = mul_trunc(headpow[e - 1], head, -1);

    MatQ rows(degz + 1);
    for (long j = 0; j <= degz; ++j) {
        for (long i = 0; i <= j; ++i) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), j, i);
            VecQ term = mul_trunc(f[j], headpow[j - i], -1);
            rows[i] = add(rows[i], scale_poly(term, Rat(binom)));
        }
    }
    return rows;
}

VecQ negated(const VecQ& p) { return scale_poly(p, Rat(-1)); }

// Known tail coefficients from the prefix: entry m - tail_shift is c_m.
VecQ known_tail(const VecQ& prefix, long head_degree, long tail_shift) {
    const long t = static_cast<long>(prefix.size()) - 1;
    VecQ tail(std::max<long>(t - tail_shift + 1, 0), Rat(0));
    for (long m = head_degree + 1; m <= t; ++m)
        tail[m - tail_shift] = prefix[m];
    return tail;
}

} // namespace

TailNormalization tail_normalize(const AlgebraicSeries& s) {
    MatQ f = s.annihilator;
    for (VecQ& row : f)
        trim(row);
    while (!f.empty() && f.back().empty())
        f.pop_back();
    if (f.empty())
        throw input_error("eisenstein: annihilator is zero");
    if (f.size() < 2)
        throw input_error("eisenstein: annihilator does not involve Z");
    if (s.prefix.empty())
        throw input_error("eisenstein: prefix is empty");
    const long t = static_cast<long>(s.prefix.size()) - 1;

    VecQ on_prefix = substitute(f, s.prefix, t + 1);
    if (order_of(on_prefix) >= 0)
        throw input_error("eisenstein: annihilator does not vanish on the prefix");

    VecQ derivative_on_prefix = substitute(derivative_z(f), s.prefix, t + 1);
    const long mu = order_of(derivative_on_prefix);
    if (mu < 0)
        throw input_error("eisenstein: derivative of the annihilator cancels on the "
                          "whole prefix; prefix too short or annihilator not minimal");

    TailNormalization tn;
    tn.mu = mu;
    tn.head_degree = 2 * mu + 1;
    tn.tail_shift = mu + 1;
    if (t < tn.head_degree)
        throw input_error("eisenstein: prefix needs at least " +
                          std::to_string(2 * mu + 2) + " coefficients");

    VecQ head(s.prefix.begin(), s.prefix.begin() + tn.head_degree + 1);
    trim(head);
    MatQ rows = taylor_rows(f, head);

    if (order_of(rows[1]) != mu)
        throw internal_error("eisenstein: head changed the derivative order");
    tn.unit_part = shift_down(rows[1], mu);
    tn.defect = shift_down(rows[0], tn.head_degree + 1);
    tn.remainder.assign(rows.begin() + std::min<std::size_t>(2, rows.size()), rows.end());

    // F1 row j collects: the unit slope for j = 1, the defect for j = 0, and
    // the Taylor rest with W = X^(mu+1) Z for j >= 2; all negated.
    MatQ f1(std::max<std::size_t>(tn.remainder.size() + 2, 2));
    f1[0] = negated(tn.defect);
    VecQ slope = rows[1];
    slope[mu] = 0; // remove unit_part(0) X^mu before dividing
    f1[1] = negated(shift_down(shift_down(slope, mu), 1));
    for (std::size_t j = 0; j < tn.remainder.size(); ++j)
        f1[j + 2] = negated(
            shift_up(tn.remainder[j], (mu + 1) * static_cast<long>(j)));
    for (VecQ& row : f1)
        trim(row);
    while (!f1.empty() && f1.back().empty())
        f1.pop_back();
    tn.tail_poly_q = f1;

    VecQ flat{tn.unit_part[0]};
    for (const VecQ& row : f1)
        flat.insert(flat.end(), row.begin(), row.end());
    Int clearing = lcm_of_denominators(flat);
    Rat scaled = Rat(clearing) * tn.unit_part[0];
    if (!is_integer(scaled))
        throw internal_error("eisenstein: denominator clearing failed");
    tn.scale = scaled.get_num();
    for (const VecQ& row : f1) {
        VecZ out;
        for (const Rat& q : row) {
            Rat e = Rat(clearing) * q;
            if (!is_integer(e))
                throw internal_error("eisenstein: denominator clearing failed");
            out.push_back(e.get_num());
        }
        tn.tail_poly.push_back(std::move(out));
    }

    // The prefix must solve scale * tail = X * F0(X, tail) to the order it
    // determines, which is one past t - head_degree.
    VecQ tail = known_tail(s.prefix, tn.head_degree, tn.tail_shift);
    const long window = t - tn.head_degree + 1;
    VecQ rhs = shift_up(substitute(tn.tail_poly_q, tail, window - 1), 1);
    VecQ residual = add(scale_poly(truncated(tail, window), tn.unit_part[0]),
                        negated(truncated(rhs, window)));
    if (order_of(residual) >= 0 && order_of(residual) < window)
        throw internal_error("eisenstein: tail equation fails on the prefix");
    return tn;
}

DenominatorBound denominator_constant(const TailNormalization& tn,
                                      const AlgebraicSeries& s) {
    const long t = static_cast<long>(s.prefix.size()) - 1;
    if (t < tn.head_degree)
        throw input_error("eisenstein: prefix shorter than the head");
    if (tn.scale == 0)
        throw input_error("eisenstein: tail normalization has a zero scale");
    const long m_max = t - tn.tail_shift;

    // Rescaled equation u = X F0(scale * X, u) for u_m = scale^m tail_m;
    // its coefficients come out of integer operations only.
    MatQ scaled_poly;
    for (const VecZ& row : tn.tail_poly) {
        VecQ out;
        Int power = 1;
        for (const Int& c : row) {
            out.push_back(Rat(c * power));
            power *= tn.scale;
        }
        scaled_poly.push_back(std::move(out));
    }
    VecQ u(std::max<long>(m_max + 1, 1), Rat(0));
    for (long round = 0; round < m_max; ++round) {
        VecQ next = shift_up(substitute(scaled_poly, u, m_max), 1);
        next = truncated(next, m_max + 1);
        next.resize(u.size(), Rat(0));
        if (next == u)
            break;
        u = next;
    }

    Int scale_power = 1;
    for (long m = 0; m <= m_max; ++m) {
        Rat gamma = m >= tn.mu + 1 ? s.prefix[m + tn.tail_shift] : Rat(0);
        if (u[m] != Rat(scale_power) * gamma)
            throw input_error("eisenstein: tail recursion disagrees with the prefix "
                              "at order " + std::to_string(m + tn.tail_shift));
        if (!is_integer(u[m]))
            throw internal_error("eisenstein: recursion left the integers");
        scale_power *= tn.scale;
    }

    DenominatorBound out;
    Int tau = abs(tn.scale);
    Int head_clear = 1;
    Int tau_power = 1;
    for (long m = 1; m <= tn.head_degree; ++m) {
        tau_power *= tau;
        Rat scaled = Rat(tau_power) * s.prefix[m];
        head_clear = lcm(head_clear, Int(scaled.get_den()));
    }
    out.constant = tau * head_clear;
    out.verified_order = t;
    if (!constant_clears_prefix(s, out.constant))
        throw internal_error("eisenstein: assembled constant fails on the prefix");

    // Greedy diagnostic: drop prime factors while the prefix keeps passing.
    // No claim beyond the checked coefficients.
    Int minimal = out.constant;
    Int rest = out.constant;
    for (Int q = 2; q * q <= rest; ++q) {
        if (rest % q != 0)
            continue;
        while (rest % q == 0)
            rest /= q;
        while (minimal % q == 0 && constant_clears_prefix(s, minimal / q))
            minimal /= q;
    }
    if (rest > 1)
        while (minimal % rest == 0 && constant_clears_prefix(s, minimal / rest))
            minimal /= rest;
    out.prefix_minimal = minimal;
    return out;
}

bool constant_clears_prefix(const AlgebraicSeries& s, const Int& n) {
    if (n < 1)
        throw input_error("eisenstein: constant must be positive");
    if (s.prefix.empty())
        throw input_error("eisenstein: prefix is empty");
    Int power = 1;
    for (std::size_t m = 1; m < s.prefix.size(); ++m) {
        power *= n;
        if (!is_integer(Rat(power) * s.prefix[m]))
            return false;
    }
    return true;
}

} // namespace hypint
