#include "hypint/arith.hpp"

#include "hypint/error.hpp"

namespace hypint {

namespace {

void require_base(const Int& p) {
    if (p < 2)
        throw input_error("digit base must be >= 2");
}

// Splits r in [-1, 0] into (s, D) with r = -s/D, D the reduced denominator,
// 0 <= s <= D.  The endpoint s == D occurs exactly at r == -1.
void split_neg_box(const Rat& r, Int& s, Int& D) {
    if (r < -1 || r > 0)
        throw input_error("rational outside [-1, 0]: " + rat_str(r));
    D = r.get_den();
    s = -r.get_num();
}

Int inverse_mod(const Int& a, const Int& m) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw input_error("base shares a factor with the denominator");
    return inv;
}

} // namespace

Int digit_sum(const Int& t, const Int& p) {
    require_base(p);
    if (t < 0)
        throw input_error("digit sum of a negative integer");
    Int rest = t, digit, total = 0;
    while (rest != 0) {
        mpz_fdiv_qr(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
        total += digit;
    }
    return total;
}

Int factorial_ord(const Int& t, const Int& p) {
    // Exact because t == digit_sum(t, p) mod (p - 1).
    return (t - digit_sum(t, p)) / (p - 1);
}

Int product_ord(const Int& t, const Int& k, const Int& p) {
    if (k < 0 || k > t)
        throw input_error("product_ord requires 0 <= k <= t");
    return factorial_ord(t, p) - factorial_ord(t - k, p);
}

bool padic_integral(const Rat& t, const Int& p) {
    require_base(p);
    return mpz_divisible_p(t.get_den_mpz_t(), p.get_mpz_t()) == 0;
}

Int padic_truncate(const Rat& t, const Int& p, const Int& b) {
    require_base(p);
    if (b < 0)
        throw input_error("truncation length must be >= 0");
    if (!padic_integral(t, p))
        throw input_error("truncation of a non-p-integral rational");
    if (!b.fits_ulong_p())
        throw resource_error("truncation length too large: " + b.get_str());
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), b.get_ui());
    if (b == 0)
        return 0;
    // t mod p^b = num * den^{-1} mod p^b; one inversion replaces the digit
    // recurrence and lands directly in [0, p^b).
    Int inv = inverse_mod(Int(t.get_den()), mod);
    Int out = (t.get_num() % mod) * inv % mod;
    if (out < 0)
        out += mod;
    return out;
}

Int multiplicative_order(const Int& p, const Int& m) {
    if (m < 1)
        throw input_error("order modulus must be >= 1");
    if (m == 1)
        return 1;
    if (m > kMaxOrderModulus)
        throw input_error("denominator lcm exceeds the modulus cap of 10^6: " + m.get_str());
    if (gcd(p, m) != 1)
        throw input_error("base not invertible modulo " + m.get_str());
    Int pw = p % m, a = 1;
    if (pw < 0)
        pw += m;
    while (pw != 1) {
        pw = pw * p % m;
        if (pw < 0)
            pw += m;
        ++a;
        if (a > m)
            throw internal_error("order search overran the modulus");
    }
    return a;
}

Rat digit_shift_neg(const Rat& r, const Int& h) {
    if (h < 1)
        throw input_error("shift base must be >= 1");
    Int s, D;
    split_neg_box(r, s, D);
    if (s == 0 || s == D) // endpoints 0 and -1 are fixed points
        return r;
    Int sp = s * inverse_mod(h, D) % D;
    if (sp < 0)
        sp += D;
    // sp lies in [1, D-1] and h*sp = s (mod D); since 0 < h*sp < h*D, the
    // difference (h*sp - s)/D is exactly the digit in {0, ..., h-1}.
    return Rat(-sp, D);
}

Rat digit_shift_pos(const Rat& r, const Int& h) {
    if (h < 1)
        throw input_error("shift base must be >= 1");
    if (r < 0 || r > 1)
        throw input_error("rational outside [0, 1]: " + rat_str(r));
    Int D = r.get_den(), s = r.get_num();
    if (s == 0 || s == D)
        return r;
    Int sp = s * inverse_mod(h, D) % D;
    if (sp < 0)
        sp += D;
    return Rat(sp, D);
}

namespace {

template <typename Shift>
Rat shift_iter(const Rat& r, const Int& h, const Int& k, Shift step) {
    if (k < 0)
        throw input_error("iterate count must be >= 0");
    Int D = r.get_den();
    if (D == 1 || h == 1) // endpoints and h = 1 are fixed
        return step(r, h);
    Int reduced = k % multiplicative_order(h, D);
    Rat out = r;
    for (Int i = 0; i < reduced; ++i)
        out = step(out, h);
    return out;
}

} // namespace

Rat digit_shift_neg_iter(const Rat& r, const Int& h, const Int& k) {
    return shift_iter(r, h, k, [](const Rat& x, const Int& b) { return digit_shift_neg(x, b); });
}

Rat digit_shift_pos_iter(const Rat& r, const Int& h, const Int& k) {
    return shift_iter(r, h, k, [](const Rat& x, const Int& b) { return digit_shift_pos(x, b); });
}

WeightResult padic_weight(const VecQ& r, const Int& p) {
    require_base(p);
    WeightResult res;
    res.modulus = 1;
    for (const Rat& x : r) {
        if (x < -1 || x > 0)
            throw input_error("weight entry outside [-1, 0]: " + rat_str(x));
        if (!padic_integral(x, p))
            throw input_error("weight entry not p-integral: " + rat_str(x));
        mpz_lcm(res.modulus.get_mpz_t(), res.modulus.get_mpz_t(), x.get_den_mpz_t());
    }
    res.order = multiplicative_order(p, res.modulus);
    Int pa;
    mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), res.order.get_ui());
    res.weight = 0;
    for (const Rat& x : r) {
        Rat scaled = Rat(1 - pa) * x; // integer in [0, p^a - 1]
        if (!is_integer(scaled))
            throw internal_error("order does not clear the denominator");
        Rat entry(digit_sum(Int(scaled.get_num()), p), res.order);
        entry.canonicalize();
        res.per_entry.push_back(entry);
        res.weight += entry;
    }
    return res;
}

Rat padic_weight_by_orbit(const VecQ& r, const Int& p) {
    Int modulus = 1;
    for (const Rat& x : r) {
        if (x < -1 || x > 0)
            throw input_error("weight entry outside [-1, 0]: " + rat_str(x));
        mpz_lcm(modulus.get_mpz_t(), modulus.get_mpz_t(), x.get_den_mpz_t());
    }
    Int a = multiplicative_order(p, modulus);
    Rat total = 0;
    std::vector<Rat> orbit(r.begin(), r.end());
    for (Int mu = 0; mu < a; ++mu) {
        for (Rat& x : orbit) {
            total += x;
            x = digit_shift_neg(x, p);
        }
    }
    Rat out = Rat(1 - p) * total / Rat(a);
    out.canonicalize();
    return out;
}

Rat padic_weight_with_exponent(const VecQ& r, const Int& p, const Int& b) {
    require_base(p);
    if (b < 1)
        throw input_error("weight exponent must be >= 1");
    if (!b.fits_ulong_p())
        throw resource_error("weight exponent too large: " + b.get_str());
    Int pb;
    mpz_pow_ui(pb.get_mpz_t(), p.get_mpz_t(), b.get_ui());
    Int total = 0;
    for (const Rat& x : r) {
        Rat scaled = Rat(1 - pb) * x;
        if (!is_integer(scaled) || scaled < 0 || scaled > pb - 1)
            throw input_error("exponent does not box the entry " + rat_str(x));
        total += digit_sum(Int(scaled.get_num()), p);
    }
    Rat out(total, b);
    out.canonicalize();
    return out;
}

} // namespace hypint
