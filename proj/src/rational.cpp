#include "hypint/rational.hpp"

#include "hypint/error.hpp"

#include <array>
#include <cctype>

namespace hypint {

Rat parse_rat(const std::string& s) {
    if (s.empty())
        throw input_error("empty rational literal");
    // mpq_class accepts more than we want (whitespace, hex); vet the shape first.
    std::size_t i = 0;
    if (s[i] == '-' || s[i] == '+')
        ++i;
    bool digits = false, slash = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits = true;
        } else if (s[i] == '/' && !slash && digits) {
            slash = true;
            digits = false;
        } else {
            throw input_error("malformed rational literal: " + s);
        }
    }
    if (!digits)
        throw input_error("malformed rational literal: " + s);
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw input_error("malformed rational literal: " + s);
    if (q.get_den() == 0)
        throw input_error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

bool is_integer(const Rat& q) {
    return q.get_den() == 1;
}

Int floor_int(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Int ceil_int(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

long padic_ord(const Int& z, const Int& p) {
    if (z == 0)
        throw input_error("valuation of zero");
    if (p < 2)
        throw input_error("valuation base must be >= 2");
    Int rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t()));
}

long padic_ord(const Rat& q, const Int& p) {
    return padic_ord(Int(q.get_num()), p) - padic_ord(Int(q.get_den()), p);
}

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    static const std::array<int, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int b : bases) {
        if (n == b)
            return true;
        if (n % b == 0)
            return false;
    }
    // n - 1 = d * 2^s with d odd
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (int b : bases) {
        Int a = b, x;
        mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

VecQ to_rational(const VecZ& v) {
    VecQ out;
    out.reserve(v.size());
    for (const Int& z : v)
        out.emplace_back(z);
    return out;
}

Int lcm_of_denominators(const VecQ& v) {
    Int d = 1;
    for (const Rat& q : v)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
    return d;
}

bool lex_less(const VecQ& a, const VecQ& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c < 0;
    }
    return a.size() < b.size();
}

bool lex_less(const VecZ& a, const VecZ& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0)
            return c < 0;
    }
    return a.size() < b.size();
}

} // namespace hypint
