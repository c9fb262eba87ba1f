#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hypint {

using Int = mpz_class;
using Rat = mpq_class;
using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;
using MatZ = std::vector<VecZ>; // row-major
using MatQ = std::vector<VecQ>;

// Parses "a" or "a/b" (optional leading '-') into a canonical rational.
// Throws input_error on malformed text or zero denominator.
Rat parse_rat(const std::string& s);

// Canonical text form: "a" when the denominator is 1, else "a/b" with b > 0.
std::string rat_str(const Rat& q);

bool is_integer(const Rat& q);
Int floor_int(const Rat& q);
Int ceil_int(const Rat& q);

// p-adic valuation. q must be nonzero, p >= 2.
long padic_ord(const Int& z, const Int& p);
long padic_ord(const Rat& q, const Int& p);

// Deterministic Miller-Rabin over the first twelve prime bases; exact for
// every n below 3.3e24, which covers all inputs this tool accepts.
bool is_prime(const Int& n);

VecQ to_rational(const VecZ& v);
Int lcm_of_denominators(const VecQ& v);

// Lexicographic order on rational vectors, used for deterministic tie-breaks.
bool lex_less(const VecQ& a, const VecQ& b);
bool lex_less(const VecZ& a, const VecZ& b);

} // namespace hypint
