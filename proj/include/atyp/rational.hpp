// rational.hpp
// Exact scalar type: arbitrary-precision rationals over GMP, always kept in
// canonical form (coprime numerator/denominator, positive denominator).
// mpq_class does not canonicalize fraction constructions on its own, so all
// construction goes through make_rational.
#pragma once

#include <gmpxx.h>

#include <string>

#include "atyp/error.hpp"

namespace atyp {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw precondition_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

// Canonical "p" or "p/q" form.
std::string rational_to_string(const Rational& r);

// Parses "p", "-p", "p/q". Throws parse_error on malformed input.
Rational rational_from_string(const std::string& s);

// Exact integer n-th root helpers used by lattice/value code.
bool is_perfect_power_exact(const Int& base, unsigned long k, Int& root);

}  // namespace atyp
