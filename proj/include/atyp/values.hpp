// values.hpp
// Exact j-invariant values: rationals, and singular moduli given by a bundled
// Hilbert class polynomial with a real-root index. Comes with the univariate
// polynomial toolkit (division, gcd, Sturm counting, rational roots,
// resultants) that the zero tests need. Arithmetic on algebraic values is
// deliberately limited to polynomial evaluation and equality.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atyp/rational.hpp"

namespace atyp {

// Coefficient of x^i at index i; normalized form has no trailing zeros.
using UniPoly = std::vector<Rational>;

UniPoly uni_trim(UniPoly p);
int uni_degree(const UniPoly& p);  // -1 for the zero polynomial
Rational uni_leading(const UniPoly& p);
Rational uni_eval(const UniPoly& p, const Rational& x);

UniPoly uni_add(const UniPoly& a, const UniPoly& b);
UniPoly uni_sub(const UniPoly& a, const UniPoly& b);
UniPoly uni_mul(const UniPoly& a, const UniPoly& b);
UniPoly uni_scale(const UniPoly& a, const Rational& c);
UniPoly uni_derivative(const UniPoly& a);
UniPoly uni_monic(const UniPoly& a);

// Quotient and remainder; the divisor must be nonzero.
std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b);
bool uni_divides(const UniPoly& divisor, const UniPoly& dividend);
UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);  // monic, or zero
UniPoly uni_squarefree(const UniPoly& a);

// Distinct real roots, counted exactly by Sturm chains.
int uni_real_root_count(const UniPoly& p);
// Distinct real roots in the half-open interval (lo, hi].
int uni_real_root_count_between(const UniPoly& p, const Rational& lo, const Rational& hi);

// All rational roots, ascending and without multiplicity. Complete: works by
// the monic substitution z = lc * x followed by exact integer root isolation,
// so no coefficient factoring is ever needed.
std::vector<Rational> uni_rational_roots(const UniPoly& p);

Rational uni_resultant(const UniPoly& a, const UniPoly& b);
// Newton interpolation through distinct sample points.
UniPoly uni_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

std::string uni_to_string(const UniPoly& p, const std::string& var = "x");

// Hilbert class polynomials H_D, monic with integer coefficients, keyed by
// the (negative) discriminant.
class ClassPolynomialTable {
public:
    static ClassPolynomialTable load_file(const std::string& path);

    bool has(long discriminant) const;
    const UniPoly& minimal_polynomial(long discriminant) const;
    int real_root_count(long discriminant) const;
    long max_abs_discriminant() const;
    const std::map<long, UniPoly>& entries() const { return entries_; }

private:
    std::map<long, UniPoly> entries_;
    std::map<long, int> real_roots_;
};

// A rational number, or the index-th real root (ascending, 0-based) of a
// bundled class polynomial. Singular moduli with a linear class polynomial
// canonicalize to their rational form.
class ExactValue {
public:
    ExactValue() : rational_(true), value_(0) {}
    explicit ExactValue(Rational v) : rational_(true), value_(std::move(v)) {}
    static ExactValue singular_modulus(const ClassPolynomialTable& table, long discriminant,
                                       int root_index);

    bool is_rational() const { return rational_; }
    const Rational& rational() const;
    long discriminant() const;
    int root_index() const;
    // x - v for rationals, H_D for singular moduli.
    UniPoly minimal_polynomial() const;

    bool operator==(const ExactValue& rhs) const;
    bool operator!=(const ExactValue& rhs) const { return !(*this == rhs); }
    bool operator<(const ExactValue& rhs) const;

    std::string to_string() const;

private:
    bool rational_;
    Rational value_;
    long disc_ = 0;
    int index_ = 0;
    UniPoly minpoly_;
};

// "5", "-3/2", or "cm(-15, 0)".
ExactValue parse_exact_value(const std::string& text, const ClassPolynomialTable& table);

// Whether g(a) = 0, exactly: evaluation for rationals, minimal-polynomial
// divisibility for singular moduli.
bool uni_vanishes_at(const UniPoly& g, const ExactValue& a);

}  // namespace atyp
