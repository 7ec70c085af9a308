// factored.hpp
// Multiplicative values kept in factored form: a map prime -> exponent plus a
// root of unity tagged by its order. Points with such coordinates generate the
// finite-rank groups the search layer works against, and membership in those
// groups reduces to exact integer (or rational) linear algebra on the exponent
// data.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atyp/intmatrix.hpp"
#include "atyp/rational.hpp"

namespace atyp {

class FactoredValue {
public:
    FactoredValue() = default;  // the value 1

    // Factors a nonzero rational by trial division. A negative sign becomes
    // the order-2 root of unity.
    static FactoredValue from_rational(const Rational& q);
    static FactoredValue from_int(long v);
    // zeta(order)^exponent with zeta(order) = exp(2*pi*i/order).
    static FactoredValue root_of_unity(long order, long exponent);

    const std::map<Int, Int>& prime_exponents() const { return primes_; }
    long root_order() const { return root_order_; }
    long root_exponent() const { return root_exp_; }

    bool is_one() const { return primes_.empty() && root_order_ == 1; }
    bool is_torsion() const { return primes_.empty(); }
    // True when the value lies in Q, i.e. the torsion part is +-1.
    bool is_rational() const { return root_order_ <= 2; }
    Rational to_rational() const;

    FactoredValue operator*(const FactoredValue& rhs) const;
    FactoredValue inverse() const;
    FactoredValue pow(const Int& k) const;

    bool operator==(const FactoredValue& rhs) const = default;
    bool operator<(const FactoredValue& rhs) const;

    // Canonical form, e.g. "2^3 * 3^-1 * zeta(4)^1"; "1" for the identity.
    std::string to_string() const;

private:
    std::map<Int, Int> primes_;  // prime -> nonzero exponent
    long root_order_ = 1;        // root of unity exp(2*pi*i*root_exp_/root_order_)
    long root_exp_ = 0;          // reduced: gcd(root_exp_, root_order_) == 1 unless order 1
};

// Accepts the canonical form plus a few conveniences: bare integers >= 2 as
// factor tokens, "-1", plain rational literals like "4/9" or "-6".
FactoredValue parse_factored_value(const std::string& text);

using MultiplicativePoint = std::vector<FactoredValue>;

std::string point_to_string(const MultiplicativePoint& p);
// "(2^1, 3^-1)" style; single values without parens also accepted for n = 1.
MultiplicativePoint parse_multiplicative_point(const std::string& text);

// Coordinates as rationals when every torsion part is +-1.
std::optional<std::vector<Rational>> point_to_rationals(const MultiplicativePoint& p);
MultiplicativePoint point_from_rationals(const std::vector<Rational>& coords);

// x^row for one exponent row, e.g. the image of a point under one relation.
FactoredValue evaluate_monomial(const MultiplicativePoint& p, const std::vector<Int>& exponents);
// Image of p under the monomial map given by the rows of m.
MultiplicativePoint monomial_image(const IntegerMatrix& m, const MultiplicativePoint& p);
// prod_i gens[i]^word[i]; word may be shorter than gens (missing exponents 0).
MultiplicativePoint evaluate_word(const std::vector<MultiplicativePoint>& gens,
                                  const std::vector<Int>& word);

// Decides p in <generators> by an exact integer solve over stacked
// prime-exponent vectors and torsion congruences. With division_closed, decides
// whether some positive power of p lands in <generators>; the solve then runs
// over the rationals and torsion parts impose no condition (every root of unity
// has a power equal to 1).
bool multiplicative_membership(const MultiplicativePoint& p,
                               const std::vector<MultiplicativePoint>& generators,
                               bool division_closed);

// Exponent word over the generators witnessing membership. Integral entries
// for exact membership; possibly fractional when division_closed.
std::optional<std::vector<Rational>> membership_witness(
    const MultiplicativePoint& p, const std::vector<MultiplicativePoint>& generators,
    bool division_closed);

// Generating words for { w : the word evaluates to the identity } (for exact
// groups including the torsion congruences; for division-closed groups the
// words span every rational dependency among the prime-exponent vectors).
std::vector<std::vector<Int>> kernel_words(const std::vector<MultiplicativePoint>& generators,
                                           bool division_closed);

struct FiniteRankGroup {
    int ambient_dim = 0;
    std::vector<MultiplicativePoint> generators;
    bool division_closed = false;
    // Adjoins every root of unity of order dividing the cap, in each
    // coordinate independently. 1 adjoins nothing.
    long torsion_order_cap = 1;

    bool operator==(const FiniteRankGroup& rhs) const = default;
};

// Generators plus the adjoined torsion, as explicit points.
std::vector<MultiplicativePoint> effective_generators(const FiniteRankGroup& g);

bool group_contains(const FiniteRankGroup& g, const MultiplicativePoint& p);

// Image group under a monomial map: same rank data, mapped generators.
FiniteRankGroup map_group(const IntegerMatrix& m, const FiniteRankGroup& g);

}  // namespace atyp
