// poly.hpp
// Sparse Laurent polynomials over the rationals with global term orders
// (lexicographic and graded block orders) and a canonical text form with
// exact round-trip: coefficients as p/q, variables x1..xn, explicit '*' and
// '^', terms sorted by the active order.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atyp/rational.hpp"

namespace atyp {

using Exponent = std::vector<long>;

long total_degree(const Exponent& e);

struct TermOrder {
    enum class Kind { Lex, Block };
    Kind kind = Kind::Block;
    std::vector<int> perm;  // variable significance order (most significant first)
    int split = 0;          // Block: number of leading perm entries forming block one

    static TermOrder lex(int n);
    static TermOrder grlex(int n);
    // Eliminated variables form the dominant graded block.
    static TermOrder elimination(int n, const std::vector<int>& eliminated);

    int vars() const { return static_cast<int>(perm.size()); }
    // -1 if a < b, 0 if equal, 1 if a > b
    int compare(const Exponent& a, const Exponent& b) const;
    std::string cache_key() const;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(int n) : n_(n) {}

    static Poly zero(int n) { return Poly(n); }
    static Poly constant(int n, const Rational& c);
    static Poly variable(int n, int i, long power = 1);
    static Poly monomial(int n, const Exponent& e, const Rational& c);

    int vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponent, Rational>& terms() const { return terms_; }

    void add_term(const Exponent& e, const Rational& c);

    Poly operator+(const Poly& rhs) const;
    Poly operator-(const Poly& rhs) const;
    Poly operator-() const;
    Poly operator*(const Poly& rhs) const;
    Poly operator*(const Rational& c) const;
    bool operator==(const Poly& rhs) const = default;

    Poly pow(long k) const;  // k >= 0

    long max_total_degree() const;
    bool has_negative_exponent() const;
    // Multiplies by the minimal monomial making all exponents nonnegative.
    Poly cleared() const;
    // Divides by gcd of integer coefficients after clearing denominators;
    // leading coefficient (w.r.t. ord) made positive.
    Poly primitive_normalized(const TermOrder& ord) const;

    const Exponent* leading_exponent(const TermOrder& ord) const;  // null if zero
    Rational leading_coefficient(const TermOrder& ord) const;

    Rational evaluate(const std::vector<Rational>& point) const;
    // x_i -> c_i * x_i (all c_i nonzero)
    Poly scale_variables(const std::vector<Rational>& c) const;
    // x_i -> value (exponents of i must be >= 0 unless value != 0)
    Poly substitute_value(int i, const Rational& value) const;
    // Maps variable i of *this to variable image[i] of an m-variable ring.
    Poly reindex(int m, const std::vector<int>& image) const;
    // Partial derivative
    Poly derivative(int i) const;

    bool depends_on(int i) const;
    std::vector<int> support_vars() const;

    std::string to_string(const TermOrder& ord) const;
    std::string to_string() const;  // grlex

private:
    int n_ = 0;
    std::map<Exponent, Rational> terms_;
};

// Parses the canonical form (and modest generalizations: parentheses,
// implicit coefficient 1, omitted exponents, unary minus). Variables are
// x1..xn. Throws parse_error with 1-based column on malformed input.
Poly parse_poly(const std::string& text, int n);

}  // namespace atyp
