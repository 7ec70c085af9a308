// ideal.hpp
// Polynomial ideals with cached reduced Groebner bases (Buchberger with the
// sugar strategy, content-free integer normalization), Krull dimension of the
// vanishing locus, elimination, saturation, and the monomial-constancy test
// used by the coset machinery. torus_mode ideals are implicitly saturated by
// the product of the coordinates so all answers are relative to (C*)^n.
#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "atyp/poly.hpp"

namespace atyp {

struct GroebnerBudget {
    long max_total_degree = 24;
    long max_basis_size = 2000;
};

// Reduced Groebner basis, sorted by decreasing leading monomial, every
// element content-free integer normalized with positive leading coefficient.
// Throws budget_error when the budget is exceeded.
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const TermOrder& ord,
                                 const GroebnerBudget& budget = {});

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const TermOrder& ord);

class PolynomialIdeal {
public:
    PolynomialIdeal() = default;
    PolynomialIdeal(int ambient_dim, std::vector<Poly> generators, bool torus_mode,
                    GroebnerBudget budget = {});

    int ambient_dim() const { return n_; }
    bool torus_mode() const { return torus_; }
    const GroebnerBudget& budget() const { return budget_; }
    const std::vector<Poly>& generators() const { return gens_; }

    // Generators of the effective ideal: torus_mode saturates by x1*...*xn.
    const std::vector<Poly>& effective_generators() const;
    const std::vector<Poly>& groebner(const TermOrder& ord) const;

    bool is_unit() const;          // empty vanishing locus (in the torus if torus_mode)
    int dimension() const;         // Krull dimension of the locus; -1 if empty
    Poly reduce(const Poly& f) const;
    bool contains_poly(const Poly& f) const;
    // True if every generator of other reduces to zero here, i.e. the ideal
    // of other is contained in this ideal (so V(this) is inside V(other)).
    bool contains_ideal_of(const PolynomialIdeal& other) const;
    bool same_locus_ideal(const PolynomialIdeal& other) const;

    PolynomialIdeal with_extra(std::vector<Poly> more) const;

private:
    int n_ = 0;
    bool torus_ = false;
    GroebnerBudget budget_;
    std::vector<Poly> gens_;
    struct Cache {
        std::mutex mu;
        std::optional<std::vector<Poly>> effective;
        std::map<std::string, std::vector<Poly>> bases;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Elimination ideal describing the closure of the projection onto the kept
// coordinates (strictly increasing index list), reindexed to |keep| variables.
PolynomialIdeal eliminate(const PolynomialIdeal& ideal, const std::vector<int>& keep);

// Saturation (ideal : f^infinity) via the extra-variable trick.
std::vector<Poly> saturate_generators(const std::vector<Poly>& gens, const Poly& f, int n,
                                      const GroebnerBudget& budget = {});

// If the Laurent monomial x^m is constant on the locus, returns the constant.
// Throws precondition_error on the unit ideal.
std::optional<Rational> monomial_constant_on(const PolynomialIdeal& ideal, const Exponent& m);

// Dimension of the affine (or torus) locus of a monomial staircase given by
// leading exponents: size of the largest variable subset meeting no support.
int staircase_dimension(const std::vector<Exponent>& leading, int n);

}  // namespace atyp
