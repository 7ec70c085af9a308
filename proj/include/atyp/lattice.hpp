// lattice.hpp
// Integer exponent lattices in canonical row Hermite form. A connected
// algebraic subgroup of the n-torus is stored by its relation lattice (the
// exponent vectors m with x^m = 1 on it); the quotient map onto the
// codimension coordinates is the monomial map whose rows are the saturated
// relation basis.
#pragma once

#include "atyp/intmatrix.hpp"

namespace atyp {

class ExponentLattice {
public:
    ExponentLattice() = default;  // zero lattice in dimension 0
    explicit ExponentLattice(int ambient_dim)
        : n_(ambient_dim), basis_(0, ambient_dim) {}
    ExponentLattice(int ambient_dim, const IntegerMatrix& generators);

    static ExponentLattice zero(int ambient_dim) { return ExponentLattice(ambient_dim); }
    static ExponentLattice full(int ambient_dim) {
        return ExponentLattice(ambient_dim, IntegerMatrix::identity(ambient_dim));
    }

    int ambient_dim() const { return n_; }
    int rank() const { return basis_.rows(); }
    const IntegerMatrix& basis() const { return basis_; }

    bool operator==(const ExponentLattice& rhs) const = default;

    bool contains(const std::vector<Int>& v) const;
    bool contains_lattice(const ExponentLattice& other) const;

    ExponentLattice saturation() const;
    bool is_saturated() const;
    Int saturation_index() const;  // [saturation : lattice], product of invariant factors

    // Saturated lattice of all integer vectors orthogonal to every basis row.
    ExponentLattice orthogonal_complement() const;

    ExponentLattice sum(const ExponentLattice& other) const;

private:
    int n_ = 0;
    IntegerMatrix basis_;  // HNF, exactly rank() rows
};

// Monomial quotient map with kernel the subgroup cut by the relation lattice:
// u_j = prod_i x_i^{matrix[j][i]}.
struct QuotientMap {
    int ambient_dim = 0;
    int target_dim = 0;
    IntegerMatrix matrix;
};

// Requires a saturated relation lattice (so the subgroup is connected).
QuotientMap quotient_map(const ExponentLattice& relations);

// Image of a torus point (all coordinates nonzero).
std::vector<Rational> apply_quotient(const QuotientMap& q, const std::vector<Rational>& x);

// Section of the quotient: matrix * result = identity.
IntegerMatrix quotient_right_inverse(const QuotientMap& q);

}  // namespace atyp
