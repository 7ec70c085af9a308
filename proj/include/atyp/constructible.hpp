// constructible.hpp
// Finite unions of locally closed sets (closed piece minus an excluded
// vanishing locus) plus the fiber-dimension analysis built on them: given a
// variety and a monomial projection, stratify the image into constructible
// pieces on which the fiber dimension is constant and return the locus where
// it exceeds an expected value. Torus-mode inputs are handled exactly by
// adjoining inverse coordinates, so fiber dimensions are dimensions inside
// the torus, not of affine closures.
#pragma once

#include "atyp/ideal.hpp"
#include "atyp/intmatrix.hpp"

namespace atyp {

struct ConstructiblePiece {
    PolynomialIdeal closed;
    PolynomialIdeal excluded;  // piece = V(closed) \ V(excluded)
};

class ConstructibleSet {
public:
    ConstructibleSet() = default;
    explicit ConstructibleSet(int ambient_dim) : n_(ambient_dim) {}

    int ambient_dim() const { return n_; }
    const std::vector<ConstructiblePiece>& pieces() const { return pieces_; }

    void add_piece(ConstructiblePiece piece);

    bool is_empty() const;
    int dimension() const;  // -1 when empty
    bool contains(const std::vector<Rational>& point) const;

private:
    int n_ = 0;
    std::vector<ConstructiblePiece> pieces_;
};

// dim(V(closed) \ V(excluded)), -1 when the difference is empty.
int piece_dimension(const ConstructiblePiece& piece);

// One stratum of the image of a projection: over the points of
// V(base_closed) where base_excluded does not vanish, every fiber has
// dimension exactly fiber_dim.
struct FiberStratum {
    PolynomialIdeal base_closed;
    Poly base_excluded;  // product of the leading coefficients; constant 1 if none
    int fiber_dim = 0;
};

struct FiberJumpResult {
    ConstructibleSet locus;            // base points whose fiber dimension exceeds expected
    std::vector<FiberStratum> strata;  // full image stratification
    int expected = 0;
    int image_dim = -1;                // dimension of the closure of the image
    bool may_overapproximate = false;  // set when irreducibility was not asserted
};

// Stratifies the projection x -> (x^{row 0 of proj}, ..., x^{row k-1}) of the
// vanishing locus of `variety` and collects the base points with fiber
// dimension > expected. Rows of proj may have negative entries only in torus
// mode. The result is exact for each rational base point; the flag merely
// records whether the caller vouched for irreducibility (the classical
// "locus is not dense" bound needs it, membership does not).
FiberJumpResult fiber_jump_locus(const PolynomialIdeal& variety, const IntegerMatrix& proj,
                                 int expected, bool assume_irreducible = true);

// Independent per-point check: dimension of the fiber of the same projection
// over base point u0 (inside the torus when the variety is in torus mode),
// -1 when the fiber is empty.
int fiber_dimension_at(const PolynomialIdeal& variety, const IntegerMatrix& proj,
                       const std::vector<Rational>& u0);

}  // namespace atyp
