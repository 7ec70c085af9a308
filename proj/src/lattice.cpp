#include "atyp/lattice.hpp"

#include "atyp/error.hpp"

namespace atyp {

ExponentLattice::ExponentLattice(int ambient_dim, const IntegerMatrix& generators)
    : n_(ambient_dim) {
    if (generators.rows() > 0 && generators.cols() != ambient_dim)
        throw precondition_error("lattice generators have the wrong arity");
    HnfResult hnf = hermite_normal_form(generators);
    basis_ = IntegerMatrix(hnf.rank, ambient_dim);
    for (int r = 0; r < hnf.rank; ++r)
        for (int c = 0; c < ambient_dim; ++c) basis_.at(r, c) = hnf.h.at(r, c);
}

bool ExponentLattice::contains(const std::vector<Int>& v) const {
    if (static_cast<int>(v.size()) != n_)
        throw precondition_error("lattice membership vector has the wrong arity");
    return solve_integer(basis_.transpose(), v).has_value();
}

bool ExponentLattice::contains_lattice(const ExponentLattice& other) const {
    if (other.n_ != n_) throw precondition_error("lattice ambient mismatch");
    for (int r = 0; r < other.rank(); ++r)
        if (!contains(other.basis_.row(r))) return false;
    return true;
}

ExponentLattice ExponentLattice::saturation() const {
    return orthogonal_complement().orthogonal_complement();
}

bool ExponentLattice::is_saturated() const { return saturation_index() == 1; }

Int ExponentLattice::saturation_index() const {
    if (rank() == 0) return 1;
    SnfResult snf = smith_normal_form(basis_);
    Int index = 1;
    for (int i = 0; i < snf.rank; ++i) index *= snf.d.at(i, i);
    return index;
}

ExponentLattice ExponentLattice::orthogonal_complement() const {
    return ExponentLattice(n_, right_kernel(basis_));
}

ExponentLattice ExponentLattice::sum(const ExponentLattice& other) const {
    if (other.n_ != n_) throw precondition_error("lattice ambient mismatch");
    IntegerMatrix stacked(rank() + other.rank(), n_);
    for (int r = 0; r < rank(); ++r)
        for (int c = 0; c < n_; ++c) stacked.at(r, c) = basis_.at(r, c);
    for (int r = 0; r < other.rank(); ++r)
        for (int c = 0; c < n_; ++c) stacked.at(rank() + r, c) = other.basis_.at(r, c);
    return ExponentLattice(n_, stacked);
}

QuotientMap quotient_map(const ExponentLattice& relations) {
    if (!relations.is_saturated())
        throw precondition_error("quotient map requires a saturated relation lattice");
    QuotientMap q;
    q.ambient_dim = relations.ambient_dim();
    q.target_dim = relations.rank();
    q.matrix = relations.basis();
    return q;
}

std::vector<Rational> apply_quotient(const QuotientMap& q, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != q.ambient_dim)
        throw precondition_error("quotient input has the wrong dimension");
    for (const Rational& c : x)
        if (c == 0) throw precondition_error("quotient of a point outside the torus");
    std::vector<Rational> out(q.target_dim, Rational(1));
    for (int j = 0; j < q.target_dim; ++j) {
        for (int i = 0; i < q.ambient_dim; ++i) {
            const Int& e = q.matrix.at(j, i);
            if (e == 0) continue;
            if (!e.fits_slong_p()) throw precondition_error("quotient exponent out of range");
            long k = e.get_si();
            Rational base = k > 0 ? x[i] : Rational(1) / x[i];
            for (long t = 0; t < std::abs(k); ++t) out[j] *= base;
        }
    }
    return out;
}

IntegerMatrix quotient_right_inverse(const QuotientMap& q) {
    return right_inverse_saturated(q.matrix);
}

}  // namespace atyp
