// intmatrix.hpp
// Dense integer matrices over GMP with the normal forms the lattice layer
// needs: row-style Hermite form with transformation, Smith form with both
// transformations, integer kernels and exact linear solves. All arithmetic is
// plain big-integer row reduction; no modular shortcuts.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atyp/rational.hpp"

namespace atyp {

class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

    static IntegerMatrix identity(int n);
    static IntegerMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::vector<Int> row(int r) const;
    IntegerMatrix transpose() const;
    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    bool operator==(const IntegerMatrix& rhs) const = default;

    void swap_rows(int a, int b);
    void negate_row(int r);
    // row a += k * row b
    void add_row_multiple(int a, int b, const Int& k);

    bool is_zero() const;
    std::string to_string() const;  // "[[1,2],[3,4]]"

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> data_;
};

struct HnfResult {
    IntegerMatrix h;  // row-style Hermite normal form
    IntegerMatrix u;  // unimodular, u * m == h
    int rank = 0;
};

// Row-style HNF: pivot columns strictly increasing, pivots positive, entries
// above each pivot reduced into [0, pivot), zero rows at the bottom.
HnfResult hermite_normal_form(const IntegerMatrix& m);

struct SnfResult {
    IntegerMatrix d;  // diagonal, d1 | d2 | ... , nonnegative
    IntegerMatrix u;  // unimodular
    IntegerMatrix v;  // unimodular, u * m * v == d
    int rank = 0;
};

SnfResult smith_normal_form(const IntegerMatrix& m);

// Basis (as rows) of { x : m * x = 0 }. Always a saturated lattice.
IntegerMatrix right_kernel(const IntegerMatrix& m);

// One integer solution of m * x = b, if any.
std::optional<std::vector<Int>> solve_integer(const IntegerMatrix& m, const std::vector<Int>& b);

// One rational solution of m * x = b, if any.
std::optional<std::vector<Rational>> solve_rational(const IntegerMatrix& m,
                                                    const std::vector<Rational>& b);

// For m with full row rank and saturated row lattice: A with m * A = identity.
IntegerMatrix right_inverse_saturated(const IntegerMatrix& m);

}  // namespace atyp
