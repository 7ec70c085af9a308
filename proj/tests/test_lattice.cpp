#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atyp/error.hpp"
#include "atyp/lattice.hpp"

using namespace atyp;

namespace {

ExponentLattice span_of(int n, const std::vector<std::vector<Int>>& rows) {
    return ExponentLattice(n, IntegerMatrix::from_rows(rows));
}

}  // namespace

TEST_CASE("basis is canonicalized") {
    ExponentLattice l = span_of(2, {{2, 4}, {1, 1}});
    CHECK(l.rank() == 2);
    CHECK(l.basis().to_string() == "[[1,1],[0,2]]");

    ExponentLattice dependent = span_of(2, {{1, 1}, {2, 2}, {3, 3}});
    CHECK(dependent.rank() == 1);
    CHECK(dependent.basis().to_string() == "[[1,1]]");

    CHECK(span_of(2, {{1, 1}}) == span_of(2, {{-1, -1}}));
    CHECK(ExponentLattice::zero(3).rank() == 0);
    CHECK(ExponentLattice::full(3).rank() == 3);
    CHECK(ExponentLattice::full(3).basis() == IntegerMatrix::identity(3));
}

TEST_CASE("membership") {
    ExponentLattice l = span_of(3, {{1, 0, 1}, {0, 2, 0}});
    CHECK(l.contains({1, 0, 1}));
    CHECK(l.contains({2, 2, 2}));
    CHECK(l.contains({0, 0, 0}));
    CHECK_FALSE(l.contains({0, 1, 0}));
    CHECK_FALSE(l.contains({1, 0, 0}));
    CHECK_THROWS_AS((void)l.contains({1, 0}), precondition_error);

    CHECK(l.contains_lattice(span_of(3, {{2, 2, 2}})));
    CHECK_FALSE(l.contains_lattice(ExponentLattice::full(3)));
    CHECK(ExponentLattice::full(3).contains_lattice(l));
}

TEST_CASE("saturation of a scaled line") {
    ExponentLattice l = span_of(2, {{2, 2}});
    ExponentLattice sat = l.saturation();
    CHECK(sat == span_of(2, {{1, 1}}));
    CHECK(sat.rank() == l.rank());
    CHECK(l.saturation_index() == 2);
    CHECK_FALSE(l.is_saturated());
    CHECK(sat.is_saturated());
    CHECK(sat.saturation() == sat);
}

TEST_CASE("saturation fills the rectangular lattice") {
    ExponentLattice l = span_of(2, {{2, 0}, {0, 3}});
    CHECK(l.saturation() == ExponentLattice::full(2));
    CHECK(l.saturation_index() == 6);
}

TEST_CASE("saturated inputs are fixed points") {
    ExponentLattice l = span_of(3, {{1, 2, 3}, {0, 1, 1}});
    CHECK(l.is_saturated());
    CHECK(l.saturation() == l);
    CHECK(l.saturation_index() == 1);
}

TEST_CASE("saturation contains the input with the reported index") {
    ExponentLattice l = span_of(3, {{2, 4, 0}, {0, 6, 6}});
    ExponentLattice sat = l.saturation();
    CHECK(sat.contains_lattice(l));
    CHECK(sat.rank() == l.rank());
    CHECK(l.saturation_index() == 12);
    for (int r = 0; r < sat.basis().rows(); ++r) {
        std::vector<Int> scaled = sat.basis().row(r);
        for (Int& v : scaled) v *= l.saturation_index();
        CHECK(l.contains(scaled));
    }
}

TEST_CASE("orthogonal complement") {
    ExponentLattice l = span_of(3, {{1, 1, 0}});
    ExponentLattice perp = l.orthogonal_complement();
    CHECK(perp.rank() == 2);
    CHECK(perp.is_saturated());
    for (int r = 0; r < perp.basis().rows(); ++r) {
        Int dot = 0;
        std::vector<Int> row = perp.basis().row(r);
        dot = row[0] * 1 + row[1] * 1 + row[2] * 0;
        CHECK(dot == 0);
    }
    CHECK(ExponentLattice::zero(2).orthogonal_complement() == ExponentLattice::full(2));
    CHECK(ExponentLattice::full(2).orthogonal_complement() == ExponentLattice::zero(2));
}

TEST_CASE("sum of lattices") {
    ExponentLattice a = span_of(2, {{2, 0}});
    ExponentLattice b = span_of(2, {{0, 3}});
    ExponentLattice s = a.sum(b);
    CHECK(s == span_of(2, {{2, 0}, {0, 3}}));
    CHECK(s.contains_lattice(a));
    CHECK(s.contains_lattice(b));
    CHECK(a.sum(ExponentLattice::zero(2)) == a);
}

TEST_CASE("quotient by the diagonal subgroup") {
    // The subgroup {(t, t)} has relation lattice spanned by (1, -1); the
    // quotient map is x/y.
    ExponentLattice relations = span_of(2, {{1, -1}});
    QuotientMap q = quotient_map(relations);
    CHECK(q.ambient_dim == 2);
    CHECK(q.target_dim == 1);
    CHECK(q.matrix.to_string() == "[[1,-1]]");

    std::vector<Rational> image = apply_quotient(q, {Rational(7), Rational(7)});
    REQUIRE(image.size() == 1);
    CHECK(image[0] == 1);
    image = apply_quotient(q, {Rational(6), Rational(3)});
    CHECK(image[0] == 2);
    CHECK_THROWS_AS(apply_quotient(q, {Rational(0), Rational(3)}), precondition_error);
    CHECK_THROWS_AS(apply_quotient(q, {Rational(1)}), precondition_error);
}

TEST_CASE("quotient map degenerate cases") {
    QuotientMap full = quotient_map(ExponentLattice::full(3));
    CHECK(full.target_dim == 3);
    CHECK(full.matrix == IntegerMatrix::identity(3));

    QuotientMap trivial = quotient_map(ExponentLattice::zero(3));
    CHECK(trivial.target_dim == 0);
    CHECK(apply_quotient(trivial, {Rational(2), Rational(3), Rational(5)}).empty());

    CHECK_THROWS_AS(quotient_map(span_of(2, {{2, 2}})), precondition_error);
}

TEST_CASE("quotient map kernel is exactly the subgroup directions") {
    ExponentLattice relations = span_of(3, {{1, -1, 0}, {0, 1, -1}});
    QuotientMap q = quotient_map(relations);
    CHECK(q.target_dim == 2);
    // points on the diagonal (t, t, t) map to (1, 1)
    std::vector<Rational> image = apply_quotient(q, {Rational(5), Rational(5), Rational(5)});
    for (const Rational& v : image) CHECK(v == 1);
    // a point off the diagonal does not
    image = apply_quotient(q, {Rational(5), Rational(5), Rational(1)});
    bool all_one = true;
    for (const Rational& v : image) all_one = all_one && (v == 1);
    CHECK_FALSE(all_one);
}

TEST_CASE("right inverse splits the quotient") {
    ExponentLattice relations = span_of(2, {{1, -1}});
    QuotientMap q = quotient_map(relations);
    IntegerMatrix inv = quotient_right_inverse(q);
    CHECK(q.matrix * inv == IntegerMatrix::identity(q.target_dim));

    ExponentLattice rel3 = span_of(3, {{1, -1, 0}, {1, 0, -2}});
    CHECK(rel3.is_saturated());
    QuotientMap q3 = quotient_map(rel3);
    IntegerMatrix inv3 = quotient_right_inverse(q3);
    CHECK(q3.matrix * inv3 == IntegerMatrix::identity(q3.target_dim));
}

TEST_CASE("quotient composed with the subgroup parametrization is trivial") {
    // Directions of the subgroup cut by the relations: the orthogonal
    // complement. Pushing any direction through the quotient matrix gives the
    // zero exponent vector, i.e. the monomial identity 1.
    ExponentLattice relations = span_of(3, {{2, -1, -1}});
    ExponentLattice directions = relations.orthogonal_complement();
    QuotientMap q = quotient_map(relations.saturation());
    IntegerMatrix prod = q.matrix * directions.basis().transpose();
    CHECK(prod.is_zero());
}
