#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atyp/ideal.hpp"

using namespace atyp;

namespace {

PolynomialIdeal affine(int n, std::initializer_list<const char*> gens) {
    std::vector<Poly> ps;
    for (const char* g : gens) ps.push_back(parse_poly(g, n));
    return PolynomialIdeal(n, std::move(ps), false);
}

PolynomialIdeal torus(int n, std::initializer_list<const char*> gens) {
    std::vector<Poly> ps;
    for (const char* g : gens) ps.push_back(parse_poly(g, n));
    return PolynomialIdeal(n, std::move(ps), true);
}

}  // namespace

TEST_CASE("groebner basics") {
    TermOrder lex = TermOrder::lex(1);
    auto gb = groebner_basis({parse_poly("x1", 1)}, lex);
    REQUIRE(gb.size() == 1);
    CHECK(gb[0] == parse_poly("x1", 1));

    TermOrder lex2 = TermOrder::lex(2);
    auto gb2 = groebner_basis({parse_poly("x1 + x2 - 1", 2), parse_poly("x1 - x2", 2)}, lex2);
    REQUIRE(gb2.size() == 2);
    CHECK(gb2[0] == parse_poly("2*x1 - 1", 2));
    CHECK(gb2[1] == parse_poly("2*x2 - 1", 2));
}

TEST_CASE("groebner membership check") {
    TermOrder lex = TermOrder::lex(2);
    auto gb = groebner_basis({parse_poly("x1^2 - x2", 2), parse_poly("x2^2 - x1", 2)}, lex);
    Poly probe = parse_poly("x1*x2 - 1", 2);
    CHECK_FALSE(normal_form(probe, gb, lex).is_zero());
    Poly member = parse_poly("x1^2 - x2", 2) * parse_poly("x2^3 + x1", 2);
    CHECK(normal_form(member, gb, lex).is_zero());
}

TEST_CASE("reduced basis is unique across generator presentations") {
    TermOrder ord = TermOrder::grlex(2);
    auto a = groebner_basis({parse_poly("x1 + x2 - 1", 2), parse_poly("x1 - x2", 2)}, ord);
    auto b = groebner_basis({parse_poly("2*x1 - 1", 2), parse_poly("2*x2 - 1", 2)}, ord);
    auto c = groebner_basis(
        {parse_poly("x1 + x2 - 1", 2), parse_poly("2*x2 - 1", 2), parse_poly("x1 - x2", 2)}, ord);
    CHECK(a == b);
    CHECK(a == c);

    TermOrder lex3 = TermOrder::lex(3);
    auto d1 = groebner_basis({parse_poly("x1^2 + x2 + x3", 3), parse_poly("x2*x3 - 1", 3)}, lex3);
    auto d2 = groebner_basis({parse_poly("x1^2 + x2 + x3", 3),
                              parse_poly("x2*x3 - 1", 3),
                              parse_poly("x1^2*x3 + x2*x3 + x3^2", 3)},
                             lex3);
    CHECK(d1 == d2);
}

TEST_CASE("dimension") {
    CHECK(affine(2, {}).dimension() == 2);
    CHECK(affine(2, {"x1 - 2", "x2 - 3"}).dimension() == 0);
    CHECK(torus(2, {"x1*x2 - 1"}).dimension() == 1);
    CHECK(affine(2, {"x1", "x1 - 1"}).dimension() == -1);
    CHECK(affine(2, {"x1", "x1 - 1"}).is_unit());
    CHECK(affine(3, {"x1*x2 - x3"}).dimension() == 2);
}

TEST_CASE("torus mode saturates away coordinate components") {
    // In affine space x*y = 0 is a pair of lines; in the torus it is empty.
    CHECK(affine(2, {"x1*x2"}).dimension() == 1);
    CHECK(torus(2, {"x1*x2"}).is_unit());
    CHECK(torus(1, {"x1"}).is_unit());
    CHECK(torus(1, {"x1"}).dimension() == -1);

    // x*(x - 1) in the torus leaves only x = 1.
    auto i = torus(1, {"x1^2 - x1"});
    CHECK_FALSE(i.is_unit());
    CHECK(i.dimension() == 0);
    CHECK(i.contains_poly(parse_poly("x1 - 1", 1)));
}

TEST_CASE("laurent generators are cleared in torus mode") {
    auto i = torus(2, {"x1*x2^-1 - 2"});
    CHECK(i.dimension() == 1);
    CHECK(i.contains_poly(parse_poly("x1 - 2*x2", 2)));
    CHECK_THROWS_AS(affine(2, {"x1*x2^-1 - 2"}), precondition_error);
}

TEST_CASE("elimination") {
    auto dominant = eliminate(torus(2, {"x1 - 2*x2"}), {1});
    CHECK(dominant.ambient_dim() == 1);
    CHECK(dominant.effective_generators().empty());
    CHECK(dominant.dimension() == 1);

    auto point = eliminate(affine(2, {"x1 - 2", "x2 - 3"}), {0});
    REQUIRE(point.generators().size() == 1);
    CHECK(point.generators()[0] == parse_poly("x1 - 2", 1));

    auto determinantal = eliminate(affine(4, {"x1*x4 - x2*x3"}), {2, 3});
    CHECK(determinantal.effective_generators().empty());

    CHECK_THROWS_AS(eliminate(affine(2, {}), {1, 0}), precondition_error);
}

TEST_CASE("saturation by a polynomial") {
    auto sat = saturate_generators({parse_poly("x1*x2", 2)}, parse_poly("x1", 2), 2);
    REQUIRE(sat.size() == 1);
    CHECK(sat[0] == parse_poly("x2", 2));

    auto unchanged = saturate_generators({parse_poly("x2 - 1", 2)}, parse_poly("x1", 2), 2);
    REQUIRE(unchanged.size() == 1);
    CHECK(unchanged[0] == parse_poly("x2 - 1", 2));
}

TEST_CASE("monomial constancy") {
    auto coset = torus(2, {"x1 - 2*x2"});
    auto c = monomial_constant_on(coset, {1, -1});
    REQUIRE(c.has_value());
    CHECK(*c == 2);
    CHECK(monomial_constant_on(coset, {0, 0}) == make_rational(1));
    CHECK(monomial_constant_on(coset, {-1, 1}) == make_rational(1, 2));
    CHECK(monomial_constant_on(coset, {2, -2}) == make_rational(4));

    auto line = torus(2, {"x1 + x2 - 1"});
    CHECK_FALSE(monomial_constant_on(line, {1, -1}).has_value());
    CHECK_FALSE(monomial_constant_on(line, {1, 0}).has_value());

    auto point = affine(2, {"x1 - 2", "x2 - 3"});
    CHECK(monomial_constant_on(point, {1, 1}) == make_rational(6));

    CHECK_THROWS_AS(monomial_constant_on(affine(1, {"1"}), {0}), precondition_error);
    CHECK_THROWS_AS(monomial_constant_on(point, {-1, 0}), precondition_error);
}

TEST_CASE("constancy certificate reduces to zero") {
    auto coset = torus(2, {"x1 - 2*x2"});
    Exponent m{1, -1};
    auto c = monomial_constant_on(coset, m);
    REQUIRE(c.has_value());
    // x^{m+} - c * x^{m-} must lie in the ideal
    Poly cert = parse_poly("x1", 2) - parse_poly("x2", 2) * *c;
    CHECK(coset.contains_poly(cert));
}

TEST_CASE("ideal containment and equality") {
    auto big = torus(2, {"x1 - 2*x2"});
    auto small = torus(2, {"x1 - 2*x2", "x2 - 1"});
    CHECK(small.contains_ideal_of(big));
    CHECK_FALSE(big.contains_ideal_of(small));
    CHECK(big.same_locus_ideal(torus(2, {"2*x2 - x1"})));
    CHECK_FALSE(big.same_locus_ideal(small));
}

TEST_CASE("budgets fail loudly") {
    GroebnerBudget tight;
    tight.max_total_degree = 5;
    std::vector<Poly> gens{parse_poly("x1^6 - 1", 1)};
    CHECK_THROWS_AS(groebner_basis(gens, TermOrder::lex(1), tight), budget_error);

    PolynomialIdeal i(1, {parse_poly("x1^30 - 1", 1)}, false);
    CHECK_THROWS_AS(i.dimension(), budget_error);
}

TEST_CASE("with_extra composes generators") {
    auto base = torus(2, {"x1 - 2*x2"});
    auto cut = base.with_extra({parse_poly("x2 - 1", 2)});
    CHECK(cut.dimension() == 0);
    CHECK(cut.contains_poly(parse_poly("x1 - 2", 2)));
}

TEST_CASE("staircase dimension") {
    CHECK(staircase_dimension({}, 3) == 3);
    CHECK(staircase_dimension({{1, 0}, {0, 1}}, 2) == 0);
    CHECK(staircase_dimension({{1, 0}}, 2) == 1);
    CHECK(staircase_dimension({{1, 1}}, 2) == 1);
    CHECK(staircase_dimension({{0, 0}}, 2) == -1);
}
