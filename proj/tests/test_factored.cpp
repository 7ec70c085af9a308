#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "atyp/error.hpp"
#include "atyp/factored.hpp"

using namespace atyp;

namespace {

FactoredValue fv(long num, long den = 1) {
    return FactoredValue::from_rational(make_rational(Int(num), Int(den)));
}

MultiplicativePoint pt(std::initializer_list<long> coords) {
    MultiplicativePoint out;
    for (long c : coords) out.push_back(fv(c));
    return out;
}

}  // namespace

TEST_CASE("factored form of rationals") {
    CHECK(fv(1).is_one());
    CHECK(fv(1).to_string() == "1");
    CHECK(fv(12).to_string() == "2^2 * 3^1");
    CHECK(fv(1, 3).to_string() == "3^-1");
    CHECK(fv(-6).to_string() == "2^1 * 3^1 * zeta(2)^1");
    CHECK(fv(8, 3).to_string() == "2^3 * 3^-1");
    CHECK(fv(12).to_rational() == 12);
    CHECK(fv(-6).to_rational() == -6);
    CHECK(fv(8, 3).to_rational() == make_rational(8, 3));
    CHECK_THROWS_AS(FactoredValue::from_rational(Rational(0)), precondition_error);
}

TEST_CASE("large prime factors and the factorization budget") {
    CHECK(fv(1000003).to_string() == "1000003^1");
    Rational big = Rational(Int("1000000000039")) * Rational(Int("1000000000061"));
    CHECK_THROWS_AS(FactoredValue::from_rational(big), budget_error);
}

TEST_CASE("roots of unity are kept reduced") {
    FactoredValue z = FactoredValue::root_of_unity(4, 2);
    CHECK(z == FactoredValue::root_of_unity(2, 1));
    CHECK(z.to_rational() == -1);
    CHECK(FactoredValue::root_of_unity(4, 1).to_string() == "zeta(4)^1");
    CHECK(FactoredValue::root_of_unity(6, 4).to_string() == "zeta(3)^2");
    CHECK(FactoredValue::root_of_unity(5, 0).is_one());
    CHECK(FactoredValue::root_of_unity(4, -1) == FactoredValue::root_of_unity(4, 3));
    CHECK_FALSE(FactoredValue::root_of_unity(4, 1).is_rational());
    CHECK_THROWS_AS(FactoredValue::root_of_unity(4, 1).to_rational(), precondition_error);
}

TEST_CASE("multiplication and powers") {
    CHECK(fv(6) * fv(10) == fv(60));
    CHECK(fv(6) * fv(1, 6) == fv(1));
    CHECK(fv(-2) * fv(-3) == fv(6));
    CHECK(fv(2).pow(5) == fv(32));
    CHECK(fv(2).pow(-2) == fv(1, 4));
    CHECK(fv(-2).pow(2) == fv(4));
    CHECK(fv(6).inverse() == fv(1, 6));
    FactoredValue i = FactoredValue::root_of_unity(4, 1);
    CHECK(i * i == fv(-1));
    CHECK(i.pow(4).is_one());
    CHECK((i * fv(2)).pow(2) == fv(-4));
    CHECK(fv(5).pow(0).is_one());
}

TEST_CASE("canonical strings round-trip") {
    for (const char* text : {"1", "2^3 * 3^-1 * zeta(4)^1", "zeta(2)^1", "7^-2",
                             "2^1 * 5^1 * zeta(3)^2", "1000003^1"}) {
        FactoredValue v = parse_factored_value(text);
        CHECK(v.to_string() == text);
    }
}

TEST_CASE("lenient parse forms") {
    CHECK(parse_factored_value("-1") == fv(-1));
    CHECK(parse_factored_value("6") == fv(6));
    CHECK(parse_factored_value("4/9") == fv(4, 9));
    CHECK(parse_factored_value("-8/3") == fv(-8, 3));
    CHECK(parse_factored_value("4^2") == fv(16));
    CHECK(parse_factored_value("2 * 2") == fv(4));
    CHECK(parse_factored_value("zeta(4)") == FactoredValue::root_of_unity(4, 1));
    CHECK(parse_factored_value(" 2^1 * 3^1 ") == fv(6));
    CHECK(parse_factored_value("zeta(8)^6") == FactoredValue::root_of_unity(4, 3));
    CHECK_THROWS_AS(parse_factored_value(""), parse_error);
    CHECK_THROWS_AS(parse_factored_value("0"), parse_error);
    CHECK_THROWS_AS(parse_factored_value("2 ** 3"), parse_error);
    CHECK_THROWS_AS(parse_factored_value("zeta(0)^1"), parse_error);
    CHECK_THROWS_AS(parse_factored_value("zeta[4]"), parse_error);
    CHECK_THROWS_AS(parse_factored_value("2^"), parse_error);
    CHECK_THROWS_AS(parse_factored_value("x"), parse_error);
}

TEST_CASE("points round-trip and convert") {
    MultiplicativePoint p = pt({2, -3});
    CHECK(point_to_string(p) == "(2^1, 3^1 * zeta(2)^1)");
    CHECK(parse_multiplicative_point(point_to_string(p)) == p);
    CHECK(parse_multiplicative_point("4/9") == (MultiplicativePoint{fv(4, 9)}));

    auto rats = point_to_rationals(p);
    REQUIRE(rats.has_value());
    CHECK((*rats)[0] == 2);
    CHECK((*rats)[1] == -3);
    MultiplicativePoint q = {FactoredValue::root_of_unity(4, 1)};
    CHECK_FALSE(point_to_rationals(q).has_value());
    CHECK(point_from_rationals({Rational(2), Rational(-3)}) == p);
}

TEST_CASE("monomial images") {
    MultiplicativePoint p = pt({2, 3});
    CHECK(evaluate_monomial(p, {Int(1), Int(-1)}) == fv(2, 3));
    CHECK(evaluate_monomial(p, {Int(0), Int(0)}).is_one());
    IntegerMatrix m = IntegerMatrix::from_rows({{1, 1}, {2, 0}});
    MultiplicativePoint image = monomial_image(m, p);
    REQUIRE(image.size() == 2);
    CHECK(image[0] == fv(6));
    CHECK(image[1] == fv(4));
    CHECK_THROWS_AS(evaluate_monomial(p, {Int(1)}), precondition_error);
}

TEST_CASE("word evaluation") {
    std::vector<MultiplicativePoint> gens = {pt({2, 3}), pt({5, 1})};
    MultiplicativePoint w = evaluate_word(gens, {Int(2), Int(-1)});
    CHECK(w == (MultiplicativePoint{fv(4, 5), fv(9)}));
    CHECK(evaluate_word(gens, {}) == pt({1, 1}));
}

TEST_CASE("membership in a cyclic group") {
    std::vector<MultiplicativePoint> gens = {pt({2, 3})};
    CHECK(multiplicative_membership(pt({4, 9}), gens, false));
    CHECK(multiplicative_membership(pt({1, 1}), gens, false));
    CHECK(multiplicative_membership((MultiplicativePoint{fv(1, 2), fv(1, 3)}), gens, false));
    CHECK_FALSE(multiplicative_membership(pt({2, 9}), gens, false));
    CHECK_FALSE(multiplicative_membership(pt({8, 9}), gens, false));
}

TEST_CASE("division closure membership") {
    std::vector<MultiplicativePoint> gens = {pt({2, 2})};
    CHECK_FALSE(multiplicative_membership(pt({2, 1}), gens, true));
    CHECK(multiplicative_membership(pt({2, 2}), gens, true));
    CHECK(multiplicative_membership(pt({4, 4}), gens, true));
    // torsion is absorbed by a further power
    CHECK(multiplicative_membership(pt({-2, 2}), gens, true));
    CHECK(multiplicative_membership({FactoredValue::root_of_unity(6, 1), fv(1)}, gens, true));
    // the closure is a group: inverses and non-integer "roots" of words
    CHECK(multiplicative_membership(pt({1, 1}), {}, true));
    CHECK_FALSE(multiplicative_membership(pt({2, 1}), {}, true));
}

TEST_CASE("signs need explicit torsion generators") {
    std::vector<MultiplicativePoint> gens = {pt({2, 3})};
    CHECK_FALSE(multiplicative_membership(pt({-1, 1}), gens, false));
    std::vector<MultiplicativePoint> with_sign = gens;
    with_sign.push_back(pt({-1, 1}));
    with_sign.push_back(pt({1, -1}));
    CHECK(multiplicative_membership(pt({-1, 1}), with_sign, false));
    CHECK(multiplicative_membership(pt({-4, -9}), with_sign, false));
    CHECK_FALSE(multiplicative_membership(pt({-1, 2}), gens, false));
}

TEST_CASE("torsion congruences are solved exactly") {
    FactoredValue i = FactoredValue::root_of_unity(4, 1);
    std::vector<MultiplicativePoint> gens = {{i * fv(2)}};
    // (2i)^2 = -4, (2i)^4 = 16
    CHECK(multiplicative_membership({fv(-4)}, gens, false));
    CHECK(multiplicative_membership({fv(16)}, gens, false));
    CHECK_FALSE(multiplicative_membership({fv(4)}, gens, false));
    CHECK_FALSE(multiplicative_membership({fv(2)}, gens, false));
    CHECK_FALSE(multiplicative_membership({i}, gens, false));
}

TEST_CASE("group containment with a torsion cap") {
    FiniteRankGroup g;
    g.ambient_dim = 2;
    g.generators = {pt({2, 3})};
    g.torsion_order_cap = 2;
    CHECK(group_contains(g, pt({-1, 1})));
    CHECK(group_contains(g, pt({-4, 9})));
    CHECK_FALSE(group_contains(g, {FactoredValue::root_of_unity(4, 1), fv(1)}));

    FiniteRankGroup plain;
    plain.ambient_dim = 2;
    plain.generators = {pt({2, 3})};
    CHECK_FALSE(group_contains(plain, pt({-1, 1})));
    CHECK(effective_generators(g).size() == 3);
    CHECK(effective_generators(plain).size() == 1);
    CHECK_THROWS_AS(group_contains(g, pt({2})), precondition_error);
}

TEST_CASE("mapping a group through a monomial map") {
    FiniteRankGroup g;
    g.ambient_dim = 2;
    g.generators = {pt({2, 1})};
    g.division_closed = true;
    IntegerMatrix ratio = IntegerMatrix::from_rows({{1, -1}});
    FiniteRankGroup image = map_group(ratio, g);
    CHECK(image.ambient_dim == 1);
    CHECK(group_contains(image, {fv(2)}));
    CHECK(group_contains(image, {fv(4)}));
    CHECK_FALSE(group_contains(image, {fv(3)}));
}

TEST_CASE("membership matches exhaustive word search") {
    std::mt19937 rng(20260814);
    std::uniform_int_distribution<int> prime_pick(0, 5);
    std::uniform_int_distribution<int> exp_pick(-2, 2);
    const long primes[] = {2, 3, 5, 7, 11, 13};

    auto random_value = [&]() {
        Rational v(1);
        for (int reps = 0; reps < 2; ++reps) {
            long p = primes[prime_pick(rng)];
            int e = exp_pick(rng);
            Rational f(p);
            Rational acc(1);
            for (int k = 0; k < (e < 0 ? -e : e); ++k) acc *= f;
            if (e < 0) acc = 1 / acc;
            v *= acc;
        }
        return FactoredValue::from_rational(v);
    };

    for (int trial = 0; trial < 40; ++trial) {
        std::vector<MultiplicativePoint> gens = {{random_value(), random_value()},
                                                 {random_value(), random_value()}};
        MultiplicativePoint probe = {random_value(), random_value()};
        bool found = false;
        for (int k = -6; k <= 6 && !found; ++k)
            for (int m = -6; m <= 6 && !found; ++m)
                found = evaluate_word(gens, {Int(k), Int(m)}) == probe;
        if (found) {
            CHECK(multiplicative_membership(probe, gens, false));
            CHECK(multiplicative_membership(probe, gens, true));
        }
        if (!multiplicative_membership(probe, gens, false)) CHECK_FALSE(found);
    }

    // words of the generators themselves are always members
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<MultiplicativePoint> gens = {{random_value(), random_value()},
                                                 {random_value(), random_value()}};
        MultiplicativePoint probe = evaluate_word(gens, {Int(exp_pick(rng)), Int(exp_pick(rng))});
        CHECK(multiplicative_membership(probe, gens, false));
        CHECK(multiplicative_membership(probe, gens, true));
    }
}
