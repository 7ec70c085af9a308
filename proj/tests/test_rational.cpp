#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atyp/rational.hpp"

using namespace atyp;

TEST_CASE("construction is canonical") {
    CHECK(make_rational(2, 6) == make_rational(1, 3));
    CHECK(make_rational(-2, -6) == make_rational(1, 3));
    CHECK(make_rational(2, -6) == make_rational(-1, 3));
    CHECK(rational_to_string(make_rational(2, 6)) == "1/3");
    CHECK(rational_to_string(make_rational(4, 2)) == "2");
    CHECK(rational_to_string(make_rational(-3, 9)) == "-1/3");
    CHECK(rational_to_string(make_rational(0, 5)) == "0");
    CHECK_THROWS_AS(make_rational(1, 0), precondition_error);
}

TEST_CASE("arithmetic stays canonical") {
    Rational a = make_rational(1, 6);
    Rational b = make_rational(1, 3);
    CHECK(rational_to_string(a + b) == "1/2");
    CHECK(rational_to_string(a - b) == "-1/6");
    CHECK(rational_to_string(a * b) == "1/18");
    CHECK(rational_to_string(a / b) == "1/2");
}

TEST_CASE("string round-trip") {
    const char* cases[] = {"0", "1", "-1", "7/3", "-22/7", "123456789123456789/2"};
    for (const char* s : cases) {
        CHECK(rational_to_string(rational_from_string(s)) == s);
    }
    CHECK(rational_from_string("4/6") == make_rational(2, 3));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(rational_from_string(""), parse_error);
    CHECK_THROWS_AS(rational_from_string("1/"), parse_error);
    CHECK_THROWS_AS(rational_from_string("/2"), parse_error);
    CHECK_THROWS_AS(rational_from_string("1/0"), parse_error);
    CHECK_THROWS_AS(rational_from_string("a"), parse_error);
    CHECK_THROWS_AS(rational_from_string("1.5"), parse_error);
    CHECK_THROWS_AS(rational_from_string("1 /2"), parse_error);
}

TEST_CASE("perfect powers") {
    Int root;
    CHECK(is_perfect_power_exact(Int(8), 3, root));
    CHECK(root == 2);
    CHECK(is_perfect_power_exact(Int(-27), 3, root));
    CHECK(root == -3);
    CHECK_FALSE(is_perfect_power_exact(Int(8), 2, root));
    CHECK(is_perfect_power_exact(Int(1), 7, root));
    CHECK(root == 1);
    CHECK_FALSE(is_perfect_power_exact(Int(-4), 2, root));
}
