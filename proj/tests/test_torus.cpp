#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "atyp/error.hpp"
#include "atyp/torus.hpp"

using namespace atyp;

namespace {

ExponentLattice span_of(int n, const std::vector<std::vector<Int>>& rows) {
    return ExponentLattice(n, IntegerMatrix::from_rows(rows));
}

PolynomialIdeal torus(int n, std::initializer_list<const char*> gens) {
    std::vector<Poly> ps;
    for (const char* g : gens) ps.push_back(parse_poly(g, n));
    return PolynomialIdeal(n, std::move(ps), true);
}

FactoredValue fv(long num, long den = 1) {
    return FactoredValue::from_rational(make_rational(num, den));
}

MultiplicativePoint pt(std::initializer_list<long> coords) {
    MultiplicativePoint p;
    for (long c : coords) p.push_back(fv(c));
    return p;
}

FiniteRankGroup group(int n, std::vector<MultiplicativePoint> gens, bool division_closed,
                      long cap = 1) {
    return FiniteRankGroup{n, std::move(gens), division_closed, cap};
}

TorusCoset ratio_coset(long num, long den = 1) {
    return coset_from_relations(span_of(2, {{1, -1}}), {fv(num, den)});
}

}  // namespace

TEST_CASE("coset construction") {
    TorusCoset full = full_torus(2);
    CHECK(full.is_full());
    CHECK(full.dimension() == 2);
    CHECK(full.is_special());
    CHECK(coset_to_string(full) == "{}");

    TorusCoset c = ratio_coset(2);
    CHECK(c.dimension() == 1);
    CHECK_FALSE(c.is_full());
    CHECK_FALSE(c.is_special());
    CHECK(coset_to_string(c) == "{x1^1*x2^-1 = 2^1}");

    TorusCoset half = coset_from_relations(span_of(2, {{1, -1}}), {fv(-1)});
    CHECK(half.is_special());
    CHECK(coset_to_string(half) == "{x1^1*x2^-1 = zeta(2)^1}");

    CHECK_THROWS_AS(coset_from_relations(span_of(2, {{2, 0}}), {fv(4)}), precondition_error);
    CHECK_THROWS_AS(coset_from_relations(span_of(2, {{1, -1}}), {fv(2), fv(3)}),
                    precondition_error);
}

TEST_CASE("coset through a point") {
    TorusCoset p = coset_through_point(ExponentLattice::full(2), pt({4, 8}));
    CHECK(p.dimension() == 0);
    CHECK(coset_to_string(p) == "{x1^1 = 2^2; x2^1 = 2^3}");

    TorusCoset line = coset_through_point(span_of(2, {{1, -1}}), pt({2, 1}));
    CHECK(line == ratio_coset(2));

    CHECK_THROWS_AS(coset_through_point(ExponentLattice::full(2), pt({4})), precondition_error);
}

TEST_CASE("coset membership and constants") {
    TorusCoset c = ratio_coset(2);
    CHECK(coset_contains(c, pt({2, 1})));
    CHECK(coset_contains(c, pt({4, 2})));
    CHECK(coset_contains(c, MultiplicativePoint{fv(1), fv(1, 2)}));
    CHECK_FALSE(coset_contains(c, pt({2, 2})));
    CHECK_FALSE(coset_contains(c, MultiplicativePoint{fv(-2), fv(1)}));
    CHECK_THROWS_AS(coset_contains(c, pt({2})), precondition_error);

    CHECK(coset_constant(c, {1, -1}) == fv(2));
    CHECK(coset_constant(c, {3, -3}) == fv(8));
    CHECK(coset_constant(c, {0, 0}) == fv(1));
    CHECK_THROWS_AS(coset_constant(c, {1, 0}), precondition_error);
    CHECK_THROWS_AS(coset_constant(c, {1}), precondition_error);
}

TEST_CASE("coset containment order") {
    TorusCoset line = ratio_coset(2);
    TorusCoset point = coset_through_point(ExponentLattice::full(2), pt({2, 1}));
    TorusCoset off = coset_through_point(ExponentLattice::full(2), pt({2, 2}));

    CHECK(coset_contains_coset(full_torus(2), line));
    CHECK(coset_contains_coset(line, point));
    CHECK_FALSE(coset_contains_coset(line, off));
    CHECK_FALSE(coset_contains_coset(point, line));
    CHECK(coset_contains_coset(line, line));
}

TEST_CASE("coset translation") {
    TorusCoset c = ratio_coset(2);
    CHECK(coset_translate(c, pt({3, 1})) == ratio_coset(6));
    CHECK(coset_translate(c, pt({5, 5})) == c);

    TorusCoset back = coset_translate(coset_translate(c, pt({3, 7})),
                                      MultiplicativePoint{fv(1, 3), fv(1, 7)});
    CHECK(back == c);

    TorusCoset special = coset_from_relations(span_of(2, {{1, -1}}), {fv(1)});
    CHECK(special.is_special());
    CHECK_FALSE(coset_translate(special, pt({2, 1})).is_special());
}

TEST_CASE("coset ideal round trip") {
    TorusCoset c = ratio_coset(2);
    PolynomialIdeal ideal = coset_ideal(c);
    CHECK(ideal.contains_poly(parse_poly("x1 - 2*x2", 2)));
    CHECK(ideal.dimension() == 1);

    PolynomialIdeal whole = coset_ideal(full_torus(2));
    CHECK(whole.dimension() == 2);
    CHECK(whole.generators().empty());

    TorusCoset quarter = coset_from_relations(span_of(2, {{1, -1}}),
                                              {FactoredValue::root_of_unity(4, 1)});
    CHECK_THROWS_AS(coset_ideal(quarter), precondition_error);
}

TEST_CASE("coset parsing") {
    CHECK(parse_torus_coset("{x1^1*x2^-1 = 2^1}", 2) == ratio_coset(2));
    CHECK(parse_torus_coset("x1*x2^-1 = 2", 2) == ratio_coset(2));
    CHECK(parse_torus_coset("{}", 2) == full_torus(2));
    CHECK(parse_torus_coset("{1 = 1}", 2) == full_torus(2));
    CHECK(parse_torus_coset("{x2^-1*x1 = 2}", 2) == ratio_coset(2));

    TorusCoset c = parse_torus_coset("{x1 = 2; x1^2 = 4}", 2);
    CHECK(c.relations == span_of(2, {{1, 0}}));
    CHECK(c.constants == MultiplicativePoint{fv(2)});

    CHECK_THROWS_AS(parse_torus_coset("{x1 = 2; x1^2 = 5}", 2), parse_error);
    CHECK_THROWS_AS(parse_torus_coset("{x1^2 = 4}", 2), precondition_error);
    CHECK_THROWS_AS(parse_torus_coset("{1 = 2}", 2), parse_error);
    CHECK_THROWS_AS(parse_torus_coset("{x3 = 2}", 2), parse_error);
    CHECK_THROWS_AS(parse_torus_coset("{x1^a = 2}", 2), parse_error);
    CHECK_THROWS_AS(parse_torus_coset("{x1}", 2), parse_error);
    CHECK_THROWS_AS(parse_torus_coset("{x1 = 2", 2), parse_error);

    TorusCoset point = coset_through_point(ExponentLattice::full(2), pt({-2, 3}));
    CHECK(parse_torus_coset(coset_to_string(point), 2) == point);
}

TEST_CASE("coset intersection pins the base point") {
    TorusCoset s = coset_from_relations(span_of(2, {{1, 1}}), {fv(2)});
    TorusCoset t = coset_from_relations(span_of(2, {{2, 1}}), {fv(4)});
    auto meet = coset_intersection(s, t);
    REQUIRE(meet.has_value());
    CHECK(meet->dimension() == 0);
    CHECK(*meet == coset_through_point(ExponentLattice::full(2), pt({2, 1})));
    CHECK(coset_to_string(*meet) == "{x1^1 = 2^1; x2^1 = 1}");
}

TEST_CASE("coset intersection edge cases") {
    TorusCoset c = ratio_coset(2);
    auto with_full = coset_intersection(c, full_torus(2));
    REQUIRE(with_full.has_value());
    CHECK(*with_full == c);

    TorusCoset s = coset_from_relations(span_of(2, {{1, 1}}), {fv(2)});
    CHECK_FALSE(coset_intersection(s, coset_from_relations(span_of(2, {{1, 1}}), {fv(3)})));

    auto self = coset_intersection(s, s);
    REQUIRE(self.has_value());
    CHECK(*self == s);

    TorusCoset anti = coset_from_relations(span_of(2, {{1, -1}}), {fv(1)});
    CHECK_THROWS_AS(coset_intersection(s, anti), precondition_error);
    CHECK_THROWS_AS(coset_intersection(s, full_torus(3)), precondition_error);
}

TEST_CASE("weakly special closure of a binomial line") {
    TorusCoset c = weakly_special_closure(torus(2, {"x1 - 2*x2"}));
    CHECK(c == ratio_coset(2));
    CHECK(coset_to_string(c) == "{x1^1*x2^-1 = 2^1}");
}

TEST_CASE("weakly special closure of a point is the point") {
    TorusCoset c = weakly_special_closure(torus(2, {"x1 - 4", "x2 - 8"}));
    CHECK(c == coset_through_point(ExponentLattice::full(2), pt({4, 8})));
    CHECK(c.dimension() == 0);
}

TEST_CASE("weakly special closure of a generic curve is everything") {
    TorusCoset c = weakly_special_closure(torus(2, {"x1 + x2 - 1"}));
    CHECK(c == full_torus(2));
}

TEST_CASE("weakly special closure sees non-primitive relations") {
    PolynomialIdeal x = torus(2, {"x1^2*x2 - 12"});
    TorusCoset c = weakly_special_closure(x);
    CHECK(c.relations == span_of(2, {{2, 1}}));
    CHECK(c.constants == MultiplicativePoint{fv(12)});
    CHECK(x.contains_ideal_of(coset_ideal(c)));

    PolynomialIdeal y = torus(2, {"x1^2 - 2*x2"});
    TorusCoset d = weakly_special_closure(y);
    CHECK(d.relations == span_of(2, {{2, -1}}));
    CHECK(d.constants == MultiplicativePoint{fv(2)});
}

TEST_CASE("weakly special closure in a bigger ambient torus") {
    TorusCoset c = weakly_special_closure(torus(3, {"x1 - 2*x2"}));
    CHECK(c.ambient_dim == 3);
    CHECK(c.dimension() == 2);
    CHECK(c.relations == span_of(3, {{1, -1, 0}}));
    CHECK(c.constants == MultiplicativePoint{fv(2)});
}

TEST_CASE("weakly special closure is monotone") {
    TorusCoset inner = weakly_special_closure(torus(2, {"x1 - 4", "x2 - 8"}));
    TorusCoset outer = weakly_special_closure(torus(2, {"x1^2 - 2*x2"}));
    CHECK(coset_contains_coset(outer, inner));
}

TEST_CASE("weakly special closure rejects geometrically reducible input") {
    CHECK_THROWS_AS(weakly_special_closure(torus(2, {"x1^2 - 2*x2^2"})), precondition_error);
    CHECK_THROWS_AS(weakly_special_closure(torus(2, {"x1 - 1", "x1 - 2"})), precondition_error);
    CHECK_THROWS_AS(weakly_special_closure(PolynomialIdeal(2, {parse_poly("x1 - 2*x2", 2)}, false)),
                    precondition_error);
}

TEST_CASE("special closure drops free constants") {
    CHECK(special_closure(torus(2, {"x1 - 2*x2"})) == full_torus(2));
    CHECK(special_closure(torus(2, {"x1 - 4", "x2 - 3"})) == full_torus(2));
}

TEST_CASE("special closure detects multiplicatively dependent coordinates") {
    TorusCoset c = special_closure(torus(2, {"x1 - 4", "x2 - 8"}));
    CHECK(c.relations == span_of(2, {{3, -2}}));
    CHECK(c.constants == MultiplicativePoint{fv(1)});
    CHECK(c.dimension() == 1);
}

TEST_CASE("special closure keeps torsion relations") {
    TorusCoset c = special_closure(torus(2, {"x1 + x2"}));
    CHECK(c.relations == span_of(2, {{1, -1}}));
    CHECK(c.constants == MultiplicativePoint{fv(-1)});
    CHECK(c.is_special());
}

TEST_CASE("special closure finds torsion in relation combinations") {
    TorusCoset c = special_closure(torus(2, {"x1 - 2", "2*x2 - 1"}));
    CHECK(c.relations == span_of(2, {{1, 1}}));
    CHECK(c.constants == MultiplicativePoint{fv(1)});
    CHECK(c.dimension() == 1);

    TorusCoset ws = weakly_special_closure(torus(2, {"x1 - 2", "2*x2 - 1"}));
    CHECK(coset_contains_coset(c, ws));
}

TEST_CASE("special closure is idempotent on special cosets") {
    TorusCoset diag = coset_from_relations(span_of(2, {{1, 1}}), {fv(1)});
    CHECK(special_closure(coset_ideal(diag)) == diag);
}

TEST_CASE("special closure respects the torsion order cap") {
    CHECK_THROWS_AS(special_closure(torus(2, {"x1 + x2"}), 1), budget_error);
    CHECK_THROWS_AS(special_closure(torus(2, {"x1 + x2"}), 0), precondition_error);
    CHECK(special_closure(torus(2, {"x1 + x2"}), 2).is_special());
}

TEST_CASE("atypicality flags a coset meeting its own translate family") {
    PolynomialIdeal v = torus(2, {"x1 - 2*x2"});
    TorusCoset w = ratio_coset(2);
    auto witness = atypicality_check(v, w, full_torus(2), v);
    REQUIRE(witness.has_value());
    CHECK(witness->dim_x == 1);
    CHECK(witness->dim_v == 1);
    CHECK(witness->dim_w == 1);
    CHECK(witness->dim_s == 2);
    CHECK(witness->ws_closure == w);
    CHECK(witness->defect == 0);
    CHECK_FALSE(witness->gamma_defect.has_value());
}

TEST_CASE("typical intersections yield no witness") {
    PolynomialIdeal v = torus(2, {"x1 + x2 - 1"});
    TorusCoset w = ratio_coset(3);
    PolynomialIdeal x = torus(2, {"4*x1 - 3", "4*x2 - 1"});
    CHECK_FALSE(atypicality_check(v, w, full_torus(2), x).has_value());

    PolynomialIdeal everything(2, {}, true);
    CHECK_FALSE(atypicality_check(everything, full_torus(2), full_torus(2), everything));
}

TEST_CASE("atypicality check validates containments") {
    PolynomialIdeal v = torus(2, {"x1 - 2*x2"});
    CHECK_THROWS_AS(atypicality_check(v, ratio_coset(3), full_torus(2), v), precondition_error);
    CHECK_THROWS_AS(
        atypicality_check(v, ratio_coset(2), coset_from_relations(span_of(2, {{1, 0}}), {fv(1)}), v),
        precondition_error);
    CHECK_THROWS_AS(atypicality_check(v, ratio_coset(2), full_torus(2), torus(2, {"x1 - x2"})),
                    precondition_error);
    CHECK_THROWS_AS(atypicality_check(v, ratio_coset(2), full_torus(2), torus(2, {"x1 - 1", "x1 - 2"})),
                    precondition_error);
    CHECK_THROWS_AS(atypicality_check(v, ratio_coset(2), full_torus(3), v), precondition_error);
}

TEST_CASE("atypical coset locus of a translate family") {
    CosetLocusResult res =
        atypical_coset_locus(torus(2, {"x1 - 2*x2"}), span_of(2, {{1, -1}}), full_torus(2));
    CHECK(res.expected_fiber_dim == 0);
    CHECK(res.base_dim == 1);
    CHECK(res.map.target_dim == 1);
    CHECK(res.map.matrix == IntegerMatrix::from_rows({{1, -1}}));
    CHECK_FALSE(res.locus.is_empty());
    CHECK(res.locus.dimension() == 0);
    CHECK(res.locus.contains({make_rational(2, 1)}));
    CHECK_FALSE(res.locus.contains({make_rational(3, 1)}));
}

TEST_CASE("generic curves have empty atypical locus") {
    CosetLocusResult res =
        atypical_coset_locus(torus(2, {"x1 + x2 - 1"}), span_of(2, {{1, -1}}), full_torus(2));
    CHECK(res.expected_fiber_dim == 0);
    CHECK(res.locus.is_empty());

    CosetLocusResult whole =
        atypical_coset_locus(PolynomialIdeal(2, {}, true), span_of(2, {{1, -1}}), full_torus(2));
    CHECK(whole.expected_fiber_dim == 1);
    CHECK(whole.locus.is_empty());
}

TEST_CASE("a coset is typical inside its own ambient coset") {
    TorusCoset s = ratio_coset(2);
    CosetLocusResult res = atypical_coset_locus(torus(2, {"x1 - 2*x2"}), span_of(2, {{1, -1}}), s);
    CHECK(res.expected_fiber_dim == 1);
    CHECK(res.base_dim == 0);
    CHECK(res.locus.is_empty());
}

TEST_CASE("atypical coset locus validates its inputs") {
    PolynomialIdeal v = torus(2, {"x1 - 2*x2"});
    CHECK_THROWS_AS(atypical_coset_locus(v, span_of(2, {{1, -1}}), ratio_coset(3)),
                    precondition_error);
    CHECK_THROWS_AS(atypical_coset_locus(v, span_of(2, {{1, 0}}), ratio_coset(2)),
                    precondition_error);
    CHECK_THROWS_AS(atypical_coset_locus(torus(2, {"x1 - 1", "x1 - 2"}), span_of(2, {{1, -1}}),
                                         full_torus(2)),
                    precondition_error);
    CHECK_THROWS_AS(atypical_coset_locus(v, span_of(3, {{1, -1, 0}}), full_torus(2)),
                    precondition_error);
}

TEST_CASE("group points on cosets") {
    FiniteRankGroup gamma = group(2, {pt({2, 1})}, true);
    CHECK(is_gamma_special(ratio_coset(2), gamma));
    CHECK(is_gamma_special(ratio_coset(4), gamma));
    CHECK(is_gamma_special(full_torus(2), gamma));
    CHECK(is_gamma_special(coset_through_point(ExponentLattice::full(2), pt({2, 1})), gamma));
    CHECK_FALSE(is_gamma_special(ratio_coset(3), gamma));
    CHECK_FALSE(is_gamma_special(coset_through_point(ExponentLattice::full(2), pt({2, 2})), gamma));
    CHECK_THROWS_AS(is_gamma_special(full_torus(3), gamma), precondition_error);
}

TEST_CASE("torsion times a rank one group misses the regression point") {
    FiniteRankGroup gamma = group(2, {pt({1, 2})}, true);
    TorusCoset point = coset_through_point(ExponentLattice::full(2), pt({2, 1}));
    CHECK_FALSE(is_gamma_special(point, gamma));
    CHECK(is_gamma_special(coset_through_point(ExponentLattice::full(2), pt({1, 2})), gamma));
    CHECK(is_gamma_special(coset_through_point(ExponentLattice::full(2), pt({-1, 4})), gamma));
}

TEST_CASE("exact groups need the torsion cap for signs") {
    FiniteRankGroup bare = group(2, {pt({2, 3})}, false);
    TorusCoset c = coset_from_relations(span_of(2, {{1, -1}}), {fv(2, 3)});
    CHECK(is_gamma_special(c, bare));
    CHECK_FALSE(is_gamma_special(coset_from_relations(span_of(2, {{1, -1}}), {fv(4, 3)}), bare));
    CHECK_FALSE(is_gamma_special(coset_from_relations(span_of(2, {{1, -1}}), {fv(-1)}), bare));

    FiniteRankGroup with_signs = group(2, {pt({2, 3})}, false, 2);
    CHECK(is_gamma_special(coset_from_relations(span_of(2, {{1, -1}}), {fv(-1)}), with_signs));
}

TEST_CASE("explicit group points") {
    FiniteRankGroup gamma = group(2, {pt({2, 1})}, true);
    auto p = gamma_point_on(ratio_coset(2), gamma);
    REQUIRE(p.has_value());
    CHECK(*p == pt({2, 1}));
    CHECK(coset_contains(ratio_coset(2), *p));
    CHECK(group_contains(gamma, *p));

    auto everywhere = gamma_point_on(full_torus(2), gamma);
    REQUIRE(everywhere.has_value());
    CHECK(*everywhere == pt({1, 1}));

    CHECK_FALSE(gamma_point_on(ratio_coset(3), gamma).has_value());
}

TEST_CASE("division closure lifts fractional words when they stay integral") {
    FiniteRankGroup gamma = group(2, {pt({4, 1})}, true);
    auto p = gamma_point_on(ratio_coset(2), gamma);
    REQUIRE(p.has_value());
    CHECK(*p == pt({2, 1}));
    CHECK(group_contains(gamma, *p));

    FiniteRankGroup steep = group(2, {pt({2, 8})}, true);
    CHECK(is_gamma_special(ratio_coset(2), steep));
    CHECK_FALSE(gamma_point_on(ratio_coset(2), steep).has_value());
}

TEST_CASE("division closure fixes torsion discrepancies") {
    FiniteRankGroup gamma = group(2, {pt({2, 1})}, true);
    auto p = gamma_point_on(ratio_coset(-2), gamma);
    REQUIRE(p.has_value());
    CHECK(coset_contains(ratio_coset(-2), *p));
    CHECK(group_contains(gamma, *p));
    CHECK((*p)[0].prime_exponents() == fv(2).prime_exponents());
}

TEST_CASE("exact group points use torsion generators") {
    FiniteRankGroup gamma = group(2, {pt({2, 3})}, false, 2);
    TorusCoset point = coset_through_point(ExponentLattice::full(2), pt({-2, 3}));
    auto p = gamma_point_on(point, gamma);
    REQUIRE(p.has_value());
    CHECK(*p == pt({-2, 3}));

    FiniteRankGroup cyclic = group(2, {pt({2, 3})}, false);
    auto q = gamma_point_on(coset_through_point(ExponentLattice::full(2), pt({4, 9})), cyclic);
    REQUIRE(q.has_value());
    CHECK(*q == pt({4, 9}));
    CHECK_FALSE(
        gamma_point_on(coset_through_point(ExponentLattice::full(2), pt({2, 9})), cyclic).has_value());
}

TEST_CASE("translating a coset to its subgroup") {
    TorusCoset s = ratio_coset(2);
    PolynomialIdeal v = torus(2, {"x1 - 2*x2"});
    FiniteRankGroup gamma = group(2, {pt({2, 1})}, true);

    TranslationResult res = translate_to_subgroup(s, v, gamma);
    CHECK(res.base == pt({2, 1}));
    CHECK(res.subgroup == coset_from_relations(span_of(2, {{1, -1}}), {fv(1)}));
    CHECK(res.translated.contains_poly(parse_poly("x1 - x2", 2)));
    CHECK(res.translated.dimension() == 1);
    CHECK(res.translated.contains_ideal_of(coset_ideal(res.subgroup)));
    CHECK(res.gamma0.division_closed);
    CHECK(res.gamma0.generators.empty());
}

TEST_CASE("the group part on the subgroup survives translation") {
    TorusCoset diag = coset_from_relations(span_of(2, {{1, -1}}), {fv(1)});
    PolynomialIdeal v = coset_ideal(diag);
    FiniteRankGroup gamma = group(2, {pt({2, 1}), pt({3, 3})}, true);

    TranslationResult res = translate_to_subgroup(diag, v, gamma);
    CHECK(res.base == pt({1, 1}));
    CHECK(res.subgroup == diag);
    REQUIRE(res.gamma0.generators.size() == 1);
    CHECK(res.gamma0.generators[0] == pt({3, 3}));
    CHECK(group_contains(res.gamma0, pt({27, 27})));
    CHECK_FALSE(group_contains(res.gamma0, pt({2, 1})));
    CHECK(coset_contains(res.subgroup, res.gamma0.generators[0]));
}

TEST_CASE("translation with an exact group") {
    TorusCoset s = ratio_coset(2);
    PolynomialIdeal v = torus(2, {"x1 - 2*x2"});
    FiniteRankGroup gamma = group(2, {pt({2, 1}), pt({3, 3})}, false);

    TranslationResult res = translate_to_subgroup(s, v, gamma);
    CHECK(res.base == pt({2, 1}));
    CHECK_FALSE(res.gamma0.division_closed);
    REQUIRE(res.gamma0.generators.size() == 1);
    CHECK(res.gamma0.generators[0] == pt({3, 3}));
}

TEST_CASE("translation needs a usable group point") {
    PolynomialIdeal v = torus(2, {"x1 - 5*x2"});
    CHECK_THROWS_AS(translate_to_subgroup(ratio_coset(5), v, group(2, {pt({2, 1})}, true)),
                    precondition_error);

    TorusCoset quarter = coset_from_relations(span_of(2, {{1, -1}}),
                                              {FactoredValue::root_of_unity(4, 1)});
    CHECK_THROWS_AS(translate_to_subgroup(quarter, torus(2, {"x1 - x2"}),
                                          group(2, {pt({2, 1})}, true)),
                    precondition_error);
}

TEST_CASE("full ambient coset leaves everything in place") {
    PolynomialIdeal v = torus(2, {"x1 - 2*x2"});
    FiniteRankGroup gamma = group(2, {pt({2, 1})}, true);
    TranslationResult res = translate_to_subgroup(full_torus(2), v, gamma);
    CHECK(res.base == pt({1, 1}));
    CHECK(res.subgroup == full_torus(2));
    CHECK(res.gamma0 == gamma);
    CHECK(res.translated.contains_poly(parse_poly("x1 - 2*x2", 2)));
}
