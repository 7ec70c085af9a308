// torus.hpp
// Cosets of subtori, their closures and defect bookkeeping. A coset is stored
// by a saturated relation lattice together with the constant value each
// relation monomial takes; the coset is the exact fiber of the corresponding
// monomial map over that constant vector.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atyp/constructible.hpp"
#include "atyp/factored.hpp"
#include "atyp/ideal.hpp"
#include "atyp/lattice.hpp"

namespace atyp {

struct TorusCoset {
    int ambient_dim = 0;
    ExponentLattice relations;      // saturated
    MultiplicativePoint constants;  // one per basis row of relations

    int dimension() const { return ambient_dim - relations.rank(); }
    bool is_full() const { return relations.rank() == 0; }
    // Torsion cosets of subtori are the special subvarieties.
    bool is_special() const;

    bool operator==(const TorusCoset& rhs) const = default;
};

TorusCoset full_torus(int n);
TorusCoset coset_from_relations(const ExponentLattice& relations,
                                const MultiplicativePoint& constants);
// Coset through a given point: constants are the monomial images of the base.
TorusCoset coset_through_point(const ExponentLattice& relations,
                               const MultiplicativePoint& base);

// Builds a coset from possibly redundant relation rows with their constants.
// Nothing when the constants are inconsistent across dependent rows; an error
// when the rows span a non-saturated lattice (the solution set then splits
// into several cosets).
std::optional<TorusCoset> coset_from_relation_rows(int n,
                                                   const std::vector<std::vector<Int>>& rows,
                                                   const MultiplicativePoint& constants);

// Value of x^m on the coset; m must lie in the relation lattice.
FactoredValue coset_constant(const TorusCoset& c, const std::vector<Int>& m);
bool coset_contains(const TorusCoset& c, const MultiplicativePoint& p);
bool coset_contains_coset(const TorusCoset& outer, const TorusCoset& inner);
// The coset moved by the point: relations unchanged, constants multiplied by
// the monomial images of g.
TorusCoset coset_translate(const TorusCoset& c, const MultiplicativePoint& g);
// Binomial ideal x^{m+} - const * x^{m-} in torus mode. Constants must be
// rational; cosets with higher tagged roots of unity are outside the
// ideal-theoretic layer.
PolynomialIdeal coset_ideal(const TorusCoset& c, const GroebnerBudget& budget = {});
// "x1^1*x2^-1 = 2; ..." with factored constants; "{}" for the full torus.
std::string coset_to_string(const TorusCoset& c);
TorusCoset parse_torus_coset(const std::string& text, int n);

// Intersection of two cosets when it is again a single coset: the combined
// relation lattice must be saturated (otherwise the intersection splits into
// finitely many cosets and a precondition error is raised) and the constants
// must be consistent, else nothing.
std::optional<TorusCoset> coset_intersection(const TorusCoset& a, const TorusCoset& b);

// Smallest coset containing the variety: the relation lattice collects every
// monomial constant on X. Kernel of the column-scaled Jacobian over the
// function field, intersected with rational vectors, saturated, and each basis
// relation certified by exact elimination.
TorusCoset weakly_special_closure(const PolynomialIdeal& x);
// Largest sublattice of the closure's relations with torsion constants; any
// torsion order above the cap is out of budget.
TorusCoset special_closure(const PolynomialIdeal& x, long torsion_cap = 64);

struct AtypicalWitness {
    PolynomialIdeal component;  // X
    TorusCoset against;         // W
    TorusCoset ambient;         // S
    int dim_x = 0;
    int dim_v = 0;
    int dim_w = 0;
    int dim_s = 0;
    TorusCoset ws_closure;  // of X
    int defect = 0;         // dim ws_closure - dim X
    std::optional<int> gamma_defect;
};

// Witness iff dim X > dim V + dim W - dim S. Containments X in V, X in W,
// V in S, W in S are checked by normal forms.
std::optional<AtypicalWitness> atypicality_check(const PolynomialIdeal& v, const TorusCoset& w,
                                                 const TorusCoset& s, const PolynomialIdeal& x);

struct CosetLocusResult {
    QuotientMap map;        // quotient by the subgroup
    ConstructibleSet locus; // base points with atypically large fiber
    int expected_fiber_dim = 0;
    int base_dim = 0;       // dim of the image of S
};

// Base points u of the quotient by the subgroup cut by t whose fiber
// V \cap pi^{-1}(u) has dimension above dim V + dim T - dim S. The locus is
// never dense in the image of S for irreducible V; density raises an error
// flagging reducible input.
CosetLocusResult atypical_coset_locus(const PolynomialIdeal& v, const ExponentLattice& t,
                                      const TorusCoset& s);

// True iff the coset carries a point of the group: its constant vector must be
// in the image of the group under the relation monomials.
bool is_gamma_special(const TorusCoset& c, const FiniteRankGroup& gamma);
// An explicit group point on the coset when one with representable (factored,
// integral prime exponent) coordinates exists.
std::optional<MultiplicativePoint> gamma_point_on(const TorusCoset& c,
                                                  const FiniteRankGroup& gamma);

struct TranslationResult {
    TorusCoset subgroup;        // S moved to the identity
    PolynomialIdeal translated; // V scaled by the inverse base point
    FiniteRankGroup gamma0;     // the part of gamma lying on the subgroup
    MultiplicativePoint base;   // the group point used
};

// Moves a gamma-special coset to the subgroup through the identity, carrying V
// and gamma along. The base point must be rational so the ideal can follow.
TranslationResult translate_to_subgroup(const TorusCoset& s, const PolynomialIdeal& v,
                                        const FiniteRankGroup& gamma);

}  // namespace atyp
