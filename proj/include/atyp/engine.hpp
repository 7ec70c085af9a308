// engine.hpp
// Bounded search for maximal gamma-atypical and gamma-optimal subvarieties.
// The non-effective finite collections of the theory (special candidate
// families, Mordell-Lang conclusions) are replaced by explicit finite
// universes: relation lattices with small Hermite entries, modular shapes of
// small complexity, and group points reachable by short generator words.
// Within those universes everything is exact and exhaustive; beyond them
// nothing is claimed, and every result carries the bounds it was computed
// under. The brute-force oracle walks the same universe without the
// locus-based pruning, so agreement between the two is a real check of the
// pruning arguments rather than of the bounds.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atyp/modular.hpp"
#include "atyp/torus.hpp"

namespace atyp {

// Finite search horizon. All bounds must be positive. The hecke and
// discriminant cutoffs supersede the ones carried by a ModularGamma when an
// operation receives both.
struct SearchBounds {
    long subgroup_entry_bound = 2;      // torus: max |entry| in candidate relation rows
    long modular_complexity_bound = 1;  // modular: max Phi level in candidate shapes
    long gamma_word_bound = 6;          // max |exponent| in generator words
    long hecke_bound = 5;               // modular: Hecke orbit truncation
    long disc_bound = 100;              // modular: discriminant cutoff for special values
    long candidate_budget = 200000;     // cap on enumerated subgroups or shapes
    long point_budget = 200000;         // cap on enumerated words or value tuples

    bool operator==(const SearchBounds& rhs) const = default;
};

void check_search_bounds(const SearchBounds& bounds);

// All saturated sublattices of Z^n whose Hermite basis entries are bounded by
// subgroup_entry_bound in absolute value, the zero and full lattices
// included, ordered by (rank, basis). Throws budget_error when the
// enumeration would exceed candidate_budget.
std::vector<ExponentLattice> enumerate_torus_subgroups(int n, const SearchBounds& bounds);

// All weakly special shapes in Y(1)^n without constant coordinates and with
// every edge level at most modular_complexity_bound, ordered by (number of
// edges, rendered form). Throws budget_error past candidate_budget.
std::vector<ModularWeaklySpecial> enumerate_modular_shapes(int n, const SearchBounds& bounds);

// Gamma points found on one piece of a constructible set together with the
// smallest coset those points span. The coset always passes through a found
// point, so it is gamma-special by construction.
struct GammaCosetGroup {
    TorusCoset coset;
    std::vector<MultiplicativePoint> points;
};

// Enumerates group words with exponents up to gamma_word_bound over the
// effective generators and keeps the rational points lying on c. Per piece,
// the found points are merged into the coset they span when every spanning
// relation is certified constant and the coset stays inside the piece's
// closure; otherwise each point stands alone as a zero-dimensional coset.
// Results are relative to the word bound: group elements needing longer
// words, fractional exponents, or torsion beyond the group's cap are not
// seen. Throws budget_error when the word count exceeds point_budget.
std::vector<GammaCosetGroup> mordell_lang_search(const ConstructibleSet& c,
                                                 const FiniteRankGroup& gamma,
                                                 const SearchBounds& bounds);

// Tuples over the truncated Xi-bar pool lying on c. Membership of tuples
// with one singular-modulus coordinate is decided through class-polynomial
// divisibility at the level of conjugacy classes; tuples with two or more
// singular-modulus coordinates are skipped. Throws budget_error when the
// tuple count exceeds point_budget.
std::vector<std::vector<ExactValue>> mordell_lang_search(const ModularData& data,
                                                         const ConstructibleSet& c,
                                                         const ModularGamma& gamma,
                                                         const SearchBounds& bounds);

// Components of the vanishing locus as far as rational splitting reaches:
// unit ideals yield nothing, zero-dimensional loci split into rational
// points (with the unsplit remainder bundled whole when some eliminant has
// an irrational factor), and positive-dimensional loci are returned as one
// bundle. Downstream consumers treat bundles as possibly reducible.
std::vector<PolynomialIdeal> extract_components(const PolynomialIdeal& ideal);

// Smallest gamma-special coset containing X whose relation lattice is the
// weakly special closure's or comes from the bounded pool. The full torus is
// gamma-special, so the search always succeeds; the true gamma-special
// closure may still be smaller than anything the pool reaches.
TorusCoset bounded_gamma_closure(const PolynomialIdeal& x, const FiniteRankGroup& gamma,
                                 const SearchBounds& bounds);

// The weakly special components of s cut by x_i = c: the block of i
// collapses along its spanning tree into constant coordinates, one result
// per representable propagated assignment. Coordinate i must not already be
// constant in s.
std::vector<ModularWeaklySpecial> modular_fiber_translates(const ModularData& data,
                                                           const ModularWeaklySpecial& s, int i,
                                                           const ExactValue& c, long disc_bound);

// Maximal gamma-atypical subvarieties of V in S, relative to the bounds.
// Candidate components are collected from intersections of V with
// gamma-translates of the bounded subgroup family (found through the
// atypical locus of each quotient and a word search on it), recursing into
// each translate while the ambient dimension strictly drops. A candidate
// survives when its weakly special closure is gamma-special, the dimension
// inequality against that closure holds in S, and it is a component of the
// corresponding intersection; survivors are filtered to the
// containment-maximal ones. S must be gamma-special and contain V.
std::vector<AtypicalWitness> maximal_gamma_atypical(const PolynomialIdeal& v, const TorusCoset& s,
                                                    const FiniteRankGroup& gamma,
                                                    const SearchBounds& bounds);

// Modular counterpart: candidates come from proper special shapes inside S
// and from the fibers of S over admissible values found on the atypical
// locus of each coordinate projection, with the same validation.
std::vector<ModularAtypicalWitness> maximal_gamma_atypical(const ModularData& data,
                                                           const PolynomialIdeal& v,
                                                           const ModularWeaklySpecial& s,
                                                           const ModularGamma& gamma,
                                                           const SearchBounds& bounds);

// A family of subvarieties over a rational parameter domain: generators live
// in the ambient variables followed by the parameter variables, the domain
// ideal in the parameter variables alone.
struct ParametricFamily {
    int ambient_dim = 0;
    int param_dim = 0;
    std::vector<Poly> base;
    PolynomialIdeal domain;
    bool torus_mode = true;
};

// Member at a rational parameter point; the point must satisfy the domain
// ideal.
PolynomialIdeal specialize(const ParametricFamily& family, const std::vector<Rational>& t);

// The datum pinning one gamma-translate: which member of sigma is being
// translated and the constants doing the translating. Torus translates move
// a subgroup by a group point; modular translates fix coordinates over a
// shape.
struct GammaTranslate {
    std::string shape;
    std::string translate;
    std::vector<int> coords;
    std::vector<std::string> values;
};

struct ReportWitness {
    std::string component;
    int dim = 0;
    int defect = 0;
    int gamma_defect = 0;
    GammaTranslate translate;
};

struct ReportInstance {
    std::string label;
    std::vector<ReportWitness> witnesses;
};

// Outcome of a family run: the shared shapes sigma, the per-instance
// witnesses with their translate data, and the largest per-instance witness
// count m. Serializes to a versioned key/value document with the bounds
// block always present.
struct EnumerationReport {
    std::string setting;
    SearchBounds bounds;
    std::vector<std::string> sigma;
    std::vector<ReportInstance> instances;
    long max_witness_count = 0;
};

std::string report_to_string(const EnumerationReport& report);

// Runs maximal_gamma_atypical on each sampled member and factors every
// witness's closure as shape plus translate datum. Sample points outside the
// domain raise a precondition error.
EnumerationReport uniform_family_report(const ParametricFamily& family, const TorusCoset& s,
                                        const FiniteRankGroup& gamma, const SearchBounds& bounds,
                                        const std::vector<std::vector<Rational>>& sample);

EnumerationReport uniform_family_report(const ModularData& data, const ParametricFamily& family,
                                        const ModularWeaklySpecial& s, const ModularGamma& gamma,
                                        const SearchBounds& bounds,
                                        const std::vector<std::vector<Rational>>& sample);

// One entry of the optimality scan: a candidate subvariety with its special
// and gamma defects, and whether its weakly special closure is gamma-special
// within the bounds.
struct OptimalCandidate {
    PolynomialIdeal component;
    int dim = 0;
    int defect = 0;
    int gamma_defect = 0;
    bool ws_closure_gamma_special = false;
};

// Candidates are V itself plus the components of V against the bounded
// translate family; X is reported when no strictly larger candidate Y has
// gamma defect at most X's. Defects are computed against the bounded
// closures, so entries whose flag is false carry upper-bound gamma defects.
std::vector<OptimalCandidate> optimal_enumeration(const PolynomialIdeal& v,
                                                  const FiniteRankGroup& gamma,
                                                  const SearchBounds& bounds);

std::vector<OptimalCandidate> optimal_enumeration(const ModularData& data,
                                                  const PolynomialIdeal& v,
                                                  const ModularGamma& gamma,
                                                  const SearchBounds& bounds);

// Exhaustive counterpart of maximal_gamma_atypical over the same bounded
// universe: every translate through every short word is intersected
// directly, with no locus computation and no word-search pruning. Validation
// and ordering are shared with the engine, so any difference in output
// isolates the pruning. Refuses instances beyond hard size limits.
std::vector<AtypicalWitness> brute_force_oracle(const PolynomialIdeal& v, const TorusCoset& s,
                                                const FiniteRankGroup& gamma,
                                                const SearchBounds& bounds);

std::vector<ModularAtypicalWitness> brute_force_oracle(const ModularData& data,
                                                       const PolynomialIdeal& v,
                                                       const ModularWeaklySpecial& s,
                                                       const ModularGamma& gamma,
                                                       const SearchBounds& bounds);

}  // namespace atyp
