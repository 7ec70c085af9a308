// modular.hpp
// The modular side of the toolkit: bundled modular polynomials Phi_N with
// integrity checks, Hecke relations between exact j-values, weakly special
// combinatorics on Y(1)^n (block partitions, spanning-tree Phi edges,
// constant coordinates, complexity), gamma structures built from Hecke
// orbits, closures and defects, the atypical fiber locus of a coordinate
// projection, and the strip-constants reduction. All Hecke and speciality
// decisions are bound-relative: they search only the bundled data and the
// caller-supplied level and discriminant bounds.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atyp/constructible.hpp"
#include "atyp/ideal.hpp"
#include "atyp/values.hpp"

namespace atyp {

// Sparse bivariate polynomial with integer coefficients.
class BivariatePoly {
public:
    void add_term(long deg_x, long deg_y, const Int& coeff);

    bool is_zero() const { return terms_.empty(); }
    long degree_x() const;
    long degree_y() const;
    const std::map<std::pair<long, long>, Int>& terms() const { return terms_; }

    bool operator==(const BivariatePoly& rhs) const = default;

    Rational evaluate(const Rational& x, const Rational& y) const;
    UniPoly substitute_x(const Rational& x) const;  // polynomial in y
    UniPoly substitute_y(const Rational& y) const;  // polynomial in x
    BivariatePoly swapped() const;                  // x and y exchanged
    // The polynomial in n ambient variables with x -> x_i, y -> x_k (0-based).
    Poly to_poly(int n, int i, int k) const;

    std::string to_string() const;

private:
    std::map<std::pair<long, long>, Int> terms_;
};

// Degree of Phi_N in each variable: N * prod_{p | N} (1 + 1/p).
long psi_degree(long level);

// Res_y(f(x,y), h(y)) as a polynomial in x, exact via sampling and
// interpolation.
UniPoly resultant_in_y(const BivariatePoly& f, const UniPoly& h);

// Modular polynomials Phi_1..Phi_max loaded from phi_N.txt files. Loading
// verifies Phi_1 = X - Y, symmetry, the psi(N) degree, and the Kronecker
// congruence for prime levels.
class ModularPolynomialTable {
public:
    static ModularPolynomialTable load_directory(const std::string& dir);

    long max_level() const { return static_cast<long>(entries_.size()); }
    const BivariatePoly& polynomial(long level) const;

private:
    std::vector<BivariatePoly> entries_;  // index 0 holds Phi_1
};

// The two data tables every modular operation needs.
struct ModularData {
    ModularPolynomialTable phi;
    ClassPolynomialTable classes;

    static ModularData load_directory(const std::string& dir);
};

// Whether Phi_N(a, b) = 0, exactly for rational against rational or singular
// modulus; for two singular moduli the test is at the level of conjugacy
// classes (it asks whether some conjugate pair is related).
bool phi_vanishes_at(const ModularData& data, long level, const ExactValue& a,
                     const ExactValue& b);

// Smallest N <= n_max with Phi_N(a, b) = 0, if any. n_max beyond the bundled
// tables is a data bound error.
std::optional<long> hecke_relation(const ModularData& data, const ExactValue& a,
                                   const ExactValue& b, long n_max);

// Whether c is a root of a bundled class polynomial with |D| <= disc_bound.
bool is_special_value(const ClassPolynomialTable& classes, const ExactValue& c, long disc_bound);

struct ModularEdge {
    int a = 0;  // 0-based coordinates, a < b
    int b = 0;
    long level = 1;

    bool operator==(const ModularEdge& rhs) const = default;
};

// A weakly special subvariety of Y(1)^n: coordinates are partitioned into
// blocks, each non-constant block is tied together by a spanning tree of
// Phi_N equations, and constant coordinates (always singleton blocks) carry
// their exact value. The data denotes the irreducible component through the
// variety it was computed from; dimension and complexity do not depend on
// the choice of component.
class ModularWeaklySpecial {
public:
    static ModularWeaklySpecial full(int n);
    static ModularWeaklySpecial make(int n, std::vector<ModularEdge> edges,
                                     std::map<int, ExactValue> constants);

    int ambient() const { return n_; }
    const std::vector<ModularEdge>& edges() const { return edges_; }
    const std::map<int, ExactValue>& constants() const { return constants_; }
    bool is_constant_coordinate(int i) const { return constants_.count(i) != 0; }

    // Partition of {0..n-1}; blocks ordered by smallest member.
    std::vector<std::vector<int>> blocks() const;
    int dimension() const;
    long complexity() const;  // largest Phi level used, at least 1

    bool operator==(const ModularWeaklySpecial& rhs) const = default;

    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<ModularEdge> edges_;  // sorted by (a, b)
    std::map<int, ExactValue> constants_;
};

// "{phi[2](x1,x2); x3 = 5}"; "{}" is all of Y(1)^n.
ModularWeaklySpecial parse_modular_weakly_special(const std::string& text, int n,
                                                  const ClassPolynomialTable& classes);

// Defining ideal in n affine variables. A singular-modulus constant
// contributes its class polynomial, so the ideal cuts out the union of the
// conjugates; dimensions are unaffected.
PolynomialIdeal modular_ideal(const ModularWeaklySpecial& s, const ModularData& data,
                              const GroebnerBudget& budget = {});

bool modular_contains_point(const ModularWeaklySpecial& s, const std::vector<ExactValue>& point,
                            const ModularData& data);

// Gamma = (Xi-bar)^n for Xi-bar the union of the Hecke orbits of the listed
// non-special values and, when include_all_special is set, of all special
// points. Orbit membership is only ever decided up to hecke_bound and
// speciality up to disc_bound.
struct ModularGamma {
    std::vector<ExactValue> xi_nonspecial;
    bool include_all_special = true;
    long hecke_bound = 5;
    long disc_bound = 100;
};

// Whether the value lies in Xi-bar within the bounds.
bool is_gamma_admissible(const ModularData& data, const ModularGamma& gamma, const ExactValue& c);

// Every admissible value the bundled tables can name: the listed values and
// their representable Hecke orbits, plus all bundled singular moduli with
// |D| <= disc_bound when include_all_special is set. Sorted, no duplicates.
std::vector<ExactValue> gamma_value_pool(const ModularData& data, const ModularGamma& gamma);

// Whether s contains a gamma point within the bounds: every constant must be
// admissible and every non-constant block must carry a tuple of admissible
// values satisfying its tree equations.
bool is_gamma_special_modular(const ModularWeaklySpecial& s, const ModularGamma& gamma,
                              const ModularData& data);

// Smallest weakly special variety containing X among those of complexity at
// most n_max: constants via per-coordinate eliminants, edges via ideal
// membership of Phi_N(x_i, x_k), spanning forests chosen minimal by
// (level, a, b). n_max = 0 means the full bundled range.
ModularWeaklySpecial weakly_special_closure_modular(const PolynomialIdeal& x,
                                                    const ModularData& data, long n_max = 0);

// Smallest gamma-special variety containing the given variety within the
// bounds: non-admissible constants are released, and released coordinates
// whose values were Hecke-related stay tied by the witnessing Phi edge.
ModularWeaklySpecial gamma_special_closure(const ModularWeaklySpecial& s,
                                           const ModularGamma& gamma, const ModularData& data);
ModularWeaklySpecial gamma_special_closure(const PolynomialIdeal& x, const ModularGamma& gamma,
                                           const ModularData& data);

// dim <X>_Gamma - dim X.
int gamma_defect(const PolynomialIdeal& x, const ModularGamma& gamma, const ModularData& data);

struct ModularAtypicalWitness {
    PolynomialIdeal component;    // X
    ModularWeaklySpecial against; // W
    ModularWeaklySpecial ambient; // S
    int dim_x = 0;
    int dim_v = 0;
    int dim_w = 0;
    int dim_s = 0;
    ModularWeaklySpecial ws_closure;  // of X
    int defect = 0;                   // dim ws_closure - dim X
    std::optional<int> gamma_defect;
};

// Witness iff dim X > dim V + dim W - dim S; containments X in V, X in W,
// V in S, W in S are checked ideal-theoretically.
std::optional<ModularAtypicalWitness> modular_atypicality_check(
    const ModularData& data, const PolynomialIdeal& v, const ModularWeaklySpecial& w,
    const ModularWeaklySpecial& s, const PolynomialIdeal& x);

struct ModularFiberLocus {
    std::vector<int> coords;  // the projection, 0-based and increasing
    ConstructibleSet locus;   // base points with atypically large fiber
    int expected_fiber_dim = 0;
    int base_dim = 0;  // dim pr_i S
};

// Base points c of pr_i S over which the fiber of V has dimension above
// dim V - dim pr_i S. The locus is never dense for irreducible V; density
// raises an error flagging reducible input.
ModularFiberLocus atypical_fiber_locus_modular(const ModularData& data, const PolynomialIdeal& v,
                                               const ModularWeaklySpecial& s,
                                               const std::vector<int>& coords);

struct StripReduction {
    std::vector<int> kept;                  // coordinates surviving the strip
    std::map<int, ExactValue> stripped;     // constant coordinates and values
    ModularWeaklySpecial s_reduced;         // pr_k S
    PolynomialIdeal v_reduced;              // pr_k (V cap S_{i,c})
    PolynomialIdeal x_reduced;              // pr_k X
    int dim_x = 0;                          // = dim of the reduced X
    int dim_v_slice = 0;                    // dim (V cap S_{i,c}) = dim of reduced V
    int dim_s_slice = 0;                    // dim S_{i,c} = dim of reduced S
    bool already_atypical = false;          // V cap S_{i,c} atypical in S
    std::optional<ModularWeaklySpecial> direct_t;  // S_{i,c} when already atypical
};

// Strips the constant coordinates of the weakly special closure of X off the
// instance (V, S), projecting everything to the remaining coordinates. X must
// be an atypical component of V cap <X>_ws in S. When the pre-step
// intersection V cap S_{i,c} is itself atypical in S, that slice is returned
// as a ready-made witness alongside the projections.
StripReduction strip_constants_reduction(const ModularData& data, const PolynomialIdeal& v,
                                         const ModularWeaklySpecial& s, const PolynomialIdeal& x,
                                         long n_max = 0);

}  // namespace atyp
