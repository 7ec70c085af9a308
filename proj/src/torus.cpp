// torus.cpp
#include "atyp/torus.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "atyp/error.hpp"

namespace atyp {

namespace {

long to_long(const Int& v) {
    if (!v.fits_slong_p()) throw budget_error("integer too large for an exponent");
    return v.get_si();
}

Exponent row_to_exponent(const std::vector<Int>& row) {
    Exponent e(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) e[i] = to_long(row[i]);
    return e;
}

Rational angle_of(const FactoredValue& v) {
    return make_rational(Int(v.root_exponent()), Int(v.root_order()));
}

FactoredValue root_from_angle(const Rational& a) {
    Int order = a.get_den();
    Int num = a.get_num() % order;
    return FactoredValue::root_of_unity(to_long(order), to_long(num));
}

}  // namespace

bool TorusCoset::is_special() const {
    for (const FactoredValue& c : constants)
        if (!c.is_torsion()) return false;
    return true;
}

TorusCoset full_torus(int n) {
    if (n < 0) throw precondition_error("negative ambient dimension");
    return TorusCoset{n, ExponentLattice::zero(n), {}};
}

TorusCoset coset_from_relations(const ExponentLattice& relations,
                                const MultiplicativePoint& constants) {
    if (!relations.is_saturated())
        throw precondition_error("coset relation lattice must be saturated");
    if (static_cast<int>(constants.size()) != relations.rank())
        throw precondition_error("one constant per relation basis row required");
    return TorusCoset{relations.ambient_dim(), relations, constants};
}

TorusCoset coset_through_point(const ExponentLattice& relations,
                               const MultiplicativePoint& base) {
    if (static_cast<int>(base.size()) != relations.ambient_dim())
        throw precondition_error("base point arity mismatch");
    if (!relations.is_saturated())
        throw precondition_error("coset relation lattice must be saturated");
    return TorusCoset{relations.ambient_dim(), relations,
                      monomial_image(relations.basis(), base)};
}

std::optional<TorusCoset> coset_from_relation_rows(int n,
                                                   const std::vector<std::vector<Int>>& rows,
                                                   const MultiplicativePoint& constants) {
    if (rows.size() != constants.size())
        throw precondition_error("one constant per relation row required");
    if (rows.empty()) return full_torus(n);
    IntegerMatrix r = IntegerMatrix::from_rows(rows);
    if (r.cols() != n) throw precondition_error("relation row arity mismatch");
    ExponentLattice lattice(n, r);
    if (!lattice.is_saturated())
        throw precondition_error(
            "relation rows cut a disconnected subgroup; the solution set is not a single coset");

    // Dependencies among the given rows must carry consistent constants.
    IntegerMatrix deps = right_kernel(r.transpose());
    for (int d = 0; d < deps.rows(); ++d)
        if (!evaluate_monomial(constants, deps.row(d)).is_one()) return std::nullopt;

    MultiplicativePoint canonical;
    for (int i = 0; i < lattice.basis().rows(); ++i) {
        auto combo = solve_integer(r.transpose(), lattice.basis().row(i));
        if (!combo) throw internal_error("canonical relation row escaped its own lattice");
        canonical.push_back(evaluate_monomial(constants, *combo));
    }
    return coset_from_relations(lattice, canonical);
}

FactoredValue coset_constant(const TorusCoset& c, const std::vector<Int>& m) {
    if (static_cast<int>(m.size()) != c.ambient_dim)
        throw precondition_error("monomial arity mismatch");
    auto combo = solve_integer(c.relations.basis().transpose(), m);
    if (!combo) throw precondition_error("monomial is not constant on the coset");
    return evaluate_monomial(c.constants, *combo);
}

bool coset_contains(const TorusCoset& c, const MultiplicativePoint& p) {
    if (static_cast<int>(p.size()) != c.ambient_dim)
        throw precondition_error("point arity mismatch");
    for (int i = 0; i < c.relations.basis().rows(); ++i)
        if (!(evaluate_monomial(p, c.relations.basis().row(i)) == c.constants[static_cast<std::size_t>(i)]))
            return false;
    return true;
}

bool coset_contains_coset(const TorusCoset& outer, const TorusCoset& inner) {
    if (outer.ambient_dim != inner.ambient_dim)
        throw precondition_error("ambient dimension mismatch");
    if (!inner.relations.contains_lattice(outer.relations)) return false;
    for (int i = 0; i < outer.relations.basis().rows(); ++i) {
        std::vector<Int> m = outer.relations.basis().row(i);
        if (!(coset_constant(inner, m) == outer.constants[static_cast<std::size_t>(i)])) return false;
    }
    return true;
}

TorusCoset coset_translate(const TorusCoset& c, const MultiplicativePoint& g) {
    if (static_cast<int>(g.size()) != c.ambient_dim)
        throw precondition_error("point arity mismatch");
    MultiplicativePoint image = monomial_image(c.relations.basis(), g);
    MultiplicativePoint consts = c.constants;
    for (std::size_t i = 0; i < consts.size(); ++i) consts[i] = consts[i] * image[i];
    return TorusCoset{c.ambient_dim, c.relations, consts};
}

PolynomialIdeal coset_ideal(const TorusCoset& c, const GroebnerBudget& budget) {
    const int n = c.ambient_dim;
    std::vector<Poly> gens;
    for (int i = 0; i < c.relations.basis().rows(); ++i) {
        const FactoredValue& value = c.constants[static_cast<std::size_t>(i)];
        if (!value.is_rational())
            throw precondition_error("coset constant is not rational: " + value.to_string());
        Exponent m = row_to_exponent(c.relations.basis().row(i));
        Exponent plus(static_cast<std::size_t>(n), 0);
        Exponent minus(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            if (m[static_cast<std::size_t>(j)] > 0) plus[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)];
            if (m[static_cast<std::size_t>(j)] < 0) minus[static_cast<std::size_t>(j)] = -m[static_cast<std::size_t>(j)];
        }
        gens.push_back(Poly::monomial(n, plus, Rational(1)) -
                       Poly::monomial(n, minus, value.to_rational()));
    }
    return PolynomialIdeal(n, std::move(gens), true, budget);
}

std::string coset_to_string(const TorusCoset& c) {
    std::string out = "{";
    for (int i = 0; i < c.relations.basis().rows(); ++i) {
        if (i) out += "; ";
        std::vector<Int> m = c.relations.basis().row(i);
        bool first = true;
        for (int j = 0; j < c.ambient_dim; ++j) {
            if (m[static_cast<std::size_t>(j)] == 0) continue;
            if (!first) out += "*";
            out += "x" + std::to_string(j + 1) + "^" + m[static_cast<std::size_t>(j)].get_str();
            first = false;
        }
        out += " = " + c.constants[static_cast<std::size_t>(i)].to_string();
    }
    return out + "}";
}

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<Int> parse_relation_monomial(const std::string& text, int n) {
    std::vector<Int> row(static_cast<std::size_t>(n), Int(0));
    std::string body = trim_copy(text);
    if (body.empty()) throw parse_error("empty relation monomial");
    if (body == "1") return row;
    std::size_t start = 0;
    while (start <= body.size()) {
        std::size_t sep = body.find('*', start);
        std::string tok = trim_copy(sep == std::string::npos ? body.substr(start)
                                                             : body.substr(start, sep - start));
        if (tok.empty() || tok[0] != 'x')
            throw parse_error("expected a variable factor in '" + text + "'");
        std::size_t caret = tok.find('^');
        std::string idx_text = caret == std::string::npos ? tok.substr(1) : tok.substr(1, caret - 1);
        if (idx_text.empty() || idx_text.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("malformed variable '" + tok + "'");
        int idx = std::stoi(idx_text);
        if (idx < 1 || idx > n) throw parse_error("variable index out of range in '" + tok + "'");
        Int e = 1;
        if (caret != std::string::npos) {
            std::string exp_text = tok.substr(caret + 1);
            std::size_t digits = exp_text.find_first_not_of("0123456789", exp_text.empty() || exp_text[0] != '-' ? 0 : 1);
            if (exp_text.empty() || digits != std::string::npos || exp_text == "-")
                throw parse_error("malformed exponent in '" + tok + "'");
            e = Int(exp_text);
        }
        row[static_cast<std::size_t>(idx - 1)] += e;
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    return row;
}

}  // namespace

TorusCoset parse_torus_coset(const std::string& text, int n) {
    std::string body = trim_copy(text);
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}') throw parse_error("unbalanced braces in coset '" + text + "'");
        body = trim_copy(body.substr(1, body.size() - 2));
    }
    std::vector<std::vector<Int>> rows;
    MultiplicativePoint constants;
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
        std::size_t sep = body.find(';', start);
        std::string piece = trim_copy(sep == std::string::npos ? body.substr(start)
                                                               : body.substr(start, sep - start));
        if (!piece.empty()) {
            std::size_t eq = piece.find('=');
            if (eq == std::string::npos) throw parse_error("missing '=' in relation '" + piece + "'");
            std::vector<Int> row = parse_relation_monomial(piece.substr(0, eq), n);
            bool all_zero = true;
            for (const Int& v : row) all_zero = all_zero && v == 0;
            FactoredValue value = parse_factored_value(trim_copy(piece.substr(eq + 1)));
            if (all_zero) {
                if (!value.is_one()) throw parse_error("trivial monomial with nontrivial constant");
            } else {
                rows.push_back(std::move(row));
                constants.push_back(value);
            }
        }
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    auto coset = coset_from_relation_rows(n, rows, constants);
    if (!coset) throw parse_error("inconsistent relation constants in '" + text + "'");
    return *coset;
}

std::optional<TorusCoset> coset_intersection(const TorusCoset& a, const TorusCoset& b) {
    if (a.ambient_dim != b.ambient_dim) throw precondition_error("ambient dimension mismatch");
    std::vector<std::vector<Int>> rows;
    MultiplicativePoint constants;
    for (int i = 0; i < a.relations.basis().rows(); ++i) {
        rows.push_back(a.relations.basis().row(i));
        constants.push_back(a.constants[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < b.relations.basis().rows(); ++i) {
        rows.push_back(b.relations.basis().row(i));
        constants.push_back(b.constants[static_cast<std::size_t>(i)]);
    }
    return coset_from_relation_rows(a.ambient_dim, rows, constants);
}

namespace {

// Kernel of the matrix over the fraction field of the coordinate ring, by
// fraction-free Gauss-Jordan elimination with normal-form reduction after
// every product. Requires the ideal to be prime for the zero tests to define
// a field; the callers' irreducibility precondition covers that.
std::vector<std::vector<Poly>> function_field_kernel(std::vector<std::vector<Poly>> mat,
                                                     const PolynomialIdeal& ideal, int n) {
    const long degree_cap = 4 * ideal.budget().max_total_degree;
    const int rows = static_cast<int>(mat.size());
    std::vector<bool> used(static_cast<std::size_t>(rows), false);
    std::vector<int> pivot_col(static_cast<std::size_t>(rows), -1);
    std::vector<int> pivot_row_of(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < n; ++c) {
        int prow = -1;
        for (int r = 0; r < rows; ++r) {
            if (used[static_cast<std::size_t>(r)] || mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) continue;
            if (prow == -1 ||
                mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].term_count() <
                    mat[static_cast<std::size_t>(prow)][static_cast<std::size_t>(c)].term_count())
                prow = r;
        }
        if (prow == -1) continue;
        used[static_cast<std::size_t>(prow)] = true;
        pivot_col[static_cast<std::size_t>(prow)] = c;
        pivot_row_of[static_cast<std::size_t>(c)] = prow;
        const Poly pivot = mat[static_cast<std::size_t>(prow)][static_cast<std::size_t>(c)];
        for (int r = 0; r < rows; ++r) {
            if (r == prow || mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].is_zero()) continue;
            const Poly factor = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            for (int k = 0; k < n; ++k) {
                Poly next = ideal.reduce(pivot * mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -
                                         factor * mat[static_cast<std::size_t>(prow)][static_cast<std::size_t>(k)]);
                if (next.max_total_degree() > degree_cap)
                    throw budget_error("function field elimination budget exceeded");
                mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = std::move(next);
            }
        }
    }

    std::vector<int> pivot_rows;
    for (int r = 0; r < rows; ++r)
        if (used[static_cast<std::size_t>(r)]) pivot_rows.push_back(r);

    std::vector<std::vector<Poly>> kernel;
    for (int f = 0; f < n; ++f) {
        if (pivot_row_of[static_cast<std::size_t>(f)] != -1) continue;
        std::vector<Poly> v(static_cast<std::size_t>(n), Poly::zero(n));
        Poly all = Poly::constant(n, Rational(1));
        for (int r : pivot_rows)
            all = ideal.reduce(all * mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])]);
        v[static_cast<std::size_t>(f)] = all;
        for (int r : pivot_rows) {
            if (mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)].is_zero()) continue;
            Poly others = Poly::constant(n, Rational(1));
            for (int r2 : pivot_rows) {
                if (r2 == r) continue;
                others = ideal.reduce(others * mat[static_cast<std::size_t>(r2)][static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r2)])]);
            }
            v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
                ideal.reduce(-(mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)] * others));
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

}  // namespace

TorusCoset weakly_special_closure(const PolynomialIdeal& x) {
    if (!x.torus_mode()) throw precondition_error("weakly special closure needs a torus ideal");
    if (x.is_unit()) throw precondition_error("weakly special closure of the empty set");
    const int n = x.ambient_dim();
    const TermOrder ord = TermOrder::grlex(n);
    const std::vector<Poly>& gb = x.groebner(ord);

    std::vector<std::vector<Poly>> jac;
    for (const Poly& g : gb) {
        std::vector<Poly> row;
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            Poly scaled = x.reduce(g.derivative(j) * Poly::variable(n, j));
            nonzero = nonzero || !scaled.is_zero();
            row.push_back(std::move(scaled));
        }
        if (nonzero) jac.push_back(std::move(row));
    }

    // A monomial x^m is constant on X exactly when m, paired against every
    // kernel vector of the scaled Jacobian, gives zero in the function field.
    // Each kernel entry is reduced, so the pairing vanishes exactly when the
    // rational coefficients cancel monomial by monomial.
    std::vector<std::vector<Poly>> kernel = function_field_kernel(jac, x, n);
    std::vector<std::vector<Int>> condition_rows;
    for (const std::vector<Poly>& v : kernel) {
        std::map<Exponent, std::vector<Rational>> by_monomial;
        for (int j = 0; j < n; ++j) {
            for (const auto& [e, coef] : v[static_cast<std::size_t>(j)].terms()) {
                auto it = by_monomial.try_emplace(e, std::vector<Rational>(static_cast<std::size_t>(n))).first;
                it->second[static_cast<std::size_t>(j)] += coef;
            }
        }
        for (const auto& [e, coeffs] : by_monomial) {
            Int scale = 1;
            for (const Rational& c : coeffs) {
                Int lc;
                mpz_lcm(lc.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
                scale = lc;
            }
            std::vector<Int> row(static_cast<std::size_t>(n));
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                Rational scaled = coeffs[static_cast<std::size_t>(j)] * Rational(scale);
                row[static_cast<std::size_t>(j)] = scaled.get_num();
                nonzero = nonzero || row[static_cast<std::size_t>(j)] != 0;
            }
            if (nonzero) condition_rows.push_back(std::move(row));
        }
    }

    ExponentLattice relations =
        condition_rows.empty()
            ? ExponentLattice::full(n)
            : ExponentLattice(n, right_kernel(IntegerMatrix::from_rows(condition_rows)));

    MultiplicativePoint constants;
    for (int i = 0; i < relations.basis().rows(); ++i) {
        Exponent m = row_to_exponent(relations.basis().row(i));
        auto value = monomial_constant_on(x, m);
        if (!value)
            throw precondition_error(
                "a monomial is locally constant but takes conjugate algebraic values; "
                "the variety is not geometrically irreducible");
        constants.push_back(FactoredValue::from_rational(*value));
    }
    return coset_from_relations(relations, constants);
}

TorusCoset special_closure(const PolynomialIdeal& x, long torsion_cap) {
    if (torsion_cap < 1) throw precondition_error("torsion cap must be positive");
    TorusCoset ws = weakly_special_closure(x);
    const int r = ws.relations.rank();
    if (r == 0) return ws;

    std::vector<Int> primes;
    for (const FactoredValue& c : ws.constants)
        for (const auto& [p, e] : c.prime_exponents())
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);

    ExponentLattice torsion_part = ws.relations;
    if (!primes.empty()) {
        // Combinations of the relations whose constants have trivial prime
        // part: the integer kernel of the stacked prime-exponent vectors.
        IntegerMatrix pm(static_cast<int>(primes.size()), r);
        for (int i = 0; i < r; ++i) {
            const auto& expo = ws.constants[static_cast<std::size_t>(i)].prime_exponents();
            for (std::size_t q = 0; q < primes.size(); ++q) {
                auto it = expo.find(primes[q]);
                pm.at(static_cast<int>(q), i) = it == expo.end() ? Int(0) : it->second;
            }
        }
        IntegerMatrix combos = right_kernel(pm);
        std::vector<std::vector<Int>> rows;
        for (int t = 0; t < combos.rows(); ++t) {
            std::vector<Int> row(static_cast<std::size_t>(ws.ambient_dim), Int(0));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < ws.ambient_dim; ++j)
                    row[static_cast<std::size_t>(j)] += combos.at(t, i) * ws.relations.basis().at(i, j);
            rows.push_back(std::move(row));
        }
        torsion_part = rows.empty() ? ExponentLattice::zero(ws.ambient_dim)
                                    : ExponentLattice(ws.ambient_dim, IntegerMatrix::from_rows(rows));
    }

    MultiplicativePoint constants;
    for (int i = 0; i < torsion_part.basis().rows(); ++i) {
        FactoredValue value = coset_constant(ws, torsion_part.basis().row(i));
        if (!value.is_torsion())
            throw internal_error("torsion sublattice carries a non-torsion constant");
        if (value.root_order() > torsion_cap)
            throw budget_error("torsion constant order exceeds the cap");
        constants.push_back(value);
    }
    return coset_from_relations(torsion_part, constants);
}

std::optional<AtypicalWitness> atypicality_check(const PolynomialIdeal& v, const TorusCoset& w,
                                                 const TorusCoset& s, const PolynomialIdeal& x) {
    const int n = v.ambient_dim();
    if (w.ambient_dim != n || s.ambient_dim != n || x.ambient_dim() != n)
        throw precondition_error("ambient dimension mismatch");
    if (!v.torus_mode() || !x.torus_mode())
        throw precondition_error("atypicality check works with torus ideals");
    if (x.is_unit()) throw precondition_error("the component is empty");
    if (!coset_contains_coset(s, w)) throw precondition_error("W is not contained in S");
    if (!x.contains_ideal_of(v)) throw precondition_error("X is not contained in V");
    if (!x.contains_ideal_of(coset_ideal(w, x.budget())))
        throw precondition_error("X is not contained in W");
    if (!v.contains_ideal_of(coset_ideal(s, v.budget())))
        throw precondition_error("V is not contained in S");

    AtypicalWitness out;
    out.component = x;
    out.against = w;
    out.ambient = s;
    out.dim_x = x.dimension();
    out.dim_v = v.dimension();
    out.dim_w = w.dimension();
    out.dim_s = s.dimension();
    if (out.dim_x <= out.dim_v + out.dim_w - out.dim_s) return std::nullopt;
    out.ws_closure = weakly_special_closure(x);
    out.defect = out.ws_closure.dimension() - out.dim_x;
    return out;
}

CosetLocusResult atypical_coset_locus(const PolynomialIdeal& v, const ExponentLattice& t,
                                      const TorusCoset& s) {
    const int n = v.ambient_dim();
    if (t.ambient_dim() != n || s.ambient_dim != n)
        throw precondition_error("ambient dimension mismatch");
    if (!v.torus_mode()) throw precondition_error("the variety must be a torus ideal");
    if (v.is_unit()) throw precondition_error("the variety is empty");
    ExponentLattice tsat = t.saturation();
    if (!tsat.contains_lattice(s.relations))
        throw precondition_error("subgroup does not lie in the direction space of the ambient coset");
    if (!v.contains_ideal_of(coset_ideal(s, v.budget())))
        throw precondition_error("V is not contained in S");

    CosetLocusResult out;
    out.map = quotient_map(tsat);
    const int subgroup_dim = n - tsat.rank();
    out.expected_fiber_dim = v.dimension() + subgroup_dim - s.dimension();
    out.base_dim = s.dimension() - subgroup_dim;
    FiberJumpResult fj = fiber_jump_locus(v, out.map.matrix, out.expected_fiber_dim, true);
    out.locus = std::move(fj.locus);
    if (out.locus.dimension() >= out.base_dim)
        throw precondition_error(
            "atypical base locus is dense: the variety is reducible or the input is inconsistent");
    return out;
}

bool is_gamma_special(const TorusCoset& c, const FiniteRankGroup& gamma) {
    if (c.ambient_dim != gamma.ambient_dim)
        throw precondition_error("ambient dimension mismatch");
    if (c.relations.rank() == 0) return true;
    FiniteRankGroup image = map_group(c.relations.basis(), gamma);
    return group_contains(image, c.constants);
}

std::optional<MultiplicativePoint> gamma_point_on(const TorusCoset& c,
                                                  const FiniteRankGroup& gamma) {
    if (c.ambient_dim != gamma.ambient_dim)
        throw precondition_error("ambient dimension mismatch");
    const int n = c.ambient_dim;
    const int r = c.relations.rank();
    if (r == 0) return MultiplicativePoint(static_cast<std::size_t>(n));
    const IntegerMatrix& basis = c.relations.basis();

    if (gamma.division_closed) {
        std::vector<MultiplicativePoint> mapped;
        for (const MultiplicativePoint& g : gamma.generators)
            mapped.push_back(monomial_image(basis, g));
        auto word = membership_witness(c.constants, mapped, true);
        if (!word) return std::nullopt;

        // The fractional word must give integral prime exponents in the
        // ambient coordinates, else the point is irrational.
        MultiplicativePoint point(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            std::map<Int, Rational> acc;
            for (std::size_t i = 0; i < gamma.generators.size(); ++i)
                for (const auto& [p, e] : gamma.generators[i][static_cast<std::size_t>(j)].prime_exponents())
                    acc[p] += (*word)[i] * Rational(e);
            FactoredValue coord;
            for (const auto& [p, e] : acc) {
                if (e == 0) continue;
                if (e.get_den() != 1) return std::nullopt;
                coord = coord * FactoredValue::from_rational(Rational(p)).pow(e.get_num());
            }
            point[static_cast<std::size_t>(j)] = coord;
        }

        // Fix the torsion parts: the division closure contains every root of
        // unity, so adjust by a torsion point mapping onto the discrepancy.
        MultiplicativePoint image = monomial_image(basis, point);
        std::vector<Rational> delta(static_cast<std::size_t>(r));
        bool mismatch = false;
        for (int t = 0; t < r; ++t) {
            if (!(image[static_cast<std::size_t>(t)].prime_exponents() ==
                  c.constants[static_cast<std::size_t>(t)].prime_exponents()))
                throw internal_error("prime parts diverged while lifting a group point");
            delta[static_cast<std::size_t>(t)] =
                angle_of(c.constants[static_cast<std::size_t>(t)]) - angle_of(image[static_cast<std::size_t>(t)]);
            mismatch = mismatch || delta[static_cast<std::size_t>(t)] != 0;
        }
        if (mismatch) {
            IntegerMatrix section = right_inverse_saturated(basis);
            for (int j = 0; j < n; ++j) {
                Rational theta(0);
                for (int t = 0; t < r; ++t) theta += Rational(section.at(j, t)) * delta[static_cast<std::size_t>(t)];
                if (theta != 0)
                    point[static_cast<std::size_t>(j)] = point[static_cast<std::size_t>(j)] * root_from_angle(theta);
            }
        }
        if (!coset_contains(c, point)) throw internal_error("lifted group point missed the coset");
        return point;
    }

    std::vector<MultiplicativePoint> effective = effective_generators(gamma);
    std::vector<MultiplicativePoint> mapped;
    for (const MultiplicativePoint& g : effective) mapped.push_back(monomial_image(basis, g));
    auto word = membership_witness(c.constants, mapped, false);
    if (!word) return std::nullopt;
    std::vector<Int> exponents;
    for (const Rational& w : *word) {
        if (w.get_den() != 1) throw internal_error("integral solve returned a fraction");
        exponents.push_back(w.get_num());
    }
    MultiplicativePoint point = evaluate_word(effective, exponents);
    if (!coset_contains(c, point)) throw internal_error("lifted group point missed the coset");
    return point;
}

TranslationResult translate_to_subgroup(const TorusCoset& s, const PolynomialIdeal& v,
                                        const FiniteRankGroup& gamma) {
    const int n = s.ambient_dim;
    if (v.ambient_dim() != n || gamma.ambient_dim != n)
        throw precondition_error("ambient dimension mismatch");
    if (!v.torus_mode()) throw precondition_error("translation works with torus ideals");
    auto base = gamma_point_on(s, gamma);
    if (!base)
        throw precondition_error("the coset carries no representable point of the group");
    auto rats = point_to_rationals(*base);
    if (!rats) throw precondition_error("the group point on the coset is not rational");

    TranslationResult out;
    out.base = *base;
    out.subgroup = coset_from_relations(s.relations,
                                        MultiplicativePoint(static_cast<std::size_t>(s.relations.rank())));
    std::vector<Poly> moved;
    for (const Poly& g : v.generators()) moved.push_back(g.scale_variables(*rats));
    out.translated = PolynomialIdeal(n, std::move(moved), true, v.budget());

    if (s.relations.rank() == 0) {
        out.gamma0 = gamma;
        return out;
    }
    out.gamma0.ambient_dim = n;
    out.gamma0.division_closed = gamma.division_closed;
    out.gamma0.torsion_order_cap = 1;
    std::vector<MultiplicativePoint> base_gens =
        gamma.division_closed ? gamma.generators : effective_generators(gamma);
    std::vector<MultiplicativePoint> mapped;
    for (const MultiplicativePoint& g : base_gens)
        mapped.push_back(monomial_image(s.relations.basis(), g));
    for (const std::vector<Int>& word : kernel_words(mapped, gamma.division_closed))
        out.gamma0.generators.push_back(evaluate_word(base_gens, word));
    return out;
}

}  // namespace atyp
