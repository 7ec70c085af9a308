// engine.cpp
// Bounded enumeration of gamma-atypical and gamma-optimal subvarieties. The
// searches collect candidate components from intersections with bounded
// translate families and validate every candidate the same way: the weakly
// special closure must be gamma-special, the dimension inequality against
// that closure must hold in the top ambient, and the candidate must be a
// component of V cut by the closure. The engine prunes translates through
// the atypical locus of each quotient; the oracle tries them all. Both feed
// the identical validation, so their outputs are comparable object for
// object.
#include "atyp/engine.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "atyp/error.hpp"

namespace atyp {

namespace {

std::string ideal_key(const PolynomialIdeal& ideal) {
    const TermOrder ord = TermOrder::lex(ideal.ambient_dim());
    std::string out;
    for (const auto& g : ideal.groebner(ord)) {
        out += g.to_string(ord);
        out += "; ";
    }
    return out;
}

std::string render_ideal(const PolynomialIdeal& ideal) {
    const TermOrder ord = TermOrder::lex(ideal.ambient_dim());
    std::string out;
    const auto& basis = ideal.groebner(ord);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) out += "; ";
        out += basis[i].to_string(ord);
    }
    if (basis.empty()) out = "0";
    return out;
}

// One-variable affine ideal generator as a UniPoly.
UniPoly uni_from_poly(const Poly& p) {
    if (p.vars() != 1) throw internal_error("univariate conversion of a multivariate polynomial");
    UniPoly out;
    for (const auto& [e, c] : p.terms()) {
        if (e[0] < 0) throw internal_error("univariate conversion of a Laurent polynomial");
        if (static_cast<std::size_t>(e[0]) >= out.size()) out.resize(e[0] + 1, Rational(0));
        out[e[0]] = c;
    }
    return uni_trim(std::move(out));
}

long checked_power(long base, long exponent, long cap) {
    long value = 1;
    for (long i = 0; i < exponent; ++i) {
        if (value > cap / base) return cap + 1;
        value *= base;
    }
    return value;
}

// Every word evaluation over the effective generators with exponents in
// [-k, k], deduplicated. Deterministic odometer order.
std::vector<MultiplicativePoint> bounded_word_points(const FiniteRankGroup& gamma,
                                                     const SearchBounds& bounds) {
    const auto gens = effective_generators(gamma);
    const long k = bounds.gamma_word_bound;
    const long radix = 2 * k + 1;
    if (checked_power(radix, static_cast<long>(gens.size()), bounds.point_budget) >
        bounds.point_budget)
        throw budget_error("group word enumeration exceeds the point budget");
    std::vector<MultiplicativePoint> out;
    std::set<std::string> seen;
    std::vector<Int> word(gens.size(), Int(-k));
    while (true) {
        MultiplicativePoint p = evaluate_word(gens, word);
        if (seen.insert(point_to_string(p)).second) out.push_back(std::move(p));
        std::size_t pos = 0;
        while (pos < word.size() && word[pos] == k) word[pos++] = -k;
        if (pos == word.size()) break;
        word[pos] += 1;
    }
    return out;
}

// Candidate relation lattices inside an ambient coset: pool members summed
// with the ambient relations, saturated, strictly larger rank only.
std::vector<ExponentLattice> candidate_lattices(const std::vector<ExponentLattice>& pool,
                                                const ExponentLattice& ambient_relations) {
    std::vector<ExponentLattice> out;
    std::set<std::string> seen;
    for (const auto& l : pool) {
        ExponentLattice cand = l.sum(ambient_relations).saturation();
        if (cand.rank() <= ambient_relations.rank()) continue;
        if (!seen.insert(cand.basis().to_string()).second) continue;
        out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const ExponentLattice& a, const ExponentLattice& b) {
        if (a.rank() != b.rank()) return a.rank() < b.rank();
        return a.basis().to_string() < b.basis().to_string();
    });
    return out;
}

std::vector<std::vector<Int>> basis_rows(const ExponentLattice& l) {
    std::vector<std::vector<Int>> rows;
    for (int r = 0; r < l.basis().rows(); ++r) rows.push_back(l.basis().row(r));
    return rows;
}

bool rational_constants(const TorusCoset& c) {
    for (const auto& v : c.constants)
        if (!v.is_rational()) return false;
    return true;
}

// Shared validation: the closure must be gamma-special and sit inside the
// ambient, the dimension inequality must hold, and the candidate must be a
// component of V cut by its closure. The gamma defect equals the weakly
// special defect because the closure itself is the gamma-special closure.
std::optional<AtypicalWitness> validate_torus_candidate(const PolynomialIdeal& x,
                                                        const PolynomialIdeal& v_top,
                                                        const TorusCoset& s_top,
                                                        const FiniteRankGroup& gamma) {
    if (x.is_unit()) return std::nullopt;
    std::optional<TorusCoset> closure;
    try {
        closure = weakly_special_closure(x);
    } catch (const precondition_error&) {
        // a bundle of conjugate points has no coset closure over the
        // rationals; such candidates are outside the certified search space
        return std::nullopt;
    }
    TorusCoset ws = *closure;
    if (!coset_contains_coset(s_top, ws)) return std::nullopt;
    if (!is_gamma_special(ws, gamma)) return std::nullopt;
    auto wit = atypicality_check(v_top, ws, s_top, x);
    if (!wit) return std::nullopt;
    PolynomialIdeal cut = v_top.with_extra(coset_ideal(ws).generators());
    bool is_component = false;
    for (const auto& comp : extract_components(cut)) {
        if (comp.same_locus_ideal(x)) {
            is_component = true;
            break;
        }
    }
    if (!is_component) return std::nullopt;
    wit->gamma_defect = wit->defect;
    return wit;
}

std::vector<AtypicalWitness> finalize_torus_list(const std::vector<PolynomialIdeal>& raw,
                                                 const PolynomialIdeal& v_top,
                                                 const TorusCoset& s_top,
                                                 const FiniteRankGroup& gamma) {
    std::vector<AtypicalWitness> witnesses;
    std::set<std::string> seen;
    for (const auto& x : raw) {
        if (!seen.insert(ideal_key(x)).second) continue;
        bool duplicate_locus = false;
        for (const auto& w : witnesses) {
            if (w.component.same_locus_ideal(x)) {
                duplicate_locus = true;
                break;
            }
        }
        if (duplicate_locus) continue;
        if (auto w = validate_torus_candidate(x, v_top, s_top, gamma)) witnesses.push_back(*w);
    }
    std::vector<AtypicalWitness> maximal;
    for (const auto& w : witnesses) {
        bool dominated = false;
        for (const auto& other : witnesses) {
            if (&other == &w) continue;
            if (w.component.contains_ideal_of(other.component) &&
                !w.component.same_locus_ideal(other.component)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) maximal.push_back(w);
    }
    std::sort(maximal.begin(), maximal.end(), [](const AtypicalWitness& a, const AtypicalWitness& b) {
        if (a.dim_x != b.dim_x) return a.dim_x > b.dim_x;
        return ideal_key(a.component) < ideal_key(b.component);
    });
    return maximal;
}

// Engine collector. Works in translated coordinates: the ambient is a coset
// whose relations every candidate lattice contains, so each fiber over the
// atypical locus stays inside the ambient automatically.
void collect_torus_engine(const PolynomialIdeal& v, const TorusCoset& ambient,
                          const std::vector<ExponentLattice>& pool, const FiniteRankGroup& gamma,
                          const SearchBounds& bounds, int depth, int max_depth,
                          std::vector<PolynomialIdeal>& out) {
    if (depth > max_depth)
        throw internal_error("translate recursion exceeded the ambient dimension bound");
    if (v.is_unit()) return;
    for (const auto& lat : candidate_lattices(pool, ambient.relations)) {
        std::optional<CosetLocusResult> res;
        try {
            res.emplace(atypical_coset_locus(v, lat, ambient));
        } catch (const precondition_error&) {
            // Bundled intersections can be reducible and fiber-dense; the
            // top-level input vouches for irreducibility, deeper levels skip.
            if (depth == 0) throw;
            continue;
        }
        if (res->locus.is_empty()) continue;
        FiniteRankGroup mapped = map_group(res->map.matrix, gamma);
        for (const auto& group : mordell_lang_search(res->locus, mapped, bounds)) {
            for (const auto& p : group.points) {
                auto fiber = coset_from_relation_rows(ambient.ambient_dim, basis_rows(lat), p);
                if (!fiber) continue;
                if (!coset_contains_coset(ambient, *fiber)) continue;
                PolynomialIdeal inter = v.with_extra(coset_ideal(*fiber).generators());
                if (inter.is_unit()) continue;
                for (auto& comp : extract_components(inter)) out.push_back(std::move(comp));
                if (fiber->dimension() < ambient.dimension() && fiber->dimension() > 0)
                    collect_torus_engine(inter, *fiber, pool, gamma, bounds, depth + 1, max_depth,
                                         out);
            }
        }
    }
}

// Oracle collector: same translate universe, no locus computation. A fiber
// through a word point stays inside the ambient exactly when the point lies
// on the ambient, so that is the only filter.
void collect_torus_oracle(const PolynomialIdeal& v, const TorusCoset& ambient,
                          const std::vector<ExponentLattice>& pool,
                          const std::vector<MultiplicativePoint>& word_points, int depth,
                          int max_depth, std::vector<PolynomialIdeal>& out) {
    if (depth > max_depth)
        throw internal_error("translate recursion exceeded the ambient dimension bound");
    if (v.is_unit()) return;
    for (const auto& lat : candidate_lattices(pool, ambient.relations)) {
        std::set<std::string> seen;
        for (const auto& g : word_points) {
            if (!coset_contains(ambient, g)) continue;
            TorusCoset fiber = coset_through_point(lat, g);
            if (!rational_constants(fiber)) continue;
            if (!seen.insert(coset_to_string(fiber)).second) continue;
            PolynomialIdeal inter = v.with_extra(coset_ideal(fiber).generators());
            if (inter.is_unit()) continue;
            for (auto& comp : extract_components(inter)) out.push_back(std::move(comp));
            if (fiber.dimension() < ambient.dimension() && fiber.dimension() > 0)
                collect_torus_oracle(inter, fiber, pool, word_points, depth + 1, max_depth, out);
        }
    }
}

void check_torus_instance(const PolynomialIdeal& v, const TorusCoset& s,
                          const FiniteRankGroup& gamma, const SearchBounds& bounds) {
    check_search_bounds(bounds);
    if (v.ambient_dim() != s.ambient_dim || gamma.ambient_dim != s.ambient_dim)
        throw precondition_error("ambient dimension mismatch between V, S and gamma");
    if (!v.torus_mode()) throw precondition_error("the torus search needs a torus-mode ideal");
    if (!is_gamma_special(s, gamma))
        throw precondition_error("the ambient coset is not gamma-special within the bounds");
    if (!v.contains_ideal_of(coset_ideal(s)))
        throw precondition_error("V must lie inside the ambient coset");
}

std::vector<PolynomialIdeal> back_translate(const std::vector<PolynomialIdeal>& raw,
                                            const MultiplicativePoint& base) {
    auto b = point_to_rationals(base);
    if (!b) throw internal_error("translation base point is not rational");
    bool identity = true;
    std::vector<Rational> inv;
    for (const auto& c : *b) {
        if (c != 1) identity = false;
        inv.push_back(Rational(1) / c);
    }
    if (identity) return raw;
    std::vector<PolynomialIdeal> out;
    out.reserve(raw.size());
    for (const auto& ideal : raw) {
        std::vector<Poly> gens;
        for (const auto& g : ideal.generators()) gens.push_back(g.scale_variables(inv));
        out.emplace_back(ideal.ambient_dim(), std::move(gens), ideal.torus_mode());
    }
    return out;
}

// ---- modular helpers ----

// Decides membership of a point with exact coordinates in one locally closed
// piece. At most one singular-modulus coordinate is supported; the test for
// that coordinate is class-polynomial divisibility, i.e. membership of the
// whole conjugacy class, matching the ideal-level semantics of singular
// moduli. Tuples with two or more singular-modulus coordinates are rejected.
bool piece_contains_exact(const ConstructiblePiece& piece, const std::vector<ExactValue>& t) {
    std::vector<int> cm;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!t[i].is_rational()) cm.push_back(static_cast<int>(i));
    if (cm.size() > 1) return false;
    const int n = static_cast<int>(t.size());
    auto reduced = [&](const Poly& g) {
        Poly h = g;
        for (int i = 0; i < n; ++i)
            if (t[i].is_rational()) h = h.substitute_value(i, t[i].rational());
        return h;
    };
    auto vanishes = [&](const Poly& g) {
        Poly h = reduced(g);
        if (cm.empty() || !h.depends_on(cm[0])) return h.is_zero();
        std::vector<int> image(n, 0);
        UniPoly u = uni_from_poly(h.reindex(1, image));
        return uni_divides(t[cm[0]].minimal_polynomial(), u);
    };
    for (const auto& g : piece.closed.effective_generators())
        if (!vanishes(g)) return false;
    for (const auto& g : piece.excluded.effective_generators())
        if (!vanishes(g)) return true;
    return false;
}

bool constructible_contains_exact(const ConstructibleSet& c, const std::vector<ExactValue>& t) {
    for (const auto& piece : c.pieces())
        if (piece_contains_exact(piece, t)) return true;
    return false;
}

// Values Hecke-related to v at the given level, as far as the bundled tables
// can name them: rational roots of the orbit polynomial plus every bundled
// singular-modulus class dividing it.
std::vector<ExactValue> hecke_neighbor_values(const ModularData& data, long level,
                                              const ExactValue& v, long disc_bound) {
    if (level > data.phi.max_level())
        throw budget_error("modular level beyond the bundled tables");
    UniPoly orbit;
    if (v.is_rational())
        orbit = data.phi.polynomial(level).substitute_x(v.rational());
    else
        orbit = resultant_in_y(data.phi.polynomial(level).swapped(), v.minimal_polynomial());
    if (uni_degree(orbit) < 1) return {};
    UniPoly sf = uni_squarefree(orbit);
    std::vector<ExactValue> out;
    for (const auto& r : uni_rational_roots(sf)) out.emplace_back(r);
    for (const auto& [disc, minimal] : data.classes.entries()) {
        if (-disc > disc_bound) continue;
        if (!uni_divides(minimal, sf)) continue;
        for (int idx = 0; idx < data.classes.real_root_count(disc); ++idx)
            out.push_back(ExactValue::singular_modulus(data.classes, disc, idx));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<ModularWeaklySpecial> sorted_unique_ws(std::vector<ModularWeaklySpecial> list) {
    std::sort(list.begin(), list.end(),
              [](const ModularWeaklySpecial& a, const ModularWeaklySpecial& b) {
                  return a.to_string() < b.to_string();
              });
    list.erase(std::unique(list.begin(), list.end()), list.end());
    return list;
}

// Fibers of s over several fixed coordinates, folded one coordinate at a
// time. Fixing a coordinate that an earlier step already made constant keeps
// the translate only when the values agree.
std::vector<ModularWeaklySpecial> fold_fiber_translates(const ModularData& data,
                                                        const ModularWeaklySpecial& s,
                                                        const std::vector<int>& coords,
                                                        const std::vector<ExactValue>& values,
                                                        long disc_bound) {
    std::vector<ModularWeaklySpecial> current{s};
    for (std::size_t j = 0; j < coords.size(); ++j) {
        std::vector<ModularWeaklySpecial> next;
        for (const auto& t : current) {
            if (t.is_constant_coordinate(coords[j])) {
                if (t.constants().at(coords[j]) == values[j]) next.push_back(t);
            } else {
                auto more = modular_fiber_translates(data, t, coords[j], values[j], disc_bound);
                next.insert(next.end(), more.begin(), more.end());
            }
        }
        current = std::move(next);
        if (current.empty()) break;
    }
    return sorted_unique_ws(std::move(current));
}

// Strictly increasing index subsets of the given values, sizes 1..max_size,
// in lexicographic order.
std::vector<std::vector<int>> index_subsets(const std::vector<int>& values, int max_size) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(values.size());
    std::vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (!pick.empty()) {
            std::vector<int> subset;
            for (int idx : pick) subset.push_back(values[idx]);
            out.push_back(std::move(subset));
        }
        if (static_cast<int>(pick.size()) == max_size) return;
        for (int i = start; i < n; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::optional<ModularAtypicalWitness> validate_modular_candidate(const ModularData& data,
                                                                 const PolynomialIdeal& x,
                                                                 const PolynomialIdeal& v_top,
                                                                 const ModularWeaklySpecial& s_top,
                                                                 const ModularGamma& gamma) {
    if (x.is_unit()) return std::nullopt;
    ModularWeaklySpecial ws;
    try {
        ws = weakly_special_closure_modular(x, data);
    } catch (const precondition_error&) {
        // Bundles with conjugate-valued coordinates have no closure in the
        // rational layer; they never describe a single component anyway.
        return std::nullopt;
    }
    if (!is_gamma_special_modular(ws, gamma, data)) return std::nullopt;
    PolynomialIdeal wsi = modular_ideal(ws, data);
    if (!wsi.contains_ideal_of(modular_ideal(s_top, data))) return std::nullopt;
    auto wit = modular_atypicality_check(data, v_top, ws, s_top, x);
    if (!wit) return std::nullopt;
    PolynomialIdeal cut = v_top.with_extra(wsi.generators());
    bool is_component = false;
    for (const auto& comp : extract_components(cut)) {
        if (comp.same_locus_ideal(x)) {
            is_component = true;
            break;
        }
    }
    if (!is_component) return std::nullopt;
    wit->gamma_defect = wit->defect;
    return wit;
}

std::vector<ModularAtypicalWitness> finalize_modular_list(const std::vector<PolynomialIdeal>& raw,
                                                          const ModularData& data,
                                                          const PolynomialIdeal& v_top,
                                                          const ModularWeaklySpecial& s_top,
                                                          const ModularGamma& gamma) {
    std::vector<ModularAtypicalWitness> witnesses;
    std::set<std::string> seen;
    for (const auto& x : raw) {
        if (!seen.insert(ideal_key(x)).second) continue;
        bool duplicate_locus = false;
        for (const auto& w : witnesses) {
            if (w.component.same_locus_ideal(x)) {
                duplicate_locus = true;
                break;
            }
        }
        if (duplicate_locus) continue;
        if (auto w = validate_modular_candidate(data, x, v_top, s_top, gamma))
            witnesses.push_back(*w);
    }
    std::vector<ModularAtypicalWitness> maximal;
    for (const auto& w : witnesses) {
        bool dominated = false;
        for (const auto& other : witnesses) {
            if (&other == &w) continue;
            if (w.component.contains_ideal_of(other.component) &&
                !w.component.same_locus_ideal(other.component)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) maximal.push_back(w);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const ModularAtypicalWitness& a, const ModularAtypicalWitness& b) {
                  if (a.dim_x != b.dim_x) return a.dim_x > b.dim_x;
                  return ideal_key(a.component) < ideal_key(b.component);
              });
    return maximal;
}

constexpr int kMaxFiberCoords = 3;

// Engine collector, modular side. Pass A intersects with proper gamma-special
// shapes; pass B fixes coordinate subsets at admissible values found on the
// atypical fiber locus, propagating each fixed value through the ambient's
// trees.
void collect_modular_engine(const ModularData& data, const PolynomialIdeal& v,
                            const ModularWeaklySpecial& ambient,
                            const std::vector<ModularWeaklySpecial>& shapes,
                            const ModularGamma& gamma, const SearchBounds& bounds, int depth,
                            int max_depth, std::vector<PolynomialIdeal>& out) {
    if (depth > max_depth)
        throw internal_error("translate recursion exceeded the ambient dimension bound");
    if (v.is_unit()) return;
    PolynomialIdeal ambient_ideal = modular_ideal(ambient, data);
    for (const auto& shape : shapes) {
        if (shape == ambient) continue;
        if (shape.dimension() >= ambient.dimension()) continue;
        PolynomialIdeal si = modular_ideal(shape, data);
        if (!si.contains_ideal_of(ambient_ideal)) continue;
        if (!is_gamma_special_modular(shape, gamma, data)) continue;
        PolynomialIdeal inter = v.with_extra(si.generators());
        if (inter.is_unit()) continue;
        for (auto& comp : extract_components(inter)) out.push_back(std::move(comp));
        collect_modular_engine(data, inter, shape, shapes, gamma, bounds, depth + 1, max_depth,
                               out);
    }
    std::vector<int> free_coords;
    for (int i = 0; i < ambient.ambient(); ++i)
        if (!ambient.is_constant_coordinate(i)) free_coords.push_back(i);
    for (const auto& coords : index_subsets(free_coords, kMaxFiberCoords)) {
        std::optional<ModularFiberLocus> fl;
        try {
            fl.emplace(atypical_fiber_locus_modular(data, v, ambient, coords));
        } catch (const precondition_error&) {
            if (depth == 0) throw;
            continue;
        }
        if (fl->locus.is_empty()) continue;
        for (const auto& tuple : mordell_lang_search(data, fl->locus, gamma, bounds)) {
            for (const auto& t :
                 fold_fiber_translates(data, ambient, coords, tuple, bounds.disc_bound)) {
                PolynomialIdeal inter = v.with_extra(modular_ideal(t, data).generators());
                if (inter.is_unit()) continue;
                for (auto& comp : extract_components(inter)) out.push_back(std::move(comp));
                if (t.dimension() < ambient.dimension() && t.dimension() > 0)
                    collect_modular_engine(data, inter, t, shapes, gamma, bounds, depth + 1,
                                           max_depth, out);
            }
        }
    }
}

void collect_modular_oracle(const ModularData& data, const PolynomialIdeal& v,
                            const ModularWeaklySpecial& ambient,
                            const std::vector<ModularWeaklySpecial>& shapes,
                            const std::vector<ExactValue>& pool, const ModularGamma& gamma,
                            const SearchBounds& bounds, int depth, int max_depth,
                            std::vector<PolynomialIdeal>& out) {
    if (depth > max_depth)
        throw internal_error("translate recursion exceeded the ambient dimension bound");
    if (v.is_unit()) return;
    PolynomialIdeal ambient_ideal = modular_ideal(ambient, data);
    for (const auto& shape : shapes) {
        if (shape == ambient) continue;
        if (shape.dimension() >= ambient.dimension()) continue;
        PolynomialIdeal si = modular_ideal(shape, data);
        if (!si.contains_ideal_of(ambient_ideal)) continue;
        if (!is_gamma_special_modular(shape, gamma, data)) continue;
        PolynomialIdeal inter = v.with_extra(si.generators());
        if (inter.is_unit()) continue;
        for (auto& comp : extract_components(inter)) out.push_back(std::move(comp));
        collect_modular_oracle(data, inter, shape, shapes, pool, gamma, bounds, depth + 1,
                               max_depth, out);
    }
    std::vector<int> free_coords;
    for (int i = 0; i < ambient.ambient(); ++i)
        if (!ambient.is_constant_coordinate(i)) free_coords.push_back(i);
    for (const auto& coords : index_subsets(free_coords, kMaxFiberCoords)) {
        std::vector<ExactValue> tuple(coords.size());
        std::vector<std::size_t> idx(coords.size(), 0);
        if (pool.empty()) continue;
        while (true) {
            for (std::size_t j = 0; j < coords.size(); ++j) tuple[j] = pool[idx[j]];
            for (const auto& t :
                 fold_fiber_translates(data, ambient, coords, tuple, bounds.disc_bound)) {
                PolynomialIdeal inter = v.with_extra(modular_ideal(t, data).generators());
                if (inter.is_unit()) continue;
                for (auto& comp : extract_components(inter)) out.push_back(std::move(comp));
                if (t.dimension() < ambient.dimension() && t.dimension() > 0)
                    collect_modular_oracle(data, inter, t, shapes, pool, gamma, bounds, depth + 1,
                                           max_depth, out);
            }
            std::size_t pos = 0;
            while (pos < idx.size() && idx[pos] + 1 == pool.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
            idx[pos] += 1;
        }
    }
}

ModularGamma effective_gamma(const ModularGamma& gamma, const SearchBounds& bounds) {
    ModularGamma g = gamma;
    g.hecke_bound = bounds.hecke_bound;
    g.disc_bound = bounds.disc_bound;
    return g;
}

void check_modular_instance(const ModularData& data, const PolynomialIdeal& v,
                            const ModularWeaklySpecial& s, const ModularGamma& gamma,
                            const SearchBounds& bounds) {
    check_search_bounds(bounds);
    if (v.ambient_dim() != s.ambient())
        throw precondition_error("ambient dimension mismatch between V and S");
    if (v.torus_mode()) throw precondition_error("the modular search needs an affine ideal");
    if (!is_gamma_special_modular(s, gamma, data))
        throw precondition_error("the ambient variety is not gamma-special within the bounds");
    if (!v.contains_ideal_of(modular_ideal(s, data)))
        throw precondition_error("V must lie inside the ambient variety");
}

std::string rational_label(const std::vector<Rational>& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += rational_to_string(t[i]);
    }
    out += ")";
    return out;
}

GammaTranslate torus_translate_datum(const TorusCoset& ws) {
    GammaTranslate out;
    MultiplicativePoint ones(static_cast<std::size_t>(ws.relations.rank()));
    out.shape = coset_to_string(coset_from_relations(ws.relations, ones));
    out.translate = coset_to_string(ws);
    for (const auto& c : ws.constants) out.values.push_back(c.to_string());
    return out;
}

GammaTranslate modular_translate_datum(const ModularWeaklySpecial& ws) {
    GammaTranslate out;
    out.shape = ModularWeaklySpecial::make(ws.ambient(), ws.edges(), {}).to_string();
    out.translate = ws.to_string();
    for (const auto& [coord, value] : ws.constants()) {
        out.coords.push_back(coord);
        out.values.push_back(value.to_string());
    }
    return out;
}

}  // namespace

void check_search_bounds(const SearchBounds& bounds) {
    if (bounds.subgroup_entry_bound < 1 || bounds.modular_complexity_bound < 1 ||
        bounds.gamma_word_bound < 1 || bounds.hecke_bound < 1 || bounds.disc_bound < 1 ||
        bounds.candidate_budget < 1 || bounds.point_budget < 1)
        throw precondition_error("search bounds must be positive");
}

std::vector<ExponentLattice> enumerate_torus_subgroups(int n, const SearchBounds& bounds) {
    check_search_bounds(bounds);
    if (n < 1) throw precondition_error("ambient dimension must be positive");
    const long b = bounds.subgroup_entry_bound;
    // Primitive rows with entries in [-b, b], first nonzero entry positive.
    std::vector<std::vector<long>> rows;
    std::vector<long> row(n, -b);
    while (true) {
        long g = 0;
        long first = 0;
        for (long e : row) {
            g = std::gcd(g, std::abs(e));
            if (first == 0) first = e;
        }
        if (g == 1 && first > 0) rows.push_back(row);
        std::size_t pos = n;
        while (pos > 0 && row[pos - 1] == b) row[--pos] = -b;
        if (pos == 0) break;
        row[pos - 1] += 1;
    }
    std::sort(rows.begin(), rows.end());
    const long p = static_cast<long>(rows.size());
    long total = 1;  // the empty subset
    long choose = 1;
    for (long r = 1; r <= n; ++r) {
        if (choose > bounds.candidate_budget) break;
        choose = choose * (p - r + 1) / r;
        total += choose;
        if (total > bounds.candidate_budget)
            throw budget_error("combinatorial budget exceeded by the subgroup enumeration");
    }
    std::vector<ExponentLattice> out{ExponentLattice::zero(n)};
    std::set<std::string> seen{out[0].basis().to_string()};
    std::vector<int> pick;
    auto consider = [&](const std::vector<int>& subset) {
        std::vector<std::vector<Int>> gens;
        for (int idx : subset) {
            std::vector<Int> r(rows[idx].begin(), rows[idx].end());
            gens.push_back(std::move(r));
        }
        ExponentLattice l(n, IntegerMatrix::from_rows(gens));
        if (!l.is_saturated()) return;
        for (int i = 0; i < l.basis().rows(); ++i)
            for (int j = 0; j < l.basis().cols(); ++j)
                if (l.basis().at(i, j) > b || l.basis().at(i, j) < -b) return;
        if (seen.insert(l.basis().to_string()).second) out.push_back(std::move(l));
    };
    auto rec = [&](auto&& self, int start) -> void {
        if (!pick.empty()) consider(pick);
        if (static_cast<int>(pick.size()) == n) return;
        for (int i = start; i < p; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end(), [](const ExponentLattice& a, const ExponentLattice& b2) {
        if (a.rank() != b2.rank()) return a.rank() < b2.rank();
        return a.basis().to_string() < b2.basis().to_string();
    });
    return out;
}

std::vector<ModularWeaklySpecial> enumerate_modular_shapes(int n, const SearchBounds& bounds) {
    check_search_bounds(bounds);
    if (n < 1) throw precondition_error("ambient dimension must be positive");
    const long level_bound = bounds.modular_complexity_bound;
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    // Forests as acyclic slot subsets, then a level from 1..level_bound per
    // edge. Count first so the budget check precedes any construction.
    std::vector<std::vector<int>> forests;
    std::vector<int> pick;
    auto acyclic = [&](const std::vector<int>& subset) {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int idx : subset) {
            int ra = find(slots[idx].first);
            int rb = find(slots[idx].second);
            if (ra == rb) return false;
            parent[ra] = rb;
        }
        return true;
    };
    auto rec = [&](auto&& self, int start) -> void {
        if (acyclic(pick)) forests.push_back(pick);
        for (std::size_t i = start; i < slots.size(); ++i) {
            pick.push_back(static_cast<int>(i));
            if (acyclic(pick)) self(self, static_cast<int>(i) + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    long total = 0;
    for (const auto& f : forests) {
        long count = checked_power(level_bound, static_cast<long>(f.size()),
                                   bounds.candidate_budget);
        total += count;
        if (total > bounds.candidate_budget)
            throw budget_error("combinatorial budget exceeded by the shape enumeration");
    }
    std::vector<ModularWeaklySpecial> out;
    for (const auto& f : forests) {
        std::vector<long> levels(f.size(), 1);
        while (true) {
            std::vector<ModularEdge> edges;
            for (std::size_t i = 0; i < f.size(); ++i)
                edges.push_back(ModularEdge{slots[f[i]].first, slots[f[i]].second, levels[i]});
            out.push_back(ModularWeaklySpecial::make(n, edges, {}));
            std::size_t pos = 0;
            while (pos < levels.size() && levels[pos] == level_bound) levels[pos++] = 1;
            if (pos == levels.size()) break;
            levels[pos] += 1;
        }
    }
    std::sort(out.begin(), out.end(),
              [](const ModularWeaklySpecial& a, const ModularWeaklySpecial& b) {
                  if (a.edges().size() != b.edges().size())
                      return a.edges().size() < b.edges().size();
                  return a.to_string() < b.to_string();
              });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<GammaCosetGroup> mordell_lang_search(const ConstructibleSet& c,
                                                 const FiniteRankGroup& gamma,
                                                 const SearchBounds& bounds) {
    check_search_bounds(bounds);
    const int n = c.ambient_dim();
    if (n != gamma.ambient_dim)
        throw precondition_error("ambient dimension mismatch between the set and the group");
    std::vector<std::pair<MultiplicativePoint, std::vector<Rational>>> points;
    for (auto& p : bounded_word_points(gamma, bounds)) {
        auto r = point_to_rationals(p);
        if (!r) continue;
        points.emplace_back(std::move(p), std::move(*r));
    }
    std::vector<GammaCosetGroup> out;
    for (const auto& piece : c.pieces()) {
        std::vector<MultiplicativePoint> members;
        for (const auto& [p, r] : points) {
            bool on_closed = true;
            for (const auto& g : piece.closed.effective_generators())
                if (g.evaluate(r) != 0) {
                    on_closed = false;
                    break;
                }
            if (!on_closed) continue;
            bool off_excluded = false;
            for (const auto& g : piece.excluded.effective_generators())
                if (g.evaluate(r) != 0) {
                    off_excluded = true;
                    break;
                }
            if (off_excluded) members.push_back(p);
        }
        if (members.empty()) continue;
        if (members.size() == 1) {
            out.push_back({coset_through_point(ExponentLattice::full(n), members[0]), members});
            continue;
        }
        // Relations certified constant across all found points give the coset
        // they span; anything uncertain falls back to singletons.
        std::vector<MultiplicativePoint> differences;
        for (std::size_t i = 1; i < members.size(); ++i) {
            MultiplicativePoint d;
            for (int j = 0; j < n; ++j) d.push_back(members[i][j] * members[0][j].inverse());
            differences.push_back(std::move(d));
        }
        std::vector<MultiplicativePoint> stacked(n);
        for (int j = 0; j < n; ++j)
            for (const auto& d : differences) stacked[j].push_back(d[j]);
        auto words = kernel_words(stacked, false);
        ExponentLattice kernel =
            words.empty() ? ExponentLattice::zero(n)
                          : ExponentLattice(n, IntegerMatrix::from_rows(words));
        ExponentLattice sat = kernel.saturation();
        bool certified = true;
        for (int r = 0; r < sat.basis().rows() && certified; ++r) {
            FactoredValue value = evaluate_monomial(members[0], sat.basis().row(r));
            for (const auto& m : members)
                if (!(evaluate_monomial(m, sat.basis().row(r)) == value)) {
                    certified = false;
                    break;
                }
        }
        if (certified) {
            TorusCoset coset = coset_through_point(sat, members[0]);
            if (rational_constants(coset) &&
                coset_ideal(coset).contains_ideal_of(piece.closed)) {
                out.push_back({coset, members});
                continue;
            }
        }
        for (const auto& m : members)
            out.push_back({coset_through_point(ExponentLattice::full(n), m),
                           std::vector<MultiplicativePoint>{m}});
    }
    return out;
}

std::vector<std::vector<ExactValue>> mordell_lang_search(const ModularData& data,
                                                         const ConstructibleSet& c,
                                                         const ModularGamma& gamma,
                                                         const SearchBounds& bounds) {
    check_search_bounds(bounds);
    const int k = c.ambient_dim();
    if (k < 1) return {};
    std::vector<ExactValue> pool = gamma_value_pool(data, effective_gamma(gamma, bounds));
    if (pool.empty()) return {};
    if (checked_power(static_cast<long>(pool.size()), k, bounds.point_budget) >
        bounds.point_budget)
        throw budget_error("value tuple enumeration exceeds the point budget");
    std::vector<std::vector<ExactValue>> out;
    std::vector<std::size_t> idx(k, 0);
    std::vector<ExactValue> tuple(k);
    while (true) {
        for (int j = 0; j < k; ++j) tuple[j] = pool[idx[j]];
        if (constructible_contains_exact(c, tuple)) out.push_back(tuple);
        std::size_t pos = 0;
        while (pos < idx.size() && idx[pos] + 1 == pool.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
        idx[pos] += 1;
    }
    return out;
}

std::vector<PolynomialIdeal> extract_components(const PolynomialIdeal& ideal) {
    if (ideal.is_unit()) return {};
    const int n = ideal.ambient_dim();
    if (ideal.dimension() > 0) return {ideal};
    // Zero-dimensional: per-coordinate eliminants, rational roots, and exact
    // membership of each grid point. When every squarefree eliminant splits
    // completely over the rationals the points are all of them; otherwise the
    // unsplit remainder stays bundled.
    std::vector<std::vector<Rational>> roots(n);
    bool complete = true;
    for (int i = 0; i < n; ++i) {
        PolynomialIdeal el = eliminate(ideal, {i});
        const auto& basis = el.groebner(TermOrder::lex(1));
        if (basis.empty()) {
            complete = false;
            continue;
        }
        UniPoly f = uni_squarefree(uni_from_poly(basis.back()));
        roots[i] = uni_rational_roots(f);
        if (static_cast<int>(roots[i].size()) != uni_degree(f)) complete = false;
    }
    long grid = 1;
    for (int i = 0; i < n; ++i) {
        grid *= std::max<long>(1, static_cast<long>(roots[i].size()));
        if (grid > 4096) return {ideal};
        if (roots[i].empty()) grid = 0;
    }
    std::vector<PolynomialIdeal> out;
    if (grid > 0) {
        std::vector<std::size_t> idx(n, 0);
        std::vector<Rational> point(n);
        while (true) {
            for (int i = 0; i < n; ++i) point[i] = roots[i][idx[i]];
            bool member = true;
            if (ideal.torus_mode())
                for (const auto& coord : point)
                    if (coord == 0) member = false;
            if (member)
                for (const auto& g : ideal.generators())
                    if (g.evaluate(point) != 0) {
                        member = false;
                        break;
                    }
            if (member) {
                std::vector<Poly> gens;
                for (int i = 0; i < n; ++i)
                    gens.push_back(Poly::variable(n, i) - Poly::constant(n, point[i]));
                out.emplace_back(n, std::move(gens), ideal.torus_mode());
            }
            std::size_t pos = 0;
            while (pos < idx.size() && idx[pos] + 1 == roots[pos].size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
            idx[pos] += 1;
        }
    }
    if (!complete) out.push_back(ideal);
    return out;
}

TorusCoset bounded_gamma_closure(const PolynomialIdeal& x, const FiniteRankGroup& gamma,
                                 const SearchBounds& bounds) {
    check_search_bounds(bounds);
    TorusCoset ws = weakly_special_closure(x);
    if (is_gamma_special(ws, gamma)) return ws;
    const int n = x.ambient_dim();
    std::optional<TorusCoset> best;
    std::string best_key;
    for (const auto& l : enumerate_torus_subgroups(n, bounds)) {
        if (l.rank() == 0) continue;
        if (!ws.relations.contains_lattice(l)) continue;
        MultiplicativePoint constants;
        for (int r = 0; r < l.basis().rows(); ++r)
            constants.push_back(coset_constant(ws, l.basis().row(r)));
        TorusCoset cand = coset_from_relations(l, constants);
        if (!is_gamma_special(cand, gamma)) continue;
        std::string key = coset_to_string(cand);
        if (!best || cand.relations.rank() > best->relations.rank() ||
            (cand.relations.rank() == best->relations.rank() && key < best_key)) {
            best = cand;
            best_key = key;
        }
    }
    if (best) return *best;
    return full_torus(n);
}

std::vector<ModularWeaklySpecial> modular_fiber_translates(const ModularData& data,
                                                           const ModularWeaklySpecial& s, int i,
                                                           const ExactValue& c, long disc_bound) {
    if (i < 0 || i >= s.ambient()) throw precondition_error("fiber coordinate out of range");
    if (s.is_constant_coordinate(i))
        throw precondition_error("fiber coordinate is already constant");
    std::vector<int> block;
    for (const auto& b : s.blocks())
        if (std::find(b.begin(), b.end(), i) != b.end()) block = b;
    std::vector<ModularEdge> inside, outside;
    for (const auto& e : s.edges()) {
        if (std::find(block.begin(), block.end(), e.a) != block.end())
            inside.push_back(e);
        else
            outside.push_back(e);
    }
    // Propagate the fixed value along the block's tree, one assignment per
    // choice of representable neighbor at each edge.
    std::vector<std::map<int, ExactValue>> assignments{{{i, c}}};
    std::set<int> visited{i};
    std::vector<int> frontier{i};
    while (!frontier.empty()) {
        int node = frontier.back();
        frontier.pop_back();
        for (const auto& e : inside) {
            int other = -1;
            if (e.a == node && visited.count(e.b) == 0) other = e.b;
            if (e.b == node && visited.count(e.a) == 0) other = e.a;
            if (other < 0) continue;
            visited.insert(other);
            frontier.push_back(other);
            std::vector<std::map<int, ExactValue>> next;
            for (const auto& assign : assignments) {
                for (const auto& w :
                     hecke_neighbor_values(data, e.level, assign.at(node), disc_bound)) {
                    auto extended = assign;
                    extended.emplace(other, w);
                    next.push_back(std::move(extended));
                }
            }
            assignments = std::move(next);
        }
    }
    std::vector<ModularWeaklySpecial> out;
    for (const auto& assign : assignments) {
        std::map<int, ExactValue> constants = s.constants();
        for (const auto& [coord, value] : assign) constants.emplace(coord, value);
        out.push_back(ModularWeaklySpecial::make(s.ambient(), outside, constants));
    }
    return sorted_unique_ws(std::move(out));
}

std::vector<AtypicalWitness> maximal_gamma_atypical(const PolynomialIdeal& v, const TorusCoset& s,
                                                    const FiniteRankGroup& gamma,
                                                    const SearchBounds& bounds) {
    check_torus_instance(v, s, gamma, bounds);
    if (v.is_unit()) return {};
    TranslationResult tr = translate_to_subgroup(s, v, gamma);
    auto pool = enumerate_torus_subgroups(s.ambient_dim, bounds);
    std::vector<PolynomialIdeal> raw;
    collect_torus_engine(tr.translated, tr.subgroup, pool, gamma, bounds, 0, s.dimension(), raw);
    return finalize_torus_list(back_translate(raw, tr.base), v, s, gamma);
}

std::vector<ModularAtypicalWitness> maximal_gamma_atypical(const ModularData& data,
                                                           const PolynomialIdeal& v,
                                                           const ModularWeaklySpecial& s,
                                                           const ModularGamma& gamma,
                                                           const SearchBounds& bounds) {
    ModularGamma g = effective_gamma(gamma, bounds);
    check_modular_instance(data, v, s, g, bounds);
    if (v.is_unit()) return {};
    auto shapes = enumerate_modular_shapes(s.ambient(), bounds);
    std::vector<PolynomialIdeal> raw;
    collect_modular_engine(data, v, s, shapes, g, bounds, 0, s.dimension(), raw);
    return finalize_modular_list(raw, data, v, s, g);
}

PolynomialIdeal specialize(const ParametricFamily& family, const std::vector<Rational>& t) {
    if (family.ambient_dim < 1 || family.param_dim < 0)
        throw precondition_error("malformed parametric family");
    if (static_cast<int>(t.size()) != family.param_dim)
        throw precondition_error("parameter point has the wrong length");
    for (const auto& g : family.domain.generators())
        if (g.evaluate(t) != 0)
            throw precondition_error("parameter point lies outside the family domain");
    const int n = family.ambient_dim;
    std::vector<int> image(n + family.param_dim, 0);
    for (int i = 0; i < n; ++i) image[i] = i;
    std::vector<Poly> gens;
    for (const auto& f : family.base) {
        Poly h = f;
        for (int j = 0; j < family.param_dim; ++j) h = h.substitute_value(n + j, t[j]);
        gens.push_back(h.reindex(n, image));
    }
    return PolynomialIdeal(n, std::move(gens), family.torus_mode);
}

std::string report_to_string(const EnumerationReport& report) {
    std::ostringstream out;
    out << "atyp-report 1\n";
    out << "setting: " << report.setting << "\n";
    out << "bounds:\n";
    out << "  subgroup_entry_bound: " << report.bounds.subgroup_entry_bound << "\n";
    out << "  modular_complexity_bound: " << report.bounds.modular_complexity_bound << "\n";
    out << "  gamma_word_bound: " << report.bounds.gamma_word_bound << "\n";
    out << "  hecke_bound: " << report.bounds.hecke_bound << "\n";
    out << "  disc_bound: " << report.bounds.disc_bound << "\n";
    out << "  candidate_budget: " << report.bounds.candidate_budget << "\n";
    out << "  point_budget: " << report.bounds.point_budget << "\n";
    if (report.sigma.empty()) {
        out << "sigma: []\n";
    } else {
        out << "sigma:\n";
        for (const auto& s : report.sigma) out << "  - " << s << "\n";
    }
    out << "max_witnesses: " << report.max_witness_count << "\n";
    if (report.instances.empty()) {
        out << "instances: []\n";
        return out.str();
    }
    out << "instances:\n";
    for (const auto& inst : report.instances) {
        out << "  - label: " << inst.label << "\n";
        if (inst.witnesses.empty()) {
            out << "    witnesses: []\n";
            continue;
        }
        out << "    witnesses:\n";
        for (const auto& w : inst.witnesses) {
            out << "      - component: " << w.component << "\n";
            out << "        dim: " << w.dim << "\n";
            out << "        defect: " << w.defect << "\n";
            out << "        gamma_defect: " << w.gamma_defect << "\n";
            out << "        shape: " << w.translate.shape << "\n";
            out << "        translate: " << w.translate.translate << "\n";
            out << "        coords: [";
            for (std::size_t i = 0; i < w.translate.coords.size(); ++i) {
                if (i) out << ", ";
                out << "x" << (w.translate.coords[i] + 1);
            }
            out << "]\n";
            out << "        values: [";
            for (std::size_t i = 0; i < w.translate.values.size(); ++i) {
                if (i) out << ", ";
                out << w.translate.values[i];
            }
            out << "]\n";
        }
    }
    return out.str();
}

EnumerationReport uniform_family_report(const ParametricFamily& family, const TorusCoset& s,
                                        const FiniteRankGroup& gamma, const SearchBounds& bounds,
                                        const std::vector<std::vector<Rational>>& sample) {
    check_search_bounds(bounds);
    if (family.ambient_dim != s.ambient_dim)
        throw precondition_error("family and ambient dimensions disagree");
    EnumerationReport report;
    report.setting = "torus";
    report.bounds = bounds;
    std::set<std::string> sigma;
    for (const auto& t : sample) {
        PolynomialIdeal vt = specialize(family, t);
        ReportInstance inst;
        inst.label = rational_label(t);
        for (const auto& w : maximal_gamma_atypical(vt, s, gamma, bounds)) {
            ReportWitness rw;
            rw.component = render_ideal(w.component);
            rw.dim = w.dim_x;
            rw.defect = w.defect;
            rw.gamma_defect = w.gamma_defect.value_or(w.defect);
            rw.translate = torus_translate_datum(w.ws_closure);
            sigma.insert(rw.translate.shape);
            inst.witnesses.push_back(std::move(rw));
        }
        report.max_witness_count =
            std::max(report.max_witness_count, static_cast<long>(inst.witnesses.size()));
        report.instances.push_back(std::move(inst));
    }
    report.sigma.assign(sigma.begin(), sigma.end());
    return report;
}

EnumerationReport uniform_family_report(const ModularData& data, const ParametricFamily& family,
                                        const ModularWeaklySpecial& s, const ModularGamma& gamma,
                                        const SearchBounds& bounds,
                                        const std::vector<std::vector<Rational>>& sample) {
    check_search_bounds(bounds);
    if (family.ambient_dim != s.ambient())
        throw precondition_error("family and ambient dimensions disagree");
    EnumerationReport report;
    report.setting = "modular";
    report.bounds = bounds;
    std::set<std::string> sigma;
    for (const auto& t : sample) {
        PolynomialIdeal vt = specialize(family, t);
        ReportInstance inst;
        inst.label = rational_label(t);
        for (const auto& w : maximal_gamma_atypical(data, vt, s, gamma, bounds)) {
            ReportWitness rw;
            rw.component = render_ideal(w.component);
            rw.dim = w.dim_x;
            rw.defect = w.defect;
            rw.gamma_defect = w.gamma_defect.value_or(w.defect);
            rw.translate = modular_translate_datum(w.ws_closure);
            sigma.insert(rw.translate.shape);
            inst.witnesses.push_back(std::move(rw));
        }
        report.max_witness_count =
            std::max(report.max_witness_count, static_cast<long>(inst.witnesses.size()));
        report.instances.push_back(std::move(inst));
    }
    report.sigma.assign(sigma.begin(), sigma.end());
    return report;
}

std::vector<OptimalCandidate> optimal_enumeration(const PolynomialIdeal& v,
                                                  const FiniteRankGroup& gamma,
                                                  const SearchBounds& bounds) {
    check_search_bounds(bounds);
    const int n = v.ambient_dim();
    if (n != gamma.ambient_dim) throw precondition_error("ambient dimension mismatch");
    if (!v.torus_mode()) throw precondition_error("the torus scan needs a torus-mode ideal");
    if (v.is_unit()) return {};
    std::vector<PolynomialIdeal> candidates{v};
    auto anchors = bounded_word_points(gamma, bounds);
    for (const auto& l : enumerate_torus_subgroups(n, bounds)) {
        if (l.rank() == 0) continue;
        std::set<std::string> seen;
        for (const auto& g : anchors) {
            TorusCoset t = coset_through_point(l, g);
            if (!rational_constants(t)) continue;
            if (!seen.insert(coset_to_string(t)).second) continue;
            PolynomialIdeal inter = v.with_extra(coset_ideal(t).generators());
            if (inter.is_unit()) continue;
            for (auto& comp : extract_components(inter)) candidates.push_back(std::move(comp));
        }
    }
    std::vector<OptimalCandidate> entries;
    std::set<std::string> seen_keys;
    for (const auto& x : candidates) {
        if (!seen_keys.insert(ideal_key(x)).second) continue;
        bool duplicate = false;
        for (const auto& e : entries)
            if (e.component.same_locus_ideal(x)) {
                duplicate = true;
                break;
            }
        if (duplicate) continue;
        std::optional<TorusCoset> closure;
        try {
            closure = weakly_special_closure(x);
        } catch (const precondition_error&) {
            continue;
        }
        TorusCoset ws = *closure;
        bool flag = is_gamma_special(ws, gamma);
        TorusCoset gamma_closure = flag ? ws : bounded_gamma_closure(x, gamma, bounds);
        TorusCoset special = special_closure(x);
        OptimalCandidate entry;
        entry.component = x;
        entry.dim = x.dimension();
        entry.defect = special.dimension() - entry.dim;
        entry.gamma_defect = gamma_closure.dimension() - entry.dim;
        entry.ws_closure_gamma_special = flag;
        entries.push_back(std::move(entry));
    }
    std::vector<OptimalCandidate> out;
    for (const auto& e : entries) {
        bool dominated = false;
        for (const auto& other : entries) {
            if (&other == &e) continue;
            if (e.component.contains_ideal_of(other.component) &&
                !e.component.same_locus_ideal(other.component) &&
                other.gamma_defect <= e.gamma_defect) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const OptimalCandidate& a, const OptimalCandidate& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return ideal_key(a.component) < ideal_key(b.component);
    });
    return out;
}

std::vector<OptimalCandidate> optimal_enumeration(const ModularData& data,
                                                  const PolynomialIdeal& v,
                                                  const ModularGamma& gamma,
                                                  const SearchBounds& bounds) {
    check_search_bounds(bounds);
    const int n = v.ambient_dim();
    if (v.torus_mode()) throw precondition_error("the modular scan needs an affine ideal");
    if (v.is_unit()) return {};
    ModularGamma g = effective_gamma(gamma, bounds);
    // The candidate family is the special one: shapes plus fibers at special
    // values, independent of gamma; gamma only enters through the defects.
    ModularGamma special_values{{}, true, bounds.hecke_bound, bounds.disc_bound};
    std::vector<ExactValue> pool = gamma_value_pool(data, special_values);
    ModularWeaklySpecial full = ModularWeaklySpecial::full(n);
    std::vector<ModularWeaklySpecial> translates;
    for (const auto& shape : enumerate_modular_shapes(n, bounds))
        if (!(shape == full)) translates.push_back(shape);
    std::vector<int> all_coords(n);
    std::iota(all_coords.begin(), all_coords.end(), 0);
    for (const auto& coords : index_subsets(all_coords, kMaxFiberCoords)) {
        if (pool.empty()) break;
        std::vector<std::size_t> idx(coords.size(), 0);
        std::vector<ExactValue> tuple(coords.size());
        while (true) {
            for (std::size_t j = 0; j < coords.size(); ++j) tuple[j] = pool[idx[j]];
            for (const auto& t :
                 fold_fiber_translates(data, full, coords, tuple, bounds.disc_bound))
                translates.push_back(t);
            std::size_t pos = 0;
            while (pos < idx.size() && idx[pos] + 1 == pool.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
            idx[pos] += 1;
        }
    }
    translates = sorted_unique_ws(std::move(translates));
    std::vector<PolynomialIdeal> candidates{v};
    for (const auto& t : translates) {
        PolynomialIdeal inter = v.with_extra(modular_ideal(t, data).generators());
        if (inter.is_unit()) continue;
        for (auto& comp : extract_components(inter)) candidates.push_back(std::move(comp));
    }
    std::vector<OptimalCandidate> entries;
    std::set<std::string> seen_keys;
    for (const auto& x : candidates) {
        if (!seen_keys.insert(ideal_key(x)).second) continue;
        bool duplicate = false;
        for (const auto& e : entries)
            if (e.component.same_locus_ideal(x)) {
                duplicate = true;
                break;
            }
        if (duplicate) continue;
        std::optional<OptimalCandidate> entry;
        try {
            ModularWeaklySpecial ws = weakly_special_closure_modular(x, data);
            bool flag = is_gamma_special_modular(ws, g, data);
            ModularWeaklySpecial gamma_closure = flag ? ws : gamma_special_closure(x, g, data);
            ModularWeaklySpecial special = gamma_special_closure(x, special_values, data);
            entry.emplace();
            entry->component = x;
            entry->dim = x.dimension();
            entry->defect = special.dimension() - entry->dim;
            entry->gamma_defect = gamma_closure.dimension() - entry->dim;
            entry->ws_closure_gamma_special = flag;
        } catch (const precondition_error&) {
            continue;  // conjugate-valued bundle without a rational closure
        }
        entries.push_back(std::move(*entry));
    }
    std::vector<OptimalCandidate> out;
    for (const auto& e : entries) {
        bool dominated = false;
        for (const auto& other : entries) {
            if (&other == &e) continue;
            if (e.component.contains_ideal_of(other.component) &&
                !e.component.same_locus_ideal(other.component) &&
                other.gamma_defect <= e.gamma_defect) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const OptimalCandidate& a, const OptimalCandidate& b) {
        if (a.dim != b.dim) return a.dim > b.dim;
        return ideal_key(a.component) < ideal_key(b.component);
    });
    return out;
}

std::vector<AtypicalWitness> brute_force_oracle(const PolynomialIdeal& v, const TorusCoset& s,
                                                const FiniteRankGroup& gamma,
                                                const SearchBounds& bounds) {
    check_torus_instance(v, s, gamma, bounds);
    if (s.ambient_dim > 3)
        throw precondition_error("the oracle is restricted to ambient dimension at most 3");
    const long radix = 2 * bounds.gamma_word_bound + 1;
    if (checked_power(radix, static_cast<long>(effective_generators(gamma).size()), 20000) >
        20000)
        throw precondition_error("the oracle word universe is beyond its hard limit");
    if (v.is_unit()) return {};
    TranslationResult tr = translate_to_subgroup(s, v, gamma);
    auto pool = enumerate_torus_subgroups(s.ambient_dim, bounds);
    auto words = bounded_word_points(gamma, bounds);
    std::vector<PolynomialIdeal> raw;
    collect_torus_oracle(tr.translated, tr.subgroup, pool, words, 0, s.dimension(), raw);
    return finalize_torus_list(back_translate(raw, tr.base), v, s, gamma);
}

std::vector<ModularAtypicalWitness> brute_force_oracle(const ModularData& data,
                                                       const PolynomialIdeal& v,
                                                       const ModularWeaklySpecial& s,
                                                       const ModularGamma& gamma,
                                                       const SearchBounds& bounds) {
    ModularGamma g = effective_gamma(gamma, bounds);
    check_modular_instance(data, v, s, g, bounds);
    if (s.ambient() > 3)
        throw precondition_error("the oracle is restricted to ambient dimension at most 3");
    std::vector<ExactValue> pool = gamma_value_pool(data, g);
    if (pool.size() > 64)
        throw precondition_error("the oracle value pool is beyond its hard limit");
    if (v.is_unit()) return {};
    auto shapes = enumerate_modular_shapes(s.ambient(), bounds);
    std::vector<PolynomialIdeal> raw;
    collect_modular_oracle(data, v, s, shapes, pool, g, bounds, 0, s.dimension(), raw);
    return finalize_modular_list(raw, data, v, s, g);
}

}  // namespace atyp
