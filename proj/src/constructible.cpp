#include "atyp/constructible.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "atyp/error.hpp"

namespace atyp {
namespace {

long exponent_to_long(const Int& v) {
    if (!v.fits_slong_p()) throw precondition_error("projection exponent out of range");
    return v.get_si();
}

}  // namespace

void ConstructibleSet::add_piece(ConstructiblePiece piece) {
    if (piece.closed.ambient_dim() != n_ || piece.excluded.ambient_dim() != n_)
        throw precondition_error("constructible piece has the wrong ambient dimension");
    if (piece.closed.is_unit())
        throw precondition_error("constructible piece with empty closed part");
    pieces_.push_back(std::move(piece));
}

int piece_dimension(const ConstructiblePiece& piece) {
    const int n = piece.closed.ambient_dim();
    int best = -1;
    for (const Poly& g : piece.excluded.effective_generators()) {
        if (g.is_zero()) continue;
        std::vector<Poly> rest;
        if (g.is_constant()) {
            rest = piece.closed.effective_generators();
        } else {
            rest = saturate_generators(piece.closed.effective_generators(), g, n,
                                       piece.closed.budget());
        }
        PolynomialIdeal remainder(n, std::move(rest), piece.closed.torus_mode(),
                                  piece.closed.budget());
        best = std::max(best, remainder.dimension());
    }
    return best;
}

bool ConstructibleSet::is_empty() const { return dimension() < 0; }

int ConstructibleSet::dimension() const {
    int best = -1;
    for (const ConstructiblePiece& p : pieces_) best = std::max(best, piece_dimension(p));
    return best;
}

bool ConstructibleSet::contains(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_)
        throw precondition_error("membership point has the wrong dimension");
    for (const ConstructiblePiece& p : pieces_) {
        if (p.closed.torus_mode() &&
            std::any_of(point.begin(), point.end(), [](const Rational& c) { return c == 0; }))
            continue;
        bool on_closed = true;
        for (const Poly& g : p.closed.effective_generators())
            if (g.evaluate(point) != 0) {
                on_closed = false;
                break;
            }
        if (!on_closed) continue;
        for (const Poly& g : p.excluded.effective_generators())
            if (g.evaluate(point) != 0) return true;
    }
    return false;
}

namespace {

struct GraphContext {
    int n = 0;       // source variables
    int k = 0;       // base variables
    bool torus = false;
    int xvars = 0;   // n, or 2n with adjoined inverses in torus mode
    int total = 0;   // xvars + k
    TermOrder block; // x-block dominant
    GroebnerBudget budget;
};

std::vector<Poly> build_graph(const PolynomialIdeal& variety, const IntegerMatrix& proj,
                              GraphContext& ctx) {
    ctx.n = variety.ambient_dim();
    ctx.k = proj.rows();
    if (proj.cols() != ctx.n) throw precondition_error("projection arity mismatch");
    ctx.torus = variety.torus_mode();
    ctx.xvars = ctx.torus ? 2 * ctx.n : ctx.n;
    ctx.total = ctx.xvars + ctx.k;
    ctx.budget = variety.budget();
    std::vector<int> elim(ctx.xvars);
    std::iota(elim.begin(), elim.end(), 0);
    ctx.block = TermOrder::elimination(ctx.total, elim);

    std::vector<int> id(ctx.n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Poly> gens;
    for (const Poly& g : variety.effective_generators()) gens.push_back(g.reindex(ctx.total, id));
    if (ctx.torus) {
        for (int i = 0; i < ctx.n; ++i)
            gens.push_back(Poly::variable(ctx.total, i) * Poly::variable(ctx.total, ctx.n + i) -
                           Poly::constant(ctx.total, 1));
    }
    for (int j = 0; j < ctx.k; ++j) {
        Exponent neg(ctx.total, 0), pos(ctx.total, 0);
        for (int i = 0; i < ctx.n; ++i) {
            long e = exponent_to_long(proj.at(j, i));
            if (e > 0) pos[i] = e;
            if (e < 0) {
                if (!ctx.torus)
                    throw precondition_error("negative projection exponents need torus mode");
                neg[i] = -e;
            }
        }
        neg[ctx.xvars + j] = 1;
        gens.push_back(Poly::monomial(ctx.total, neg, 1) - Poly::monomial(ctx.total, pos, 1));
    }
    return gens;
}

struct RawStratum {
    std::vector<Poly> base;  // k-variable closed constraints
    Poly excluded;           // k-variable product of leading coefficients
    int fiber_dim = 0;
};

constexpr int kStratificationNodeLimit = 512;

void analyze(const GraphContext& ctx, const std::vector<Poly>& gens, int& nodes,
             std::vector<RawStratum>& out) {
    if (++nodes > kStratificationNodeLimit)
        throw budget_error("computation budget exhausted: fiber stratification node limit");
    std::vector<Poly> gb = groebner_basis(gens, ctx.block, ctx.budget);
    for (const Poly& g : gb)
        if (!g.is_zero() && g.is_constant()) return;  // empty total space

    std::vector<int> to_base(ctx.total, -1);
    for (int j = 0; j < ctx.k; ++j) to_base[ctx.xvars + j] = j;

    std::vector<Poly> base;
    std::vector<Exponent> xleads;
    std::vector<Poly> lcs;
    for (const Poly& g : gb) {
        const Exponent& le = *g.leading_exponent(ctx.block);
        Exponent xpart(ctx.xvars, 0);
        bool active = false;
        for (int i = 0; i < ctx.xvars; ++i) {
            xpart[i] = le[i];
            if (le[i] > 0) active = true;
        }
        if (!active) {
            // the x-block dominates the order, so a trivial leading x-part
            // means the whole element lives in the base variables
            base.push_back(g.reindex(ctx.k, to_base));
            continue;
        }
        xleads.push_back(xpart);
        Poly lc(ctx.k);
        for (const auto& [e, c] : g.terms()) {
            bool match = true;
            for (int i = 0; i < ctx.xvars; ++i)
                if (e[i] != xpart[i]) {
                    match = false;
                    break;
                }
            if (!match) continue;
            Exponent ue(ctx.k, 0);
            for (int j = 0; j < ctx.k; ++j) ue[j] = e[ctx.xvars + j];
            lc.add_term(ue, c);
        }
        lcs.push_back(lc);
    }

    const int d = staircase_dimension(xleads, ctx.xvars);
    TermOrder kord = TermOrder::grlex(ctx.k);
    std::set<std::string> seen;
    std::vector<Poly> branches;
    Poly product = Poly::constant(ctx.k, 1);
    for (const Poly& lc : lcs) {
        Poly norm = lc.primitive_normalized(kord);
        if (norm.is_constant()) continue;
        if (!seen.insert(norm.to_string(kord)).second) continue;
        product = product * norm;
        branches.push_back(norm);
    }
    out.push_back({base, product, d});

    std::vector<int> lift(ctx.k);
    for (int j = 0; j < ctx.k; ++j) lift[j] = ctx.xvars + j;
    for (const Poly& c : branches) {
        std::vector<Poly> next = gb;
        next.push_back(c.reindex(ctx.total, lift));
        analyze(ctx, next, nodes, out);
    }
}

std::string stratum_key(const RawStratum& s, const TermOrder& kord) {
    std::string key = std::to_string(s.fiber_dim) + "|" + s.excluded.to_string(kord);
    for (const Poly& g : s.base) key += "|" + g.to_string(kord);
    return key;
}

}  // namespace

FiberJumpResult fiber_jump_locus(const PolynomialIdeal& variety, const IntegerMatrix& proj,
                                 int expected, bool assume_irreducible) {
    GraphContext ctx;
    std::vector<Poly> gens = build_graph(variety, proj, ctx);
    std::vector<RawStratum> raw;
    int nodes = 0;
    analyze(ctx, gens, nodes, raw);

    FiberJumpResult result;
    result.expected = expected;
    result.may_overapproximate = !assume_irreducible;
    result.locus = ConstructibleSet(ctx.k);

    TermOrder kord = TermOrder::grlex(ctx.k);
    std::set<std::string> seen;
    bool first = true;
    for (const RawStratum& s : raw) {
        const bool top = first;
        first = false;
        if (!seen.insert(stratum_key(s, kord)).second) continue;
        PolynomialIdeal closed(ctx.k, s.base, ctx.torus, ctx.budget);
        if (top) result.image_dim = closed.is_unit() ? -1 : closed.dimension();
        if (closed.is_unit()) continue;
        FiberStratum stratum{closed, s.excluded, s.fiber_dim};
        result.strata.push_back(stratum);
        if (s.fiber_dim > expected) {
            PolynomialIdeal excluded(ctx.k, {s.excluded}, ctx.torus, ctx.budget);
            result.locus.add_piece({closed, excluded});
        }
    }
    return result;
}

int fiber_dimension_at(const PolynomialIdeal& variety, const IntegerMatrix& proj,
                       const std::vector<Rational>& u0) {
    const int n = variety.ambient_dim();
    const int k = proj.rows();
    if (proj.cols() != n) throw precondition_error("projection arity mismatch");
    if (static_cast<int>(u0.size()) != k)
        throw precondition_error("base point has the wrong dimension");
    std::vector<Poly> gens = variety.generators();
    for (int j = 0; j < k; ++j) {
        Exponent neg(n, 0), pos(n, 0);
        for (int i = 0; i < n; ++i) {
            long e = exponent_to_long(proj.at(j, i));
            if (e > 0) pos[i] = e;
            if (e < 0) {
                if (!variety.torus_mode())
                    throw precondition_error("negative projection exponents need torus mode");
                neg[i] = -e;
            }
        }
        if (variety.torus_mode() && u0[j] == 0)
            throw precondition_error("torus base point with zero coordinate");
        gens.push_back(Poly::monomial(n, pos, 1) - Poly::monomial(n, neg, u0[j]));
    }
    PolynomialIdeal fiber(n, std::move(gens), variety.torus_mode(), variety.budget());
    return fiber.dimension();
}

}  // namespace atyp
