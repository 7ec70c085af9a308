#include "atyp/ideal.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <tuple>

#include "atyp/error.hpp"

namespace atyp {
namespace {

constexpr long kReductionStepLimit = 1L << 21;

bool exponent_divides(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exponent exponent_lcm(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

long exponent_degree(const Exponent& e) {
    long d = 0;
    for (long v : e) d += v;
    return d;
}

void check_polynomial(const Poly& p) {
    if (p.has_negative_exponent())
        throw internal_error("Groebner engine received a Laurent polynomial");
}

struct Reducer {
    const Poly* p;
    Exponent lt;
    Rational lc;
};

std::vector<Reducer> make_reducers(const std::vector<Poly>& basis, const TermOrder& ord) {
    std::vector<Reducer> reducers;
    reducers.reserve(basis.size());
    for (const Poly& g : basis) {
        if (g.is_zero()) continue;
        check_polynomial(g);
        reducers.push_back({&g, *g.leading_exponent(ord), g.leading_coefficient(ord)});
    }
    return reducers;
}

Poly reduce_against(const Poly& f, const std::vector<Reducer>& reducers, const TermOrder& ord) {
    Poly p = f;
    Poly remainder = Poly::zero(f.vars());
    long steps = 0;
    while (!p.is_zero()) {
        if (++steps > kReductionStepLimit)
            throw budget_error("computation budget exhausted: polynomial reduction step limit");
        Exponent e = *p.leading_exponent(ord);
        Rational c = p.leading_coefficient(ord);
        bool reduced = false;
        for (const Reducer& r : reducers) {
            if (!exponent_divides(r.lt, e)) continue;
            Exponent q(e.size());
            for (std::size_t i = 0; i < e.size(); ++i) q[i] = e[i] - r.lt[i];
            p = p - Poly::monomial(p.vars(), q, c / r.lc) * (*r.p);
            reduced = true;
            break;
        }
        if (!reduced) {
            Poly t = Poly::monomial(p.vars(), e, c);
            remainder = remainder + t;
            p = p - t;
        }
    }
    return remainder;
}

struct BasisEntry {
    Poly p;
    Exponent lt;
    Rational lc;
    long sugar = 0;
};

std::vector<Poly> interreduce(std::vector<Poly> polys, const TermOrder& ord) {
    // Drop elements whose leading term another element's leading term divides,
    // then put every survivor in normal form with respect to the others.
    std::vector<Exponent> lts;
    lts.reserve(polys.size());
    for (const Poly& p : polys) lts.push_back(*p.leading_exponent(ord));
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < polys.size() && !dominated; ++j) {
            if (j == i) continue;
            if (!exponent_divides(lts[j], lts[i])) continue;
            if (lts[j] != lts[i] || j < i) dominated = true;
        }
        if (!dominated) minimal.push_back(polys[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        others.reserve(minimal.size() - 1);
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = normal_form(minimal[i], others, ord).primitive_normalized(ord);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return ord.compare(*a.leading_exponent(ord), *b.leading_exponent(ord)) > 0;
    });
    return minimal;
}

}  // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& basis, const TermOrder& ord) {
    check_polynomial(f);
    return reduce_against(f, make_reducers(basis, ord), ord);
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens, const TermOrder& ord,
                                 const GroebnerBudget& budget) {
    int n = -1;
    std::vector<BasisEntry> basis;
    for (const Poly& g : gens) {
        if (g.is_zero()) continue;
        check_polynomial(g);
        if (n < 0) n = g.vars();
        if (g.vars() != n) throw internal_error("mixed ambient dimensions in Groebner input");
        if (g.max_total_degree() > budget.max_total_degree)
            throw budget_error("computation budget exhausted: generator degree exceeds limit");
        Poly q = g.primitive_normalized(ord);
        basis.push_back({q, *q.leading_exponent(ord), q.leading_coefficient(ord),
                         q.max_total_degree()});
    }
    if (basis.empty()) return {};

    // Pending S-pairs keyed by (sugar, lcm degree, j, i); processed smallest first.
    std::set<std::tuple<long, long, int, int>> queue;
    std::set<std::pair<int, int>> pending;
    auto push_pairs_with = [&](int j) {
        for (int i = 0; i < j; ++i) {
            Exponent l = exponent_lcm(basis[i].lt, basis[j].lt);
            long dl = exponent_degree(l);
            long sugar = std::max(basis[i].sugar - exponent_degree(basis[i].lt),
                                  basis[j].sugar - exponent_degree(basis[j].lt)) +
                         dl;
            queue.insert({sugar, dl, j, i});
            pending.insert({i, j});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_with(static_cast<int>(j));

    while (!queue.empty()) {
        auto [sugar, dl, j, i] = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({i, j});
        const Exponent l = exponent_lcm(basis[i].lt, basis[j].lt);

        bool coprime = true;
        for (std::size_t v = 0; v < l.size(); ++v)
            if (basis[i].lt[v] > 0 && basis[j].lt[v] > 0) {
                coprime = false;
                break;
            }
        if (coprime) continue;

        bool chained = false;
        for (int k = 0; k < static_cast<int>(basis.size()) && !chained; ++k) {
            if (k == i || k == j) continue;
            if (!exponent_divides(basis[k].lt, l)) continue;
            std::pair<int, int> a{std::min(i, k), std::max(i, k)};
            std::pair<int, int> b{std::min(j, k), std::max(j, k)};
            if (pending.count(a) == 0 && pending.count(b) == 0) chained = true;
        }
        if (chained) continue;

        Exponent qi(l.size()), qj(l.size());
        for (std::size_t v = 0; v < l.size(); ++v) {
            qi[v] = l[v] - basis[i].lt[v];
            qj[v] = l[v] - basis[j].lt[v];
        }
        Poly s = Poly::monomial(n, qi, Rational(1) / basis[i].lc) * basis[i].p -
                 Poly::monomial(n, qj, Rational(1) / basis[j].lc) * basis[j].p;
        std::vector<Reducer> reducers;
        reducers.reserve(basis.size());
        for (const BasisEntry& e : basis) reducers.push_back({&e.p, e.lt, e.lc});
        Poly r = reduce_against(s, reducers, ord);
        if (r.is_zero()) continue;
        if (r.max_total_degree() > budget.max_total_degree)
            throw budget_error("computation budget exhausted: basis degree limit exceeded");
        Poly q = r.primitive_normalized(ord);
        basis.push_back({q, *q.leading_exponent(ord), q.leading_coefficient(ord), sugar});
        if (static_cast<long>(basis.size()) > budget.max_basis_size)
            throw budget_error("computation budget exhausted: basis size limit exceeded");
        push_pairs_with(static_cast<int>(basis.size()) - 1);
    }

    std::vector<Poly> result;
    result.reserve(basis.size());
    for (BasisEntry& e : basis) result.push_back(std::move(e.p));
    return interreduce(std::move(result), ord);
}

PolynomialIdeal::PolynomialIdeal(int ambient_dim, std::vector<Poly> generators, bool torus_mode,
                                 GroebnerBudget budget)
    : n_(ambient_dim), torus_(torus_mode), budget_(budget) {
    if (ambient_dim < 0) throw precondition_error("ambient dimension must be nonnegative");
    for (Poly& g : generators) {
        if (g.is_zero()) continue;
        if (g.vars() != n_)
            throw precondition_error("ideal generator has the wrong number of variables");
        if (torus_) {
            gens_.push_back(g.cleared());
        } else {
            if (g.has_negative_exponent())
                throw precondition_error("negative exponents are only allowed in torus mode");
            gens_.push_back(std::move(g));
        }
    }
}

const std::vector<Poly>& PolynomialIdeal::effective_generators() const {
    if (!torus_) return gens_;
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        if (cache_->effective) return *cache_->effective;
    }
    std::vector<Poly> sat;
    if (!gens_.empty()) {
        Poly prod = Poly::constant(n_, 1);
        for (int i = 0; i < n_; ++i) prod = prod * Poly::variable(n_, i);
        sat = saturate_generators(gens_, prod, n_, budget_);
    }
    std::lock_guard<std::mutex> lk(cache_->mu);
    if (!cache_->effective) cache_->effective = std::move(sat);
    return *cache_->effective;
}

const std::vector<Poly>& PolynomialIdeal::groebner(const TermOrder& ord) const {
    const std::string key = ord.cache_key();
    {
        std::lock_guard<std::mutex> lk(cache_->mu);
        auto it = cache_->bases.find(key);
        if (it != cache_->bases.end()) return it->second;
    }
    std::vector<Poly> gb = groebner_basis(effective_generators(), ord, budget_);
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto [it, inserted] = cache_->bases.emplace(key, std::move(gb));
    return it->second;
}

bool PolynomialIdeal::is_unit() const {
    const auto& gb = groebner(TermOrder::grlex(n_));
    for (const Poly& g : gb)
        if (exponent_degree(*g.leading_exponent(TermOrder::grlex(n_))) == 0) return true;
    return false;
}

int PolynomialIdeal::dimension() const {
    if (is_unit()) return -1;
    TermOrder ord = TermOrder::grlex(n_);
    const auto& gb = groebner(ord);
    std::vector<Exponent> lts;
    lts.reserve(gb.size());
    for (const Poly& g : gb) lts.push_back(*g.leading_exponent(ord));
    return staircase_dimension(lts, n_);
}

Poly PolynomialIdeal::reduce(const Poly& f) const {
    if (f.vars() != n_)
        throw precondition_error("polynomial has the wrong number of variables");
    Poly g = f;
    if (g.has_negative_exponent()) {
        if (!torus_)
            throw precondition_error("negative exponents are only allowed in torus mode");
        g = g.cleared();
    }
    return normal_form(g, groebner(TermOrder::grlex(n_)), TermOrder::grlex(n_));
}

bool PolynomialIdeal::contains_poly(const Poly& f) const { return reduce(f).is_zero(); }

bool PolynomialIdeal::contains_ideal_of(const PolynomialIdeal& other) const {
    if (other.ambient_dim() != n_)
        throw precondition_error("ideal comparison needs matching ambient dimensions");
    for (const Poly& g : other.effective_generators())
        if (!contains_poly(g)) return false;
    return true;
}

bool PolynomialIdeal::same_locus_ideal(const PolynomialIdeal& other) const {
    return contains_ideal_of(other) && other.contains_ideal_of(*this);
}

PolynomialIdeal PolynomialIdeal::with_extra(std::vector<Poly> more) const {
    std::vector<Poly> gens = gens_;
    for (Poly& g : more) gens.push_back(std::move(g));
    return PolynomialIdeal(n_, std::move(gens), torus_, budget_);
}

PolynomialIdeal eliminate(const PolynomialIdeal& ideal, const std::vector<int>& keep) {
    const int n = ideal.ambient_dim();
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= n) throw precondition_error("kept variable out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw precondition_error("kept variables must be strictly increasing");
    }
    if (static_cast<int>(keep.size()) == n) {
        return PolynomialIdeal(n, ideal.generators(), ideal.torus_mode(), ideal.budget());
    }
    std::vector<int> image(n, -1);
    for (std::size_t j = 0; j < keep.size(); ++j) image[keep[j]] = static_cast<int>(j);
    std::vector<int> eliminated;
    for (int i = 0; i < n; ++i)
        if (image[i] < 0) eliminated.push_back(i);
    TermOrder ord = TermOrder::elimination(n, eliminated);
    const auto& gb = ideal.groebner(ord);
    std::vector<Poly> kept;
    for (const Poly& g : gb) {
        bool ok = true;
        for (int v : g.support_vars())
            if (image[v] < 0) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(g.reindex(static_cast<int>(keep.size()), image));
    }
    return PolynomialIdeal(static_cast<int>(keep.size()), std::move(kept), ideal.torus_mode(),
                           ideal.budget());
}

std::vector<Poly> saturate_generators(const std::vector<Poly>& gens, const Poly& f, int n,
                                      const GroebnerBudget& budget) {
    if (f.vars() != n) throw precondition_error("saturation element has wrong arity");
    check_polynomial(f);
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Poly> lifted;
    lifted.reserve(gens.size() + 1);
    for (const Poly& g : gens) {
        check_polynomial(g);
        lifted.push_back(g.reindex(n + 1, id));
    }
    lifted.push_back(Poly::variable(n + 1, n) * f.reindex(n + 1, id) - Poly::constant(n + 1, 1));
    TermOrder ord = TermOrder::elimination(n + 1, {n});
    std::vector<Poly> gb = groebner_basis(lifted, ord, budget);
    std::vector<int> image(n + 1, -1);
    for (int i = 0; i < n; ++i) image[i] = i;
    std::vector<Poly> result;
    for (const Poly& g : gb) {
        if (g.depends_on(n)) continue;
        result.push_back(g.reindex(n, image));
    }
    return result;
}

std::optional<Rational> monomial_constant_on(const PolynomialIdeal& ideal, const Exponent& m) {
    const int n = ideal.ambient_dim();
    if (static_cast<int>(m.size()) != n)
        throw precondition_error("monomial exponent has the wrong number of variables");
    bool has_negative = false;
    for (long v : m)
        if (v < 0) has_negative = true;
    if (has_negative && !ideal.torus_mode())
        throw precondition_error("negative exponents are only allowed in torus mode");
    if (ideal.is_unit())
        throw precondition_error("monomial constancy is undefined on an empty locus");

    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Poly> gens;
    for (const Poly& g : ideal.effective_generators()) gens.push_back(g.reindex(n + 1, id));
    Exponent up(n + 1, 0), um(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        if (m[i] > 0)
            up[i] = m[i];
        else
            um[i] = -m[i];
    }
    um[n] = 1;
    gens.push_back(Poly::monomial(n + 1, um, 1) - Poly::monomial(n + 1, up, 1));
    if (ideal.torus_mode()) {
        Poly prod = Poly::constant(n + 1, 1);
        for (int i = 0; i < n; ++i) prod = prod * Poly::variable(n + 1, i);
        gens = saturate_generators(gens, prod, n + 1, ideal.budget());
    }
    std::vector<int> eliminated(n);
    std::iota(eliminated.begin(), eliminated.end(), 0);
    TermOrder ord = TermOrder::elimination(n + 1, eliminated);
    std::vector<Poly> gb = groebner_basis(gens, ord, ideal.budget());

    std::optional<Poly> eliminant;
    for (const Poly& g : gb) {
        auto support = g.support_vars();
        if (support.size() > 1) continue;
        if (support.size() == 1 && support[0] != n) continue;
        if (!eliminant || g.max_total_degree() < eliminant->max_total_degree()) eliminant = g;
    }
    if (!eliminant) return std::nullopt;
    long deg = 0;
    Rational a = 0, b = 0;
    for (const auto& [e, c] : eliminant->terms()) {
        deg = std::max(deg, e[n]);
        if (e[n] == 1) a = c;
        if (e[n] == 0) b = c;
    }
    if (deg == 0) throw internal_error("constant eliminant on a nonempty locus");
    if (deg > 1) return std::nullopt;
    Rational value = -b / a;
    if (ideal.torus_mode() && value == 0)
        throw internal_error("monomial evaluates to zero on a torus locus");
    return value;
}

int staircase_dimension(const std::vector<Exponent>& leading, int n) {
    if (n > 22)
        throw budget_error("computation budget exhausted: ambient dimension too large");
    std::vector<unsigned> supports;
    supports.reserve(leading.size());
    for (const Exponent& e : leading) {
        unsigned mask = 0;
        for (int i = 0; i < n; ++i)
            if (e[i] > 0) mask |= 1u << i;
        if (mask == 0) return -1;
        supports.push_back(mask);
    }
    int best = 0;
    const unsigned limit = 1u << n;
    for (unsigned mask = 0; mask < limit; ++mask) {
        bool independent = true;
        for (unsigned s : supports)
            if ((s & ~mask) == 0) {
                independent = false;
                break;
            }
        if (independent) best = std::max(best, std::popcount(mask));
    }
    return best;
}

}  // namespace atyp
