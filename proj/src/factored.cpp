// factored.cpp
#include "atyp/factored.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>

#include "atyp/error.hpp"

namespace atyp {

namespace {

// Trial division covers cofactors up to the square of this bound.
constexpr long kTrialLimit = 1000000;
constexpr long kMaxRootOrder = 1000000000;

void factor_into(std::map<Int, Int>& acc, Int v, const Int& scale) {
    if (v <= 0) throw internal_error("factor_into expects a positive integer");
    auto push = [&](const Int& p, const Int& e) {
        Int& slot = acc[p];
        slot += e;
        if (slot == 0) acc.erase(p);
    };
    for (long d = 2; d <= kTrialLimit && v > 1; d = (d == 2 ? 3 : d + 2)) {
        if (Int(d) * d > v) break;
        if (!mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) continue;
        Int e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(d))) {
            v /= d;
            e += 1;
        }
        push(Int(d), e * scale);
    }
    if (v > 1) {
        // No factor up to the trial limit, so a cofactor below its square is
        // prime. Anything larger is out of budget rather than silently wrong.
        if (v > Int(kTrialLimit) * kTrialLimit)
            throw budget_error("factorization budget exceeded for " + v.get_str());
        push(v, scale);
    }
}

// Angle e/o reduced to lowest terms with e in [0, o).
std::pair<long, long> reduce_angle(const Int& order, const Int& exponent) {
    if (order <= 0) throw precondition_error("root of unity order must be positive");
    Int e = exponent % order;
    if (e < 0) e += order;
    if (e == 0) return {1, 0};
    Int g = gcd(e, order);
    Int o2 = order / g;
    Int e2 = e / g;
    if (!o2.fits_slong_p()) throw budget_error("root of unity order too large");
    return {o2.get_si(), e2.get_si()};
}

Int parse_int_literal(const std::string& s) {
    if (s.empty()) throw parse_error("empty integer literal");
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw parse_error("malformed integer literal '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw parse_error("malformed integer literal '" + s + "'");
    return Int(s);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

FactoredValue parse_factor_token(const std::string& token) {
    if (token.empty()) throw parse_error("empty factor");
    if (token.rfind("zeta", 0) == 0) {
        std::size_t open = token.find('(');
        std::size_t close = token.find(')');
        if (open != 4 || close == std::string::npos || close < open)
            throw parse_error("malformed root of unity '" + token + "'");
        Int order = parse_int_literal(token.substr(open + 1, close - open - 1));
        if (order < 1 || order > kMaxRootOrder)
            throw parse_error("root of unity order out of range in '" + token + "'");
        Int exponent = 1;
        if (close + 1 < token.size()) {
            if (token[close + 1] != '^')
                throw parse_error("malformed root of unity '" + token + "'");
            exponent = parse_int_literal(token.substr(close + 2));
        }
        auto [o, e] = reduce_angle(order, exponent);
        return FactoredValue::root_of_unity(o, e);
    }
    std::size_t caret = token.find('^');
    if (caret == std::string::npos) {
        Rational q = rational_from_string(token);
        if (q == 0) throw parse_error("zero has no factored form");
        return FactoredValue::from_rational(q);
    }
    Rational base = rational_from_string(token.substr(0, caret));
    if (base == 0) throw parse_error("zero has no factored form");
    Int exponent = parse_int_literal(token.substr(caret + 1));
    return FactoredValue::from_rational(base).pow(exponent);
}

}  // namespace

FactoredValue FactoredValue::from_rational(const Rational& q) {
    if (q == 0) throw precondition_error("zero has no factored form");
    FactoredValue out;
    Int num = q.get_num();
    if (num < 0) {
        out = root_of_unity(2, 1);
        num = -num;
    }
    factor_into(out.primes_, num, 1);
    factor_into(out.primes_, q.get_den(), -1);
    return out;
}

FactoredValue FactoredValue::from_int(long v) { return from_rational(Rational(v)); }

FactoredValue FactoredValue::root_of_unity(long order, long exponent) {
    auto [o, e] = reduce_angle(Int(order), Int(exponent));
    FactoredValue out;
    out.root_order_ = o;
    out.root_exp_ = e;
    return out;
}

Rational FactoredValue::to_rational() const {
    if (!is_rational()) throw precondition_error("value is not rational: " + to_string());
    Int num = 1;
    Int den = 1;
    for (const auto& [p, e] : primes_) {
        Int ae = e < 0 ? Int(-e) : e;
        if (!ae.fits_ulong_p()) throw budget_error("exponent too large to expand");
        Int pw;
        mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), ae.get_ui());
        (e < 0 ? den : num) *= pw;
    }
    if (root_order_ == 2) num = -num;
    return make_rational(num, den);
}

FactoredValue FactoredValue::operator*(const FactoredValue& rhs) const {
    FactoredValue out = *this;
    for (const auto& [p, e] : rhs.primes_) {
        Int& slot = out.primes_[p];
        slot += e;
        if (slot == 0) out.primes_.erase(p);
    }
    Int lcm_order;
    mpz_lcm(lcm_order.get_mpz_t(), Int(root_order_).get_mpz_t(), Int(rhs.root_order_).get_mpz_t());
    Int angle = Int(root_exp_) * (lcm_order / root_order_) +
                Int(rhs.root_exp_) * (lcm_order / rhs.root_order_);
    auto [o, e] = reduce_angle(lcm_order, angle);
    out.root_order_ = o;
    out.root_exp_ = e;
    return out;
}

FactoredValue FactoredValue::inverse() const { return pow(-1); }

FactoredValue FactoredValue::pow(const Int& k) const {
    FactoredValue out;
    if (k == 0) return out;
    for (const auto& [p, e] : primes_) out.primes_[p] = e * k;
    auto [o, e] = reduce_angle(Int(root_order_), Int(root_exp_) * k);
    out.root_order_ = o;
    out.root_exp_ = e;
    return out;
}

bool FactoredValue::operator<(const FactoredValue& rhs) const {
    if (root_order_ != rhs.root_order_) return root_order_ < rhs.root_order_;
    if (root_exp_ != rhs.root_exp_) return root_exp_ < rhs.root_exp_;
    return primes_ < rhs.primes_;
}

std::string FactoredValue::to_string() const {
    std::string out;
    for (const auto& [p, e] : primes_) {
        if (!out.empty()) out += " * ";
        out += p.get_str() + "^" + e.get_str();
    }
    if (root_order_ > 1) {
        if (!out.empty()) out += " * ";
        out += "zeta(" + std::to_string(root_order_) + ")^" + std::to_string(root_exp_);
    }
    return out.empty() ? "1" : out;
}

FactoredValue parse_factored_value(const std::string& text) {
    FactoredValue out;
    std::size_t start = 0;
    bool saw_token = false;
    while (start <= text.size()) {
        std::size_t sep = text.find('*', start);
        std::string token = trim(sep == std::string::npos ? text.substr(start)
                                                          : text.substr(start, sep - start));
        if (token.empty()) throw parse_error("empty factor in '" + text + "'");
        out = out * parse_factor_token(token);
        saw_token = true;
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    if (!saw_token) throw parse_error("empty factored value");
    return out;
}

std::string point_to_string(const MultiplicativePoint& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += p[i].to_string();
    }
    return out + ")";
}

MultiplicativePoint parse_multiplicative_point(const std::string& text) {
    std::string body = trim(text);
    if (!body.empty() && body.front() == '(') {
        if (body.back() != ')') throw parse_error("unbalanced parentheses in point '" + text + "'");
        body = body.substr(1, body.size() - 2);
    }
    MultiplicativePoint out;
    std::size_t start = 0;
    while (true) {
        // zeta(...) arguments never contain commas, so a flat split is safe.
        std::size_t sep = body.find(',', start);
        std::string piece = sep == std::string::npos ? body.substr(start)
                                                     : body.substr(start, sep - start);
        out.push_back(parse_factored_value(trim(piece)));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    return out;
}

std::optional<std::vector<Rational>> point_to_rationals(const MultiplicativePoint& p) {
    std::vector<Rational> out;
    out.reserve(p.size());
    for (const FactoredValue& v : p) {
        if (!v.is_rational()) return std::nullopt;
        out.push_back(v.to_rational());
    }
    return out;
}

MultiplicativePoint point_from_rationals(const std::vector<Rational>& coords) {
    MultiplicativePoint out;
    out.reserve(coords.size());
    for (const Rational& c : coords) out.push_back(FactoredValue::from_rational(c));
    return out;
}

FactoredValue evaluate_monomial(const MultiplicativePoint& p, const std::vector<Int>& exponents) {
    if (p.size() != exponents.size())
        throw precondition_error("monomial arity does not match point arity");
    FactoredValue out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (exponents[i] == 0) continue;
        out = out * p[i].pow(exponents[i]);
    }
    return out;
}

MultiplicativePoint monomial_image(const IntegerMatrix& m, const MultiplicativePoint& p) {
    if (static_cast<int>(p.size()) != m.cols())
        throw precondition_error("matrix width does not match point arity");
    MultiplicativePoint out;
    out.reserve(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) out.push_back(evaluate_monomial(p, m.row(r)));
    return out;
}

MultiplicativePoint evaluate_word(const std::vector<MultiplicativePoint>& gens,
                                  const std::vector<Int>& word) {
    if (gens.empty()) throw precondition_error("word over an empty generator list");
    if (word.size() > gens.size()) throw precondition_error("word longer than generator list");
    MultiplicativePoint out(gens[0].size());
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i] == 0) continue;
        if (gens[i].size() != out.size()) throw precondition_error("generator arity mismatch");
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = out[j] * gens[i][j].pow(word[i]);
    }
    return out;
}

namespace {

Int exponent_of(const FactoredValue& v, const Int& p) {
    auto it = v.prime_exponents().find(p);
    return it == v.prime_exponents().end() ? Int(0) : it->second;
}

struct GroupSystem {
    std::vector<std::vector<Int>> rows;  // width gcount, prime balance equations
    std::vector<Int> rhs;
    // congruence rows: generator part, modulus, target
    std::vector<std::vector<Int>> trows;
    std::vector<Int> tmods;
    std::vector<Int> trhs;
    int gcount = 0;
};

// Prime-exponent balance plus (when asked) torsion congruences for the word
// equation "product of generator powers = p". Null p means the homogeneous
// system "word evaluates to the identity".
GroupSystem build_system(const MultiplicativePoint* p, std::size_t n,
                         const std::vector<MultiplicativePoint>& gens, bool with_torsion) {
    for (const MultiplicativePoint& g : gens)
        if (g.size() != n) throw precondition_error("generator arity mismatch");

    GroupSystem sys;
    sys.gcount = static_cast<int>(gens.size());

    std::set<Int> primes;
    if (p)
        for (const FactoredValue& v : *p)
            for (const auto& [q, e] : v.prime_exponents()) primes.insert(q);
    for (const MultiplicativePoint& g : gens)
        for (const FactoredValue& v : g)
            for (const auto& [q, e] : v.prime_exponents()) primes.insert(q);

    for (std::size_t j = 0; j < n; ++j) {
        for (const Int& q : primes) {
            std::vector<Int> row(gens.size());
            bool nontrivial = false;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                row[i] = exponent_of(gens[i][j], q);
                if (row[i] != 0) nontrivial = true;
            }
            Int target = p ? exponent_of((*p)[j], q) : Int(0);
            if (!nontrivial && target == 0) continue;
            sys.rows.push_back(std::move(row));
            sys.rhs.push_back(target);
        }
    }

    if (!with_torsion) return sys;
    for (std::size_t j = 0; j < n; ++j) {
        Int m = p ? Int((*p)[j].root_order()) : Int(1);
        for (const MultiplicativePoint& g : gens) {
            Int lc;
            mpz_lcm(lc.get_mpz_t(), m.get_mpz_t(), Int(g[j].root_order()).get_mpz_t());
            m = lc;
        }
        if (m == 1) continue;
        std::vector<Int> row(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const FactoredValue& v = gens[i][j];
            row[i] = (m / v.root_order()) * v.root_exponent();
        }
        sys.trows.push_back(std::move(row));
        sys.tmods.push_back(m);
        sys.trhs.push_back(p ? Int((m / (*p)[j].root_order()) * (*p)[j].root_exponent()) : Int(0));
    }
    return sys;
}

// Full integer matrix with one slack column per congruence row.
IntegerMatrix assemble(const GroupSystem& sys, std::vector<Int>* b) {
    const int extras = static_cast<int>(sys.trows.size());
    const int total_rows = static_cast<int>(sys.rows.size()) + extras;
    IntegerMatrix a(total_rows, sys.gcount + extras);
    if (b) b->assign(static_cast<std::size_t>(total_rows), Int(0));
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        for (int c = 0; c < sys.gcount; ++c) a.at(static_cast<int>(r), c) = sys.rows[r][static_cast<std::size_t>(c)];
        if (b) (*b)[r] = sys.rhs[r];
    }
    for (int t = 0; t < extras; ++t) {
        const int r = static_cast<int>(sys.rows.size()) + t;
        for (int c = 0; c < sys.gcount; ++c) a.at(r, c) = sys.trows[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
        a.at(r, sys.gcount + t) = sys.tmods[static_cast<std::size_t>(t)];
        if (b) (*b)[static_cast<std::size_t>(r)] = sys.trhs[static_cast<std::size_t>(t)];
    }
    return a;
}

}  // namespace

std::optional<std::vector<Rational>> membership_witness(
    const MultiplicativePoint& p, const std::vector<MultiplicativePoint>& generators,
    bool division_closed) {
    if (division_closed) {
        // Some positive power of p must hit the generator span; torsion parts
        // drop out because a further power kills them. Rational solvability of
        // the prime-exponent system is exactly that condition.
        GroupSystem sys = build_system(&p, p.size(), generators, false);
        if (sys.rows.empty()) return std::vector<Rational>(generators.size(), Rational(0));
        if (sys.gcount == 0) return std::nullopt;  // nonzero targets, nothing to combine
        IntegerMatrix a(static_cast<int>(sys.rows.size()), sys.gcount);
        std::vector<Rational> b(sys.rows.size());
        for (std::size_t r = 0; r < sys.rows.size(); ++r) {
            for (int c = 0; c < sys.gcount; ++c) a.at(static_cast<int>(r), c) = sys.rows[r][static_cast<std::size_t>(c)];
            b[r] = Rational(sys.rhs[r]);
        }
        return solve_rational(a, b);
    }

    GroupSystem sys = build_system(&p, p.size(), generators, true);
    const int extras = static_cast<int>(sys.trows.size());
    if (sys.gcount + extras == 0) {
        for (const Int& v : sys.rhs)
            if (v != 0) return std::nullopt;
        return std::vector<Rational>{};
    }
    std::vector<Int> b;
    IntegerMatrix a = assemble(sys, &b);
    if (a.rows() == 0) return std::vector<Rational>(generators.size(), Rational(0));
    auto sol = solve_integer(a, b);
    if (!sol) return std::nullopt;
    std::vector<Rational> word(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) word[i] = Rational((*sol)[i]);
    return word;
}

bool multiplicative_membership(const MultiplicativePoint& p,
                               const std::vector<MultiplicativePoint>& generators,
                               bool division_closed) {
    return membership_witness(p, generators, division_closed).has_value();
}

std::vector<std::vector<Int>> kernel_words(const std::vector<MultiplicativePoint>& generators,
                                           bool division_closed) {
    if (generators.empty()) return {};
    const std::size_t n = generators[0].size();
    GroupSystem sys = build_system(nullptr, n, generators, !division_closed);
    std::vector<std::vector<Int>> words;
    const int g = sys.gcount;
    if (sys.rows.empty() && sys.trows.empty()) {
        for (int i = 0; i < g; ++i) {
            std::vector<Int> w(static_cast<std::size_t>(g));
            w[static_cast<std::size_t>(i)] = 1;
            words.push_back(std::move(w));
        }
        return words;
    }
    IntegerMatrix a = assemble(sys, nullptr);
    IntegerMatrix k = right_kernel(a);
    for (int r = 0; r < k.rows(); ++r) {
        std::vector<Int> w(static_cast<std::size_t>(g));
        bool nonzero = false;
        for (int c = 0; c < g; ++c) {
            w[static_cast<std::size_t>(c)] = k.at(r, c);
            if (w[static_cast<std::size_t>(c)] != 0) nonzero = true;
        }
        if (nonzero) words.push_back(std::move(w));
    }
    return words;
}

std::vector<MultiplicativePoint> effective_generators(const FiniteRankGroup& g) {
    if (g.torsion_order_cap < 1) throw precondition_error("torsion order cap must be positive");
    std::vector<MultiplicativePoint> out = g.generators;
    for (const MultiplicativePoint& gen : out)
        if (static_cast<int>(gen.size()) != g.ambient_dim)
            throw precondition_error("generator arity mismatch");
    if (g.torsion_order_cap > 1) {
        for (int j = 0; j < g.ambient_dim; ++j) {
            MultiplicativePoint zeta(static_cast<std::size_t>(g.ambient_dim));
            zeta[static_cast<std::size_t>(j)] = FactoredValue::root_of_unity(g.torsion_order_cap, 1);
            out.push_back(std::move(zeta));
        }
    }
    return out;
}

bool group_contains(const FiniteRankGroup& g, const MultiplicativePoint& p) {
    if (static_cast<int>(p.size()) != g.ambient_dim)
        throw precondition_error("point arity does not match group ambient dimension");
    if (g.division_closed) return multiplicative_membership(p, g.generators, true);
    return multiplicative_membership(p, effective_generators(g), false);
}

FiniteRankGroup map_group(const IntegerMatrix& m, const FiniteRankGroup& g) {
    if (m.cols() != g.ambient_dim)
        throw precondition_error("matrix width does not match group ambient dimension");
    FiniteRankGroup out;
    out.ambient_dim = m.rows();
    out.division_closed = g.division_closed;
    out.torsion_order_cap = 1;
    for (const MultiplicativePoint& gen : effective_generators(g))
        out.generators.push_back(monomial_image(m, gen));
    return out;
}

}  // namespace atyp
