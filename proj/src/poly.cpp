#include "atyp/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "atyp/error.hpp"

namespace atyp {

long total_degree(const Exponent& e) {
    long d = 0;
    for (long x : e) d += x;
    return d;
}

TermOrder TermOrder::lex(int n) {
    TermOrder o;
    o.kind = Kind::Lex;
    o.perm.resize(n);
    for (int i = 0; i < n; ++i) o.perm[i] = i;
    return o;
}

TermOrder TermOrder::grlex(int n) {
    TermOrder o;
    o.kind = Kind::Block;
    o.perm.resize(n);
    for (int i = 0; i < n; ++i) o.perm[i] = i;
    o.split = n;
    return o;
}

TermOrder TermOrder::elimination(int n, const std::vector<int>& eliminated) {
    TermOrder o;
    o.kind = Kind::Block;
    std::vector<bool> in_first(n, false);
    for (int i : eliminated) {
        if (i < 0 || i >= n) throw precondition_error("elimination variable out of range");
        in_first[i] = true;
    }
    for (int i = 0; i < n; ++i)
        if (in_first[i]) o.perm.push_back(i);
    o.split = static_cast<int>(o.perm.size());
    for (int i = 0; i < n; ++i)
        if (!in_first[i]) o.perm.push_back(i);
    return o;
}

int TermOrder::compare(const Exponent& a, const Exponent& b) const {
    auto lex_range = [&](int from, int to) {
        for (int k = from; k < to; ++k) {
            const long av = a[perm[k]], bv = b[perm[k]];
            if (av != bv) return av < bv ? -1 : 1;
        }
        return 0;
    };
    if (kind == Kind::Lex) return lex_range(0, vars());
    auto block = [&](int from, int to) {
        long da = 0, db = 0;
        for (int k = from; k < to; ++k) {
            da += a[perm[k]];
            db += b[perm[k]];
        }
        if (da != db) return da < db ? -1 : 1;
        return lex_range(from, to);
    };
    if (int c = block(0, split)) return c;
    return block(split, vars());
}

std::string TermOrder::cache_key() const {
    std::string key = kind == Kind::Lex ? "lex:" : "blk" + std::to_string(split) + ":";
    for (int i : perm) key += std::to_string(i) + ",";
    return key;
}

Poly Poly::constant(int n, const Rational& c) {
    Poly p(n);
    if (c != 0) p.terms_[Exponent(n, 0)] = c;
    return p;
}

Poly Poly::variable(int n, int i, long power) {
    if (i < 0 || i >= n) throw precondition_error("variable index out of range");
    Exponent e(n, 0);
    e[i] = power;
    return monomial(n, e, Rational(1));
}

Poly Poly::monomial(int n, const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != n) throw precondition_error("exponent length mismatch");
    Poly p(n);
    if (c != 0) p.terms_[e] = c;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
           *std::max_element(terms_.begin()->first.begin(), terms_.begin()->first.end()) == 0 &&
           *std::min_element(terms_.begin()->first.begin(), terms_.begin()->first.end()) == 0;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
    if (static_cast<int>(e.size()) != n_) throw precondition_error("exponent length mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (c != 0) terms_[e] = c;
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& rhs) const {
    Poly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
    return out;
}

Poly Poly::operator-(const Poly& rhs) const {
    Poly out = *this;
    for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
    return out;
}

Poly Poly::operator-() const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

Poly Poly::operator*(const Poly& rhs) const {
    Poly out(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : rhs.terms_) {
            Exponent e(n_);
            for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
            out.add_term(e, c1 * c2);
        }
    return out;
}

Poly Poly::operator*(const Rational& c) const {
    Poly out(n_);
    if (c == 0) return out;
    for (const auto& [e, k] : terms_) out.terms_[e] = k * c;
    return out;
}

Poly Poly::pow(long k) const {
    if (k < 0) throw precondition_error("negative polynomial power");
    Poly out = constant(n_, Rational(1));
    for (long i = 0; i < k; ++i) out = out * *this;
    return out;
}

long Poly::max_total_degree() const {
    long d = 0;
    for (const auto& [e, c] : terms_) {
        long t = 0;
        for (long x : e) t += x > 0 ? x : -x;
        d = std::max(d, t);
    }
    return d;
}

bool Poly::has_negative_exponent() const {
    for (const auto& [e, c] : terms_)
        for (long x : e)
            if (x < 0) return true;
    return false;
}

Poly Poly::cleared() const {
    if (terms_.empty()) return *this;
    Exponent shift(n_, 0);
    for (const auto& [e, c] : terms_)
        for (int i = 0; i < n_; ++i) shift[i] = std::min(shift[i], e[i]);
    bool trivial = std::all_of(shift.begin(), shift.end(), [](long x) { return x == 0; });
    if (trivial) return *this;
    Poly out(n_);
    for (const auto& [e, c] : terms_) {
        Exponent ne(n_);
        for (int i = 0; i < n_; ++i) ne[i] = e[i] - shift[i];
        out.terms_[ne] = c;
    }
    return out;
}

Poly Poly::primitive_normalized(const TermOrder& ord) const {
    if (terms_.empty()) return *this;
    Int den = 1;
    for (const auto& [e, c] : terms_) den = den * c.get_den() / gcd(den, c.get_den());
    Int num = 0;
    for (const auto& [e, c] : terms_) {
        Int scaled = c.get_num() * (den / c.get_den());
        num = gcd(num, scaled);
    }
    Rational factor = make_rational(den, num);
    if (leading_coefficient(ord) < 0) factor = -factor;
    return *this * factor;
}

const Exponent* Poly::leading_exponent(const TermOrder& ord) const {
    const Exponent* best = nullptr;
    for (const auto& [e, c] : terms_)
        if (!best || ord.compare(e, *best) > 0) best = &e;
    return best;
}

Rational Poly::leading_coefficient(const TermOrder& ord) const {
    const Exponent* e = leading_exponent(ord);
    return e ? terms_.at(*e) : Rational(0);
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_) throw precondition_error("evaluation point length mismatch");
    Rational out = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (point[i] == 0) {
                if (e[i] < 0) throw precondition_error("negative exponent at zero coordinate");
                term = 0;
                break;
            }
            Rational base = e[i] > 0 ? point[i] : Rational(1) / point[i];
            for (long k = 0; k < std::abs(e[i]); ++k) term *= base;
        }
        out += term;
    }
    return out;
}

Poly Poly::scale_variables(const std::vector<Rational>& c) const {
    if (static_cast<int>(c.size()) != n_) throw precondition_error("scale vector length mismatch");
    Poly out(n_);
    for (const auto& [e, k] : terms_) {
        Rational f = k;
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (c[i] == 0) throw precondition_error("scaling by zero");
            Rational base = e[i] > 0 ? c[i] : Rational(1) / c[i];
            for (long t = 0; t < std::abs(e[i]); ++t) f *= base;
        }
        out.add_term(e, f);
    }
    return out;
}

Poly Poly::substitute_value(int i, const Rational& value) const {
    Poly out(n_);
    for (const auto& [e, k] : terms_) {
        Rational f = k;
        if (e[i] != 0) {
            if (value == 0) {
                if (e[i] < 0) throw precondition_error("substituting zero into negative exponent");
                continue;
            }
            Rational base = e[i] > 0 ? value : Rational(1) / value;
            for (long t = 0; t < std::abs(e[i]); ++t) f *= base;
        }
        Exponent ne = e;
        ne[i] = 0;
        out.add_term(ne, f);
    }
    return out;
}

Poly Poly::reindex(int m, const std::vector<int>& image) const {
    if (static_cast<int>(image.size()) != n_) throw precondition_error("reindex map length mismatch");
    Poly out(m);
    for (const auto& [e, c] : terms_) {
        Exponent ne(m, 0);
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0) continue;
            if (image[i] < 0 || image[i] >= m) throw precondition_error("reindex image out of range");
            ne[image[i]] += e[i];
        }
        out.add_term(ne, c);
    }
    return out;
}

Poly Poly::derivative(int i) const {
    Poly out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponent ne = e;
        ne[i] -= 1;
        out.add_term(ne, c * Rational(e[i]));
    }
    return out;
}

bool Poly::depends_on(int i) const {
    for (const auto& [e, c] : terms_)
        if (e[i] != 0) return true;
    return false;
}

std::vector<int> Poly::support_vars() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (depends_on(i)) out.push_back(i);
    return out;
}

std::string Poly::to_string(const TermOrder& ord) const {
    if (terms_.empty()) return "0";
    std::vector<const Exponent*> keys;
    keys.reserve(terms_.size());
    for (const auto& [e, c] : terms_) keys.push_back(&e);
    std::sort(keys.begin(), keys.end(),
              [&](const Exponent* a, const Exponent* b) { return ord.compare(*a, *b) > 0; });
    std::string out;
    bool first = true;
    for (const Exponent* e : keys) {
        const Rational& c = terms_.at(*e);
        const bool negative = c < 0;
        std::string term = rational_to_string(negative ? Rational(-c) : c);
        for (int i = 0; i < n_; ++i)
            if ((*e)[i] != 0)
                term += "*x" + std::to_string(i + 1) + "^" + std::to_string((*e)[i]);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        out += term;
        first = false;
    }
    return out;
}

std::string Poly::to_string() const { return to_string(TermOrder::grlex(n_)); }

namespace {

struct PolyParser {
    const std::string& s;
    int n;
    std::size_t pos = 0;

    explicit PolyParser(const std::string& text, int vars) : s(text), n(vars) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw parse_error(msg, 1, static_cast<int>(pos) + 1);
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    long parse_long() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            ++digits;
        }
        if (!digits) fail("expected integer");
        return std::stol(s.substr(start, pos - start));
    }

    Rational parse_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("expected number");
        Int num(s.substr(start, pos - start));
        Int den = 1;
        std::size_t save = pos;
        skip_ws();
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            skip_ws();
            std::size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (dstart == pos) fail("expected denominator");
            den = Int(s.substr(dstart, pos - dstart));
            if (den == 0) fail("zero denominator");
        } else {
            pos = save;
        }
        return make_rational(num, den);
    }

    Poly parse_factor() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of polynomial");
        Poly base(n);
        if (s[pos] == '(') {
            ++pos;
            base = parse_expr();
            if (!eat(')')) fail("expected ')'");
        } else if (s[pos] == 'x') {
            ++pos;
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("expected variable index after 'x'");
            int idx = std::stoi(s.substr(start, pos - start));
            if (idx < 1 || idx > n) fail("variable index out of range: x" + std::to_string(idx));
            base = Poly::variable(n, idx - 1);
        } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            base = Poly::constant(n, parse_number());
        } else {
            fail(std::string("unexpected character '") + s[pos] + "'");
        }
        skip_ws();
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            long e = parse_long();
            if (base.term_count() == 1) {
                auto [exp, coeff] = *base.terms().begin();
                if (coeff == 1 && e < 0) {
                    Exponent ne(n);
                    for (int i = 0; i < n; ++i) ne[i] = exp[i] * e;
                    return Poly::monomial(n, ne, Rational(1));
                }
            }
            if (e < 0) fail("negative exponent allowed only on a bare variable");
            base = base.pow(e);
        }
        return base;
    }

    Poly parse_term() {
        Poly out = parse_factor();
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                out = out * parse_factor();
            } else {
                break;
            }
        }
        return out;
    }

    Poly parse_expr() {
        Poly out(n);
        bool negate = false;
        if (peek() == '-') {
            ++pos;
            negate = true;
        } else if (peek() == '+') {
            ++pos;
        }
        Poly t = parse_term();
        out = negate ? -t : t;
        while (true) {
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos;
                Poly rhs = parse_term();
                out = c == '+' ? out + rhs : out - rhs;
            } else {
                break;
            }
        }
        return out;
    }
};

}  // namespace

Poly parse_poly(const std::string& text, int n) {
    PolyParser p(text, n);
    Poly out = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters in polynomial");
    return out;
}

}  // namespace atyp
