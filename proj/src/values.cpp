#include "atyp/values.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "atyp/error.hpp"

namespace atyp {

namespace {

int sign_of(const Rational& r) { return sgn(r); }

// Sign variations of a sequence with zeros dropped.
int sign_variations(const std::vector<int>& signs) {
    int variations = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

// Sturm chain of the squarefree part, each entry scaled to leading
// coefficient +-1 to keep the rationals small.
std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    UniPoly p0 = uni_squarefree(p);
    std::vector<UniPoly> chain;
    if (uni_degree(p0) <= 0) return chain;
    chain.push_back(p0);
    chain.push_back(uni_derivative(p0));
    while (uni_degree(chain.back()) > 0) {
        UniPoly rem = uni_divmod(chain[chain.size() - 2], chain.back()).second;
        if (rem.empty()) break;
        UniPoly next = uni_scale(rem, make_rational(-1) / abs(uni_leading(rem)));
        chain.push_back(std::move(next));
    }
    return chain;
}

int variations_at(const std::vector<UniPoly>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(sign_of(uni_eval(q, x)));
    return sign_variations(signs);
}

int variations_at_infinity(const std::vector<UniPoly>& chain, bool positive) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) {
        int s = sign_of(uni_leading(q));
        if (!positive && uni_degree(q) % 2 != 0) s = -s;
        signs.push_back(s);
    }
    return sign_variations(signs);
}

// Integer roots of a monic integer-coefficient polynomial, ascending. Sturm
// counts steer a bisection down to unit intervals, where the single integer
// candidate is checked by evaluation.
void collect_integer_roots(const UniPoly& q, const std::vector<UniPoly>& chain, const Int& lo,
                           const Int& hi, std::vector<Int>& out) {
    if (uni_real_root_count_between(q, Rational(lo), Rational(hi)) == 0) return;
    if (hi - lo == 1) {
        if (uni_eval(q, Rational(hi)) == 0) out.push_back(hi);
        return;
    }
    Int mid = (lo + hi) / 2;
    if (mid == hi) mid = hi - 1;
    if (mid <= lo) mid = lo + 1;
    collect_integer_roots(q, chain, lo, mid, out);
    collect_integer_roots(q, chain, mid, hi, out);
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

}  // namespace

UniPoly uni_trim(UniPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

int uni_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

Rational uni_leading(const UniPoly& p) {
    if (p.empty()) throw precondition_error("leading coefficient of the zero polynomial");
    return p.back();
}

Rational uni_eval(const UniPoly& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly uni_add(const UniPoly& a, const UniPoly& b) {
    UniPoly out(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return uni_trim(std::move(out));
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
    UniPoly out(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return uni_trim(std::move(out));
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return uni_trim(std::move(out));
}

UniPoly uni_scale(const UniPoly& a, const Rational& c) {
    if (c == 0) return {};
    UniPoly out = a;
    for (auto& coeff : out) coeff *= c;
    return out;
}

UniPoly uni_derivative(const UniPoly& a) {
    if (a.size() <= 1) return {};
    UniPoly out(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * make_rational(static_cast<long>(i));
    return uni_trim(std::move(out));
}

UniPoly uni_monic(const UniPoly& a) {
    if (a.empty()) return {};
    return uni_scale(a, make_rational(1) / uni_leading(a));
}

std::pair<UniPoly, UniPoly> uni_divmod(const UniPoly& a, const UniPoly& b) {
    if (b.empty()) throw precondition_error("univariate division by zero");
    UniPoly rem = a;
    int db = uni_degree(b);
    if (uni_degree(a) < db) return {{}, std::move(rem)};
    UniPoly quot(a.size() - b.size() + 1, Rational(0));
    while (uni_degree(rem) >= db) {
        int shift = uni_degree(rem) - db;
        Rational c = uni_leading(rem) / uni_leading(b);
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
        rem = uni_trim(std::move(rem));
    }
    return {uni_trim(std::move(quot)), std::move(rem)};
}

bool uni_divides(const UniPoly& divisor, const UniPoly& dividend) {
    if (divisor.empty()) return dividend.empty();
    return uni_divmod(dividend, divisor).second.empty();
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.empty()) {
        UniPoly r = uni_divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return uni_monic(x);
}

UniPoly uni_squarefree(const UniPoly& a) {
    if (uni_degree(a) <= 1) return uni_monic(a);
    UniPoly g = uni_gcd(a, uni_derivative(a));
    if (uni_degree(g) == 0) return uni_monic(a);
    return uni_monic(uni_divmod(a, g).first);
}

int uni_real_root_count(const UniPoly& p) {
    if (p.empty()) throw precondition_error("root count of the zero polynomial");
    auto chain = sturm_chain(p);
    if (chain.empty()) return 0;
    return variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
}

int uni_real_root_count_between(const UniPoly& p, const Rational& lo, const Rational& hi) {
    if (p.empty()) throw precondition_error("root count of the zero polynomial");
    if (lo > hi) throw precondition_error("root count over an empty interval");
    auto chain = sturm_chain(p);
    if (chain.empty()) return 0;
    return variations_at(chain, lo) - variations_at(chain, hi);
}

std::vector<Rational> uni_rational_roots(const UniPoly& p) {
    if (p.empty()) throw precondition_error("rational roots of the zero polynomial");
    if (uni_degree(p) == 0) return {};

    // Clear denominators, then substitute z = lc * x: the result is monic with
    // integer coefficients and its integer roots correspond exactly to the
    // rational roots of p.
    Int den_lcm(1);
    for (const auto& c : p) den_lcm = lcm(den_lcm, c.get_den());
    UniPoly ip = uni_scale(p, Rational(den_lcm));

    int d = uni_degree(ip);
    Int lead = ip.back().get_num();
    UniPoly monic(static_cast<size_t>(d) + 1, Rational(0));
    monic[d] = 1;
    Int power(1);
    for (int i = d - 1; i >= 0; --i) {
        monic[i] = ip[i] * Rational(power);
        power *= lead;
    }

    Int bound(1);
    for (int i = 0; i < d; ++i) {
        Int mag = abs(monic[i].get_num());
        if (mag > bound) bound = mag;
    }
    bound += 1;

    auto chain = sturm_chain(monic);
    std::vector<Int> integer_roots;
    if (uni_eval(monic, Rational(-bound)) == 0) integer_roots.push_back(-bound);
    collect_integer_roots(monic, chain, -bound, bound, integer_roots);

    std::vector<Rational> roots;
    roots.reserve(integer_roots.size());
    for (const Int& z : integer_roots) roots.push_back(make_rational(z, lead));
    std::sort(roots.begin(), roots.end());
    return roots;
}

Rational uni_resultant(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return Rational(0);
    int m = uni_degree(a), n = uni_degree(b);
    if (m == 0 && n == 0) return Rational(1);
    if (m == 0) {
        Rational r(1);
        for (int i = 0; i < n; ++i) r *= a[0];
        return r;
    }
    if (n == 0) {
        Rational r(1);
        for (int i = 0; i < m; ++i) r *= b[0];
        return r;
    }

    int size = m + n;
    std::vector<std::vector<Rational>> mat(size, std::vector<Rational>(size, Rational(0)));
    for (int row = 0; row < n; ++row)
        for (int i = 0; i <= m; ++i) mat[row][row + i] = a[m - i];
    for (int row = 0; row < m; ++row)
        for (int i = 0; i <= n; ++i) mat[n + row][row + i] = b[n - i];

    // Determinant by plain elimination with row pivoting.
    Rational det(1);
    for (int col = 0; col < size; ++col) {
        int pivot = -1;
        for (int row = col; row < size; ++row) {
            if (mat[row][col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            std::swap(mat[pivot], mat[col]);
            det = -det;
        }
        det *= mat[col][col];
        Rational inv = make_rational(1) / mat[col][col];
        for (int row = col + 1; row < size; ++row) {
            if (mat[row][col] == 0) continue;
            Rational factor = mat[row][col] * inv;
            for (int k = col; k < size; ++k) mat[row][k] -= factor * mat[col][k];
        }
    }
    return det;
}

UniPoly uni_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw precondition_error("interpolation with mismatched samples");
    if (xs.empty()) return {};
    size_t n = xs.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (xs[i] == xs[j]) throw precondition_error("interpolation with repeated sample point");

    // Newton divided differences, then expansion of the nested form.
    std::vector<Rational> coeffs = ys;
    for (size_t level = 1; level < n; ++level)
        for (size_t i = n - 1; i >= level; --i)
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level]);

    UniPoly result;
    for (size_t i = n; i-- > 0;) {
        // result = result * (x - xs[i]) + coeffs[i]
        result = uni_add(uni_mul(result, UniPoly{-xs[i], Rational(1)}), UniPoly{coeffs[i]});
    }
    return result;
}

std::string uni_to_string(const UniPoly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string out;
    for (int i = uni_degree(p); i >= 0; --i) {
        const Rational& c = p[i];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool unit = mag == 1;
        if (!unit || i == 0) out += rational_to_string(mag);
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

ClassPolynomialTable ClassPolynomialTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open class polynomial file " + path);
    ClassPolynomialTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) continue;
        std::string where = path + " line " + std::to_string(lineno);
        long disc = 0;
        try {
            size_t used = 0;
            disc = std::stol(first, &used);
            if (used != first.size()) throw std::invalid_argument(first);
        } catch (const std::exception&) {
            throw parse_error(where + ": bad discriminant '" + first + "'");
        }
        if (disc >= 0) throw parse_error(where + ": discriminant must be negative");
        long residue = ((disc % 4) + 4) % 4;
        if (residue != 0 && residue != 1)
            throw parse_error(where + ": discriminant must be 0 or 1 mod 4");
        if (table.entries_.count(disc)) throw parse_error(where + ": duplicate discriminant");
        UniPoly poly;
        std::string tok;
        while (tokens >> tok) {
            try {
                poly.push_back(Rational(Int(tok)));
            } catch (const std::exception&) {
                throw parse_error(where + ": bad coefficient '" + tok + "'");
            }
        }
        if (uni_degree(poly) < 1) throw parse_error(where + ": class polynomial must be nonconstant");
        if (poly.back() != 1) throw parse_error(where + ": class polynomial must be monic");
        table.real_roots_[disc] = uni_real_root_count(poly);
        table.entries_[disc] = std::move(poly);
    }
    if (table.entries_.empty()) throw parse_error(path + ": no class polynomial entries");
    return table;
}

bool ClassPolynomialTable::has(long discriminant) const {
    return entries_.count(discriminant) != 0;
}

const UniPoly& ClassPolynomialTable::minimal_polynomial(long discriminant) const {
    auto it = entries_.find(discriminant);
    if (it == entries_.end())
        throw budget_error("class polynomial data bound exceeded at discriminant " +
                           std::to_string(discriminant));
    return it->second;
}

int ClassPolynomialTable::real_root_count(long discriminant) const {
    auto it = real_roots_.find(discriminant);
    if (it == real_roots_.end())
        throw budget_error("class polynomial data bound exceeded at discriminant " +
                           std::to_string(discriminant));
    return it->second;
}

long ClassPolynomialTable::max_abs_discriminant() const {
    long best = 0;
    for (const auto& [disc, poly] : entries_) best = std::max(best, -disc);
    return best;
}

ExactValue ExactValue::singular_modulus(const ClassPolynomialTable& table, long discriminant,
                                        int root_index) {
    const UniPoly& poly = table.minimal_polynomial(discriminant);
    int count = table.real_root_count(discriminant);
    if (root_index < 0 || root_index >= count)
        throw precondition_error("singular modulus root index " + std::to_string(root_index) +
                                 " out of range for discriminant " + std::to_string(discriminant));
    if (uni_degree(poly) == 1) return ExactValue(-poly[0]);
    ExactValue v;
    v.rational_ = false;
    v.value_ = 0;
    v.disc_ = discriminant;
    v.index_ = root_index;
    v.minpoly_ = poly;
    return v;
}

const Rational& ExactValue::rational() const {
    if (!rational_) throw precondition_error("singular modulus used where a rational is required");
    return value_;
}

long ExactValue::discriminant() const {
    if (rational_) throw precondition_error("rational value has no discriminant");
    return disc_;
}

int ExactValue::root_index() const {
    if (rational_) throw precondition_error("rational value has no root index");
    return index_;
}

UniPoly ExactValue::minimal_polynomial() const {
    if (rational_) return {-value_, Rational(1)};
    return minpoly_;
}

bool ExactValue::operator==(const ExactValue& rhs) const {
    if (rational_ != rhs.rational_) return false;
    if (rational_) return value_ == rhs.value_;
    return disc_ == rhs.disc_ && index_ == rhs.index_;
}

bool ExactValue::operator<(const ExactValue& rhs) const {
    if (rational_ != rhs.rational_) return rational_;
    if (rational_) return value_ < rhs.value_;
    if (disc_ != rhs.disc_) return disc_ < rhs.disc_;
    return index_ < rhs.index_;
}

std::string ExactValue::to_string() const {
    if (rational_) return rational_to_string(value_);
    return "cm(" + std::to_string(disc_) + ", " + std::to_string(index_) + ")";
}

ExactValue parse_exact_value(const std::string& text, const ClassPolynomialTable& table) {
    std::string s = strip_spaces(text);
    if (s.rfind("cm(", 0) == 0) {
        if (s.back() != ')') throw parse_error("malformed singular modulus '" + text + "'");
        std::string inner = s.substr(3, s.size() - 4);
        auto comma = inner.find(',');
        if (comma == std::string::npos)
            throw parse_error("malformed singular modulus '" + text + "'");
        long disc = 0;
        int index = 0;
        try {
            size_t used = 0;
            disc = std::stol(inner.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument(inner);
            std::string idx = inner.substr(comma + 1);
            index = std::stoi(idx, &used);
            if (used != idx.size()) throw std::invalid_argument(inner);
        } catch (const std::exception&) {
            throw parse_error("malformed singular modulus '" + text + "'");
        }
        return ExactValue::singular_modulus(table, disc, index);
    }
    return ExactValue(rational_from_string(s));
}

bool uni_vanishes_at(const UniPoly& g, const ExactValue& a) {
    if (a.is_rational()) return uni_eval(g, a.rational()) == 0;
    // The class polynomial is irreducible, so vanishing at the chosen root is
    // equivalent to divisibility by it.
    if (g.empty()) return true;
    return uni_divides(a.minimal_polynomial(), g);
}

}  // namespace atyp
