#include "atyp/modular.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <tuple>

#include "atyp/error.hpp"

namespace atyp {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

Rational rational_pow(const Rational& base, long k) {
    Rational out(1);
    for (long i = 0; i < k; ++i) out *= base;
    return out;
}

UniPoly uni_pow(const UniPoly& base, long k) {
    UniPoly out{Rational(1)};
    for (long i = 0; i < k; ++i) out = uni_mul(out, base);
    return out;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string coord_name(int i) { return "x" + std::to_string(i + 1); }

// One-variable affine ideal generator as a UniPoly.
UniPoly uni_from_poly(const Poly& p) {
    if (p.vars() != 1) throw internal_error("univariate conversion of a multivariate polynomial");
    UniPoly out;
    for (const auto& [e, c] : p.terms()) {
        if (e[0] < 0) throw internal_error("univariate conversion of a Laurent polynomial");
        if (static_cast<size_t>(e[0]) >= out.size()) out.resize(e[0] + 1, Rational(0));
        out[e[0]] = c;
    }
    return uni_trim(std::move(out));
}

ModularEdge normalized_edge(int a, int b, long level) {
    if (a > b) std::swap(a, b);
    return ModularEdge{a, b, level};
}

}  // namespace

void BivariatePoly::add_term(long deg_x, long deg_y, const Int& coeff) {
    if (deg_x < 0 || deg_y < 0) throw precondition_error("bivariate term with negative degree");
    auto key = std::make_pair(deg_x, deg_y);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(key, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

long BivariatePoly::degree_x() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
}

long BivariatePoly::degree_y() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
}

Rational BivariatePoly::evaluate(const Rational& x, const Rational& y) const {
    Rational acc(0);
    for (const auto& [e, c] : terms_)
        acc += Rational(c) * rational_pow(x, e.first) * rational_pow(y, e.second);
    return acc;
}

UniPoly BivariatePoly::substitute_x(const Rational& x) const {
    UniPoly out;
    for (const auto& [e, c] : terms_) {
        if (static_cast<size_t>(e.second) >= out.size()) out.resize(e.second + 1, Rational(0));
        out[e.second] += Rational(c) * rational_pow(x, e.first);
    }
    return uni_trim(std::move(out));
}

UniPoly BivariatePoly::substitute_y(const Rational& y) const {
    UniPoly out;
    for (const auto& [e, c] : terms_) {
        if (static_cast<size_t>(e.first) >= out.size()) out.resize(e.first + 1, Rational(0));
        out[e.first] += Rational(c) * rational_pow(y, e.second);
    }
    return uni_trim(std::move(out));
}

BivariatePoly BivariatePoly::swapped() const {
    BivariatePoly out;
    for (const auto& [e, c] : terms_) out.add_term(e.second, e.first, c);
    return out;
}

Poly BivariatePoly::to_poly(int n, int i, int k) const {
    if (i == k || i < 0 || k < 0 || i >= n || k >= n)
        throw precondition_error("bivariate substitution needs two distinct coordinates");
    Poly out(n);
    for (const auto& [e, c] : terms_) {
        Exponent exp(n, 0);
        exp[i] = e.first;
        exp[k] = e.second;
        out.add_term(exp, Rational(c));
    }
    return out;
}

std::string BivariatePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Int mag = abs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool unit = mag == 1;
        bool has_var = e.first > 0 || e.second > 0;
        if (!unit || !has_var) out += mag.get_str();
        std::string vars;
        if (e.first > 0) {
            vars += "X";
            if (e.first > 1) vars += "^" + std::to_string(e.first);
        }
        if (e.second > 0) {
            if (!vars.empty()) vars += "*";
            vars += "Y";
            if (e.second > 1) vars += "^" + std::to_string(e.second);
        }
        if (!vars.empty()) {
            if (!unit) out += "*";
            out += vars;
        }
    }
    return out;
}

long psi_degree(long level) {
    if (level < 1) throw precondition_error("modular level must be positive");
    long psi = level;
    long m = level;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        psi = psi / p * (p + 1);
        while (m % p == 0) m /= p;
    }
    if (m > 1) psi = psi / m * (m + 1);
    return psi;
}

UniPoly resultant_in_y(const BivariatePoly& f, const UniPoly& h) {
    if (f.is_zero() || h.empty()) return {};
    long m = f.degree_y();
    int hd = uni_degree(h);
    if (m == 0) return uni_pow(f.substitute_y(Rational(0)), hd);
    if (hd == 0) return {rational_pow(h[0], m)};

    // Degree in x is at most deg_x(f) * deg(h); sample, correct for the
    // degree drop of f(s, y) against the generic Sylvester matrix, and
    // interpolate.
    long bound = f.degree_x() * hd;
    std::vector<Rational> xs, ys;
    Rational drop_base = hd % 2 != 0 ? -h.back() : h.back();
    for (long s = 0; s <= bound; ++s) {
        Rational at(s);
        xs.push_back(at);
        UniPoly fs = f.substitute_x(at);
        if (fs.empty()) {
            ys.push_back(Rational(0));
            continue;
        }
        Rational value = uni_resultant(fs, h) * rational_pow(drop_base, m - uni_degree(fs));
        ys.push_back(value);
    }
    return uni_interpolate(xs, ys);
}

ModularPolynomialTable ModularPolynomialTable::load_directory(const std::string& dir) {
    ModularPolynomialTable table;
    for (long level = 1;; ++level) {
        std::string path = dir + "/phi_" + std::to_string(level) + ".txt";
        std::ifstream in(path);
        if (!in) break;
        BivariatePoly poly;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream tokens(line);
            long dx = 0, dy = 0;
            std::string coeff;
            if (!(tokens >> dx)) continue;
            std::string where = path + " line " + std::to_string(lineno);
            if (!(tokens >> dy >> coeff)) throw parse_error(where + ": expected 'degX degY coeff'");
            std::string extra;
            if (tokens >> extra) throw parse_error(where + ": trailing token '" + extra + "'");
            try {
                poly.add_term(dx, dy, Int(coeff));
            } catch (const std::invalid_argument&) {
                throw parse_error(where + ": bad coefficient '" + coeff + "'");
            }
        }

        if (level == 1) {
            BivariatePoly expected;
            expected.add_term(1, 0, 1);
            expected.add_term(0, 1, -1);
            if (!(poly == expected)) throw parse_error(path + ": phi_1 must be X - Y");
        } else if (!(poly == poly.swapped())) {
            throw parse_error(path + ": modular polynomial is not symmetric");
        }
        long expected_degree = psi_degree(level);
        if (poly.degree_x() != expected_degree || poly.degree_y() != expected_degree)
            throw parse_error(path + ": degree " + std::to_string(poly.degree_x()) +
                              " does not match psi(" + std::to_string(level) + ") = " +
                              std::to_string(expected_degree));
        if (is_prime(level) && level > 1) {
            // Kronecker congruence: Phi_p = (X^p - Y)(X - Y^p) mod p.
            BivariatePoly diff = poly;
            diff.add_term(level + 1, 0, -1);
            diff.add_term(level, level, 1);
            diff.add_term(1, 1, 1);
            diff.add_term(0, level + 1, -1);
            for (const auto& [e, c] : diff.terms()) {
                if (c % level != 0)
                    throw parse_error(path + ": Kronecker congruence fails at degree (" +
                                      std::to_string(e.first) + ", " + std::to_string(e.second) +
                                      ")");
            }
        }
        table.entries_.push_back(std::move(poly));
    }
    if (table.entries_.empty())
        throw parse_error("no modular polynomial files found in " + dir);
    return table;
}

const BivariatePoly& ModularPolynomialTable::polynomial(long level) const {
    if (level < 1) throw precondition_error("modular level must be positive");
    if (level > max_level())
        throw budget_error("modular polynomial data bound exceeded at level " +
                           std::to_string(level));
    return entries_[level - 1];
}

ModularData ModularData::load_directory(const std::string& dir) {
    return ModularData{ModularPolynomialTable::load_directory(dir),
                       ClassPolynomialTable::load_file(dir + "/class_polys.txt")};
}

bool phi_vanishes_at(const ModularData& data, long level, const ExactValue& a,
                     const ExactValue& b) {
    const BivariatePoly& phi = data.phi.polynomial(level);
    if (a.is_rational() && b.is_rational())
        return phi.evaluate(a.rational(), b.rational()) == 0;
    if (a.is_rational()) return uni_vanishes_at(phi.substitute_x(a.rational()), b);
    if (b.is_rational()) return uni_vanishes_at(phi.substitute_y(b.rational()), a);
    return uni_vanishes_at(resultant_in_y(phi, b.minimal_polynomial()), a);
}

std::optional<long> hecke_relation(const ModularData& data, const ExactValue& a,
                                   const ExactValue& b, long n_max) {
    if (n_max > data.phi.max_level())
        throw budget_error("hecke search bound " + std::to_string(n_max) +
                           " exceeds the bundled modular polynomials");
    for (long level = 1; level <= n_max; ++level)
        if (phi_vanishes_at(data, level, a, b)) return level;
    return std::nullopt;
}

bool is_special_value(const ClassPolynomialTable& classes, const ExactValue& c, long disc_bound) {
    if (!c.is_rational()) return -c.discriminant() <= disc_bound;
    for (const auto& [disc, poly] : classes.entries()) {
        if (-disc > disc_bound) continue;
        if (uni_eval(poly, c.rational()) == 0) return true;
    }
    return false;
}

ModularWeaklySpecial ModularWeaklySpecial::full(int n) { return make(n, {}, {}); }

ModularWeaklySpecial ModularWeaklySpecial::make(int n, std::vector<ModularEdge> edges,
                                                std::map<int, ExactValue> constants) {
    if (n < 0) throw precondition_error("negative ambient dimension");
    for (const auto& [i, value] : constants)
        if (i < 0 || i >= n) throw precondition_error("constant coordinate out of range");
    for (auto& e : edges) {
        if (e.a == e.b) throw precondition_error("an edge needs two distinct coordinates");
        if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n)
            throw precondition_error("edge coordinate out of range");
        if (e.level < 1) throw precondition_error("edge level must be positive");
        if (e.a > e.b) std::swap(e.a, e.b);
        if (constants.count(e.a) || constants.count(e.b))
            throw precondition_error("an edge cannot touch a constant coordinate");
    }
    std::sort(edges.begin(), edges.end(), [](const ModularEdge& l, const ModularEdge& r) {
        return std::tie(l.a, l.b, l.level) < std::tie(r.a, r.b, r.level);
    });
    UnionFind uf(n);
    for (size_t i = 0; i < edges.size(); ++i) {
        if (i > 0 && edges[i].a == edges[i - 1].a && edges[i].b == edges[i - 1].b)
            throw precondition_error("duplicate edge between " + coord_name(edges[i].a) +
                                     " and " + coord_name(edges[i].b));
        if (!uf.unite(edges[i].a, edges[i].b))
            throw precondition_error("edges must form spanning forests, found a cycle");
    }
    ModularWeaklySpecial s;
    s.n_ = n;
    s.edges_ = std::move(edges);
    s.constants_ = std::move(constants);
    return s;
}

std::vector<std::vector<int>> ModularWeaklySpecial::blocks() const {
    UnionFind uf(n_);
    for (const auto& e : edges_) uf.unite(e.a, e.b);
    std::map<int, std::vector<int>> grouped;
    for (int i = 0; i < n_; ++i) grouped[uf.find(i)].push_back(i);
    std::vector<std::vector<int>> out;
    out.reserve(grouped.size());
    for (auto& [root, members] : grouped) out.push_back(std::move(members));
    return out;
}

int ModularWeaklySpecial::dimension() const {
    return static_cast<int>(blocks().size() - constants_.size());
}

long ModularWeaklySpecial::complexity() const {
    long level = 1;
    for (const auto& e : edges_) level = std::max(level, e.level);
    return level;
}

std::string ModularWeaklySpecial::to_string() const {
    std::vector<std::string> items;
    for (const auto& e : edges_)
        items.push_back("phi[" + std::to_string(e.level) + "](" + coord_name(e.a) + "," +
                        coord_name(e.b) + ")");
    for (const auto& [i, value] : constants_)
        items.push_back(coord_name(i) + " = " + value.to_string());
    std::string out = "{";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += "; ";
        out += items[i];
    }
    out += "}";
    return out;
}

namespace {

int parse_coordinate(const std::string& token, int n, const std::string& item) {
    std::string t = trimmed(token);
    if (t.size() < 2 || t[0] != 'x')
        throw parse_error("expected a coordinate like x1 in '" + item + "'");
    int index = 0;
    try {
        size_t used = 0;
        index = std::stoi(t.substr(1), &used);
        if (used != t.size() - 1) throw std::invalid_argument(t);
    } catch (const std::exception&) {
        throw parse_error("bad coordinate '" + t + "' in '" + item + "'");
    }
    if (index < 1 || index > n)
        throw parse_error("coordinate " + t + " out of range for ambient dimension " +
                          std::to_string(n));
    return index - 1;
}

}  // namespace

ModularWeaklySpecial parse_modular_weakly_special(const std::string& text, int n,
                                                  const ClassPolynomialTable& classes) {
    std::string s = trimmed(text);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw parse_error("weakly special description must be brace delimited");
    std::string inner = trimmed(s.substr(1, s.size() - 2));
    std::vector<ModularEdge> edges;
    std::map<int, ExactValue> constants;
    size_t pos = 0;
    while (pos < inner.size()) {
        size_t semi = inner.find(';', pos);
        std::string item = trimmed(inner.substr(pos, semi == std::string::npos ? std::string::npos
                                                                               : semi - pos));
        pos = semi == std::string::npos ? inner.size() : semi + 1;
        if (item.empty()) continue;
        if (item.rfind("phi", 0) == 0) {
            size_t lb = item.find('['), rb = item.find(']'), lp = item.find('('),
                   comma = item.find(','), rp = item.find(')');
            if (lb == std::string::npos || rb == std::string::npos || lp == std::string::npos ||
                comma == std::string::npos || rp == std::string::npos || !(lb < rb) ||
                !(rb < lp) || !(lp < comma) || !(comma < rp))
                throw parse_error("malformed modular equation '" + item + "'");
            long level = 0;
            try {
                std::string num = trimmed(item.substr(lb + 1, rb - lb - 1));
                size_t used = 0;
                level = std::stol(num, &used);
                if (used != num.size()) throw std::invalid_argument(num);
            } catch (const std::exception&) {
                throw parse_error("bad level in '" + item + "'");
            }
            int a = parse_coordinate(item.substr(lp + 1, comma - lp - 1), n, item);
            int b = parse_coordinate(item.substr(comma + 1, rp - comma - 1), n, item);
            edges.push_back(normalized_edge(a, b, level));
        } else {
            size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw parse_error("expected 'phi[N](xi,xk)' or 'xi = value' in '" + item + "'");
            int coord = parse_coordinate(item.substr(0, eq), n, item);
            ExactValue value = parse_exact_value(item.substr(eq + 1), classes);
            if (!constants.emplace(coord, value).second)
                throw parse_error("coordinate " + coord_name(coord) + " assigned twice");
        }
    }
    try {
        return ModularWeaklySpecial::make(n, std::move(edges), std::move(constants));
    } catch (const precondition_error& e) {
        throw parse_error(std::string("invalid weakly special description: ") + e.what());
    }
}

PolynomialIdeal modular_ideal(const ModularWeaklySpecial& s, const ModularData& data,
                              const GroebnerBudget& budget) {
    int n = s.ambient();
    std::vector<Poly> gens;
    for (const auto& e : s.edges())
        gens.push_back(data.phi.polynomial(e.level).to_poly(n, e.a, e.b));
    for (const auto& [i, value] : s.constants()) {
        UniPoly minimal = value.minimal_polynomial();
        Poly g(n);
        for (int k = 0; k <= uni_degree(minimal); ++k) {
            if (minimal[k] == 0) continue;
            Exponent exp(n, 0);
            exp[i] = k;
            g.add_term(exp, minimal[k]);
        }
        gens.push_back(std::move(g));
    }
    return PolynomialIdeal(n, std::move(gens), false, budget);
}

bool modular_contains_point(const ModularWeaklySpecial& s, const std::vector<ExactValue>& point,
                            const ModularData& data) {
    if (static_cast<int>(point.size()) != s.ambient())
        throw precondition_error("point dimension does not match the ambient space");
    for (const auto& [i, value] : s.constants())
        if (!(point[i] == value)) return false;
    for (const auto& e : s.edges())
        if (!phi_vanishes_at(data, e.level, point[e.a], point[e.b])) return false;
    return true;
}

bool is_gamma_admissible(const ModularData& data, const ModularGamma& gamma, const ExactValue& c) {
    if (gamma.include_all_special && is_special_value(data.classes, c, gamma.disc_bound))
        return true;
    for (const ExactValue& xi : gamma.xi_nonspecial)
        if (hecke_relation(data, c, xi, gamma.hecke_bound)) return true;
    return false;
}

namespace {

// The values of Xi-bar this value system can write down: the xi themselves
// plus the rational and bundled singular-modulus roots of Phi_N(xi, y) for
// N up to the Hecke bound. For singular-modulus xi the root extraction works
// through the resultant, so it operates at the level of conjugacy classes.
std::vector<ExactValue> representable_orbit(const ModularData& data, const ModularGamma& gamma) {
    std::vector<ExactValue> out = gamma.xi_nonspecial;
    for (const ExactValue& xi : gamma.xi_nonspecial) {
        for (long level = 1; level <= std::min(gamma.hecke_bound, data.phi.max_level()); ++level) {
            const BivariatePoly& phi = data.phi.polynomial(level);
            UniPoly orbit_poly = xi.is_rational()
                                     ? phi.substitute_x(xi.rational())
                                     : resultant_in_y(phi.swapped(), xi.minimal_polynomial());
            if (orbit_poly.empty()) continue;
            for (const Rational& root : uni_rational_roots(orbit_poly))
                out.push_back(ExactValue(root));
            for (const auto& [disc, minimal] : data.classes.entries()) {
                if (-disc > gamma.disc_bound) continue;
                if (!uni_divides(minimal, orbit_poly)) continue;
                for (int idx = 0; idx < data.classes.real_root_count(disc); ++idx)
                    out.push_back(ExactValue::singular_modulus(data.classes, disc, idx));
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Whether the tree edges of one block can be satisfied by values from the
// candidate pool, by backtracking along the tree.
bool block_fillable(const ModularData& data, const std::vector<int>& block,
                    const std::vector<ModularEdge>& edges,
                    const std::vector<ExactValue>& pool) {
    if (pool.empty()) return false;
    std::vector<std::pair<int, ModularEdge>> order;  // vertex with its parent edge
    std::vector<int> placed{block.front()};
    std::vector<ModularEdge> remaining = edges;
    while (!remaining.empty()) {
        bool progressed = false;
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            bool a_in = std::count(placed.begin(), placed.end(), it->a) > 0;
            bool b_in = std::count(placed.begin(), placed.end(), it->b) > 0;
            if (a_in == b_in) continue;
            int vertex = a_in ? it->b : it->a;
            order.emplace_back(vertex, *it);
            placed.push_back(vertex);
            remaining.erase(it);
            progressed = true;
            break;
        }
        if (!progressed) throw internal_error("block edges do not form a tree");
    }

    std::map<int, ExactValue> assigned;
    std::function<bool(size_t)> extend = [&](size_t depth) -> bool {
        if (depth == order.size()) return true;
        auto [vertex, edge] = order[depth];
        int other = edge.a == vertex ? edge.b : edge.a;
        for (const ExactValue& candidate : pool) {
            if (!phi_vanishes_at(data, edge.level, assigned.at(other), candidate)) continue;
            assigned.emplace(vertex, candidate);
            if (extend(depth + 1)) return true;
            assigned.erase(vertex);
        }
        return false;
    };
    for (const ExactValue& root : pool) {
        assigned.clear();
        assigned.emplace(block.front(), root);
        if (extend(0)) return true;
    }
    return false;
}

}  // namespace

std::vector<ExactValue> gamma_value_pool(const ModularData& data, const ModularGamma& gamma) {
    std::vector<ExactValue> out = representable_orbit(data, gamma);
    if (gamma.include_all_special) {
        for (const auto& [disc, minimal] : data.classes.entries()) {
            if (-disc > gamma.disc_bound) continue;
            for (int idx = 0; idx < data.classes.real_root_count(disc); ++idx)
                out.push_back(ExactValue::singular_modulus(data.classes, disc, idx));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

bool is_gamma_special_modular(const ModularWeaklySpecial& s, const ModularGamma& gamma,
                              const ModularData& data) {
    for (const auto& [i, value] : s.constants())
        if (!is_gamma_admissible(data, gamma, value)) return false;
    if (gamma.include_all_special) return true;

    // Without the special points, the free blocks have to be filled from the
    // representable part of the Hecke orbits of Xi.
    std::vector<ExactValue> pool = representable_orbit(data, gamma);
    for (const auto& block : s.blocks()) {
        if (block.size() == 1 && s.is_constant_coordinate(block.front())) continue;
        std::vector<ModularEdge> block_edges;
        for (const auto& e : s.edges())
            if (std::count(block.begin(), block.end(), e.a) > 0) block_edges.push_back(e);
        if (!block_fillable(data, block, block_edges, pool)) return false;
    }
    return true;
}

ModularWeaklySpecial weakly_special_closure_modular(const PolynomialIdeal& x,
                                                    const ModularData& data, long n_max) {
    if (x.torus_mode())
        throw precondition_error("modular closures take affine ideals");
    if (x.is_unit())
        throw precondition_error("the empty variety has no weakly special closure");
    long bound = n_max == 0 ? data.phi.max_level() : n_max;
    if (bound > data.phi.max_level())
        throw budget_error("closure level bound " + std::to_string(bound) +
                           " exceeds the bundled modular polynomials");
    int n = x.ambient_dim();

    std::map<int, ExactValue> constants;
    std::vector<int> free_coords;
    for (int i = 0; i < n; ++i) {
        PolynomialIdeal eliminant_ideal = eliminate(x, {i});
        const auto& basis = eliminant_ideal.groebner(TermOrder::lex(1));
        if (basis.empty()) {
            free_coords.push_back(i);
            continue;
        }
        UniPoly eliminant = uni_squarefree(uni_from_poly(basis.back()));
        if (uni_degree(eliminant) != 1)
            throw precondition_error("coordinate " + coord_name(i) +
                                     " takes finitely many conjugate values; the variety is not "
                                     "geometrically irreducible");
        constants.emplace(i, ExactValue(-eliminant[0]));
    }

    std::vector<ModularEdge> candidates;
    for (size_t p = 0; p < free_coords.size(); ++p) {
        for (size_t q = p + 1; q < free_coords.size(); ++q) {
            int i = free_coords[p], k = free_coords[q];
            for (long level = 1; level <= bound; ++level) {
                if (!x.contains_poly(data.phi.polynomial(level).to_poly(n, i, k))) continue;
                candidates.push_back(ModularEdge{i, k, level});
                break;
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const ModularEdge& l, const ModularEdge& r) {
                  return std::tie(l.level, l.a, l.b) < std::tie(r.level, r.a, r.b);
              });
    UnionFind uf(n);
    std::vector<ModularEdge> edges;
    for (const auto& e : candidates)
        if (uf.unite(e.a, e.b)) edges.push_back(e);
    return ModularWeaklySpecial::make(n, std::move(edges), std::move(constants));
}

ModularWeaklySpecial gamma_special_closure(const ModularWeaklySpecial& s,
                                           const ModularGamma& gamma, const ModularData& data) {
    std::map<int, ExactValue> kept;
    std::vector<std::pair<int, ExactValue>> released;
    for (const auto& [i, value] : s.constants()) {
        if (is_gamma_admissible(data, gamma, value))
            kept.emplace(i, value);
        else
            released.emplace_back(i, value);
    }

    // Released coordinates whose values were already Hecke-related must stay
    // tied: the relation holds on the variety, and gamma-special varieties
    // carrying it are strictly smaller.
    std::vector<ModularEdge> candidates;
    for (size_t p = 0; p < released.size(); ++p) {
        for (size_t q = p + 1; q < released.size(); ++q) {
            auto level =
                hecke_relation(data, released[p].second, released[q].second, gamma.hecke_bound);
            if (level)
                candidates.push_back(normalized_edge(released[p].first, released[q].first, *level));
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const ModularEdge& l, const ModularEdge& r) {
                  return std::tie(l.level, l.a, l.b) < std::tie(r.level, r.a, r.b);
              });
    std::vector<ModularEdge> edges = s.edges();
    UnionFind uf(s.ambient());
    for (const auto& e : edges) uf.unite(e.a, e.b);
    for (const auto& e : candidates)
        if (uf.unite(e.a, e.b)) edges.push_back(e);

    ModularWeaklySpecial result = ModularWeaklySpecial::make(s.ambient(), std::move(edges), kept);

    // Without the special points a tied block may have no admissible tuple at
    // all; its equations are then released as well, one block at a time.
    if (!gamma.include_all_special) {
        std::vector<ExactValue> pool = representable_orbit(data, gamma);
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& block : result.blocks()) {
                if (block.size() < 2) continue;
                std::vector<ModularEdge> block_edges, other_edges;
                for (const auto& e : result.edges()) {
                    if (std::count(block.begin(), block.end(), e.a) > 0)
                        block_edges.push_back(e);
                    else
                        other_edges.push_back(e);
                }
                if (block_fillable(data, block, block_edges, pool)) continue;
                result = ModularWeaklySpecial::make(result.ambient(), std::move(other_edges),
                                                    result.constants());
                changed = true;
                break;
            }
        }
    }
    if (!is_gamma_special_modular(result, gamma, data))
        throw precondition_error(
            "no gamma-special variety within the bounds contains the variety");
    return result;
}

ModularWeaklySpecial gamma_special_closure(const PolynomialIdeal& x, const ModularGamma& gamma,
                                           const ModularData& data) {
    return gamma_special_closure(weakly_special_closure_modular(x, data, gamma.hecke_bound),
                                 gamma, data);
}

int gamma_defect(const PolynomialIdeal& x, const ModularGamma& gamma, const ModularData& data) {
    return gamma_special_closure(x, gamma, data).dimension() - x.dimension();
}

std::optional<ModularAtypicalWitness> modular_atypicality_check(
    const ModularData& data, const PolynomialIdeal& v, const ModularWeaklySpecial& w,
    const ModularWeaklySpecial& s, const PolynomialIdeal& x) {
    int n = s.ambient();
    if (v.ambient_dim() != n || x.ambient_dim() != n || w.ambient() != n)
        throw precondition_error("ambient dimensions disagree");
    PolynomialIdeal w_ideal = modular_ideal(w, data);
    PolynomialIdeal s_ideal = modular_ideal(s, data);
    if (!w_ideal.contains_ideal_of(s_ideal))
        throw precondition_error("W is not contained in S");
    if (!x.contains_ideal_of(v)) throw precondition_error("X is not contained in V");
    if (!x.contains_ideal_of(w_ideal)) throw precondition_error("X is not contained in W");
    if (!v.contains_ideal_of(s_ideal)) throw precondition_error("V is not contained in S");

    ModularAtypicalWitness witness;
    witness.component = x;
    witness.against = w;
    witness.ambient = s;
    witness.dim_x = x.dimension();
    witness.dim_v = v.dimension();
    witness.dim_w = w.dimension();
    witness.dim_s = s.dimension();
    if (witness.dim_x <= witness.dim_v + witness.dim_w - witness.dim_s) return std::nullopt;
    witness.ws_closure = weakly_special_closure_modular(x, data);
    witness.defect = witness.ws_closure.dimension() - witness.dim_x;
    return witness;
}

ModularFiberLocus atypical_fiber_locus_modular(const ModularData& data, const PolynomialIdeal& v,
                                               const ModularWeaklySpecial& s,
                                               const std::vector<int>& coords) {
    int n = s.ambient();
    if (v.ambient_dim() != n) throw precondition_error("ambient dimensions disagree");
    if (v.torus_mode()) throw precondition_error("modular fiber analysis takes affine ideals");
    if (coords.empty()) throw precondition_error("the projection needs at least one coordinate");
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 0 || coords[i] >= n)
            throw precondition_error("projection coordinate out of range");
        if (i > 0 && coords[i] <= coords[i - 1])
            throw precondition_error("projection coordinates must be strictly increasing");
    }
    if (v.is_unit()) throw precondition_error("the fiber analysis needs a nonempty variety");
    if (!v.contains_ideal_of(modular_ideal(s, data)))
        throw precondition_error("V is not contained in S");

    int base_dim = 0;
    for (const auto& block : s.blocks()) {
        if (block.size() == 1 && s.is_constant_coordinate(block.front())) continue;
        bool meets = false;
        for (int c : coords)
            if (std::count(block.begin(), block.end(), c) > 0) meets = true;
        if (meets) ++base_dim;
    }
    int expected = v.dimension() - base_dim;

    IntegerMatrix proj(static_cast<int>(coords.size()), n);
    for (size_t r = 0; r < coords.size(); ++r) proj.at(static_cast<int>(r), coords[r]) = 1;
    FiberJumpResult jump = fiber_jump_locus(v, proj, expected, true);
    if (!jump.locus.is_empty() && jump.locus.dimension() >= base_dim)
        throw precondition_error("the atypical fiber locus is dense; the variety is reducible");

    ModularFiberLocus out;
    out.coords = coords;
    out.locus = jump.locus;
    out.expected_fiber_dim = expected;
    out.base_dim = base_dim;
    return out;
}

StripReduction strip_constants_reduction(const ModularData& data, const PolynomialIdeal& v,
                                         const ModularWeaklySpecial& s, const PolynomialIdeal& x,
                                         long n_max) {
    int n = s.ambient();
    if (v.ambient_dim() != n || x.ambient_dim() != n)
        throw precondition_error("ambient dimensions disagree");
    if (v.torus_mode() || x.torus_mode())
        throw precondition_error("the strip reduction takes affine ideals");
    if (x.is_unit()) throw precondition_error("X is empty");
    if (!x.contains_ideal_of(v)) throw precondition_error("X is not contained in V");
    PolynomialIdeal s_ideal = modular_ideal(s, data);
    if (!v.contains_ideal_of(s_ideal)) throw precondition_error("V is not contained in S");

    ModularWeaklySpecial closure = weakly_special_closure_modular(x, data, n_max);
    int dim_x = x.dimension();
    int dim_v = v.dimension();
    int dim_s = s.dimension();
    if (dim_x <= dim_v + closure.dimension() - dim_s)
        throw precondition_error(
            "X is not atypical against its weakly special closure; nothing to strip");

    const std::map<int, ExactValue>& stripped = closure.constants();
    for (const auto& [i, value] : s.constants())
        if (!stripped.count(i))
            throw precondition_error("ambient constant coordinate " + coord_name(i) +
                                     " is not constant on X");
    for (const auto& e : s.edges())
        if (stripped.count(e.a) != stripped.count(e.b))
            throw precondition_error("the ambient ties constant coordinate of X to a free one");

    // The slice S_{i,c} and V cap S_{i,c} in the full ambient space.
    std::vector<Poly> cuts;
    for (const auto& [i, value] : stripped)
        cuts.push_back(Poly::variable(n, i) - Poly::constant(n, value.rational()));
    PolynomialIdeal v_slice = cuts.empty() ? v : v.with_extra(cuts);
    int dim_v_slice = v_slice.dimension();

    std::vector<ModularEdge> slice_edges;
    for (const auto& e : s.edges())
        if (!stripped.count(e.a)) slice_edges.push_back(e);
    int dim_s_slice = 0;
    for (const auto& block : s.blocks()) {
        bool constant = block.size() == 1 && s.is_constant_coordinate(block.front());
        if (!constant && !stripped.count(block.front())) ++dim_s_slice;
    }

    bool already = dim_v_slice > dim_v + dim_s_slice - dim_s;

    StripReduction out;
    for (int i = 0; i < n; ++i)
        if (!stripped.count(i)) out.kept.push_back(i);
    out.stripped = stripped;
    out.dim_x = dim_x;
    out.dim_v_slice = dim_v_slice;
    out.dim_s_slice = dim_s_slice;
    out.already_atypical = already;
    if (already) {
        std::map<int, ExactValue> t_constants = stripped;
        out.direct_t = ModularWeaklySpecial::make(n, slice_edges, std::move(t_constants));
    }

    std::vector<int> position(n, -1);
    for (size_t j = 0; j < out.kept.size(); ++j) position[out.kept[j]] = static_cast<int>(j);
    int m = static_cast<int>(out.kept.size());
    std::vector<ModularEdge> reduced_edges;
    for (const auto& e : slice_edges)
        reduced_edges.push_back(ModularEdge{position[e.a], position[e.b], e.level});
    std::map<int, ExactValue> reduced_constants;
    for (const auto& [i, value] : s.constants())
        if (position[i] >= 0) reduced_constants.emplace(position[i], value);
    out.s_reduced = ModularWeaklySpecial::make(m, std::move(reduced_edges),
                                               std::move(reduced_constants));
    if (m == 0) {
        out.v_reduced = PolynomialIdeal(0, {}, false);
        out.x_reduced = PolynomialIdeal(0, {}, false);
    } else {
        out.v_reduced = eliminate(v_slice, out.kept);
        out.x_reduced = eliminate(x, out.kept);
    }

    if (out.x_reduced.dimension() != dim_x || out.v_reduced.dimension() != dim_v_slice ||
        out.s_reduced.dimension() != dim_s_slice)
        throw internal_error("strip reduction changed a dimension in the ledger");
    return out;
}

}  // namespace atyp
