#include "atyp/rational.hpp"

#include <cctype>

namespace atyp {

std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    std::size_t pos = 0;
    auto read_int = [&](const char* what) {
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) throw parse_error(std::string("expected ") + what + " in rational literal '" + s + "'");
        return Int(s.substr(start, pos - start));
    };
    Int num = read_int("numerator");
    Int den = 1;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_int("denominator");
    }
    if (pos != s.size()) throw parse_error("trailing characters in rational literal '" + s + "'");
    if (den == 0) throw parse_error("zero denominator in rational literal '" + s + "'");
    return make_rational(num, den);
}

bool is_perfect_power_exact(const Int& base, unsigned long k, Int& root) {
    if (k == 0) throw precondition_error("zeroth root");
    if (base < 0 && k % 2 == 0) return false;
    Int b = base < 0 ? Int(-base) : base;
    Int r;
    mpz_root(r.get_mpz_t(), b.get_mpz_t(), k);
    Int check;
    mpz_pow_ui(check.get_mpz_t(), r.get_mpz_t(), k);
    if (check != b) return false;
    root = base < 0 ? Int(-r) : r;
    return true;
}

}  // namespace atyp
