#include "diffalg/algebra.hpp"

#include <cctype>

namespace diffalg {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    void skip_ws() {
        while (!done() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    void expect(char c, const char* what) {
        if (peek() != c)
            throw parse_error(std::string("expected '") + c + "' (" + what + ")", i);
        ++i;
    }
    Int digits() {
        std::size_t start = i;
        while (!done() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw parse_error("expected digits", i);
        return Int(s.substr(start, i - start));
    }
    std::string identifier() {
        std::size_t start = i;
        while (!done() && (std::isalnum(static_cast<unsigned char>(s[i])))) ++i;
        if (i == start) throw parse_error("expected a variable name", i);
        return s.substr(start, i - start);
    }
};

DiffVar parse_factor_var(Cursor& cur, Mode mode) {
    std::size_t at = cur.i;
    std::string name = cur.identifier();
    auto base = VarBase::parse(name);
    if (!base) throw parse_error("unknown variable base '" + name + "'", at);
    cur.expect('[', "derivative orders");
    Int e1 = cur.digits();
    cur.expect(',', "derivative orders");
    Int e2 = cur.digits();
    cur.expect(']', "derivative orders");
    DiffVar v{*base, DerivOp(e1, e2)};
    if (!v.valid_in(mode))
        throw parse_error("variable " + v.to_string() + " is not admissible in mode " +
                              mode_name(mode),
                          at);
    return v;
}

// factor ("*" factor)* where each factor is base[i,j]^e
Monomial parse_factors(Cursor& cur, Mode mode) {
    Monomial m = Monomial::one();
    while (true) {
        DiffVar v = parse_factor_var(cur, mode);
        cur.expect('^', "factor exponent");
        std::size_t at = cur.i;
        Int e = cur.digits();
        if (e < 1 || e > Int(INT64_MAX))
            throw parse_error("factor exponent out of range", at);
        m = m.times_var(v, e.convert_to<std::int64_t>());
        cur.skip_ws();
        if (cur.peek() != '*') break;
        ++cur.i;
        cur.skip_ws();
        if (!std::isalpha(static_cast<unsigned char>(cur.peek())))
            throw parse_error("expected a factor after '*'", cur.i);
    }
    return m;
}

} // namespace

DiffPoly parse_poly(const std::string& text, const CoeffRing& ring, Mode mode) {
    Cursor cur{text};
    DiffPoly poly(ring, mode);
    cur.skip_ws();
    if (cur.done()) throw parse_error("empty polynomial", 0);
    bool negative = false;
    if (cur.peek() == '-') {
        negative = true;
        ++cur.i;
        cur.skip_ws();
    }
    while (true) {
        Rat coeff = ring.one();
        Monomial mono = Monomial::one();
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            Int num = cur.digits();
            Rat value(num);
            cur.skip_ws();
            if (cur.peek() == '/') {
                ++cur.i;
                cur.skip_ws();
                std::size_t at = cur.i;
                Int den = cur.digits();
                if (den == 0) throw parse_error("zero denominator", at);
                value = Rat(num, den);
                cur.skip_ws();
            }
            coeff = ring.normalize(value);
            if (cur.peek() == '*') {
                ++cur.i;
                cur.skip_ws();
                mono = parse_factors(cur, mode);
            }
        } else if (std::isalpha(static_cast<unsigned char>(cur.peek()))) {
            mono = parse_factors(cur, mode);
        } else {
            throw parse_error("expected a term", cur.i);
        }
        poly.accumulate(mono, negative ? ring.neg(coeff) : coeff);
        cur.skip_ws();
        if (cur.done()) break;
        if (cur.peek() == '+')
            negative = false;
        else if (cur.peek() == '-')
            negative = true;
        else
            throw parse_error("expected '+', '-' or end of input", cur.i);
        ++cur.i;
        cur.skip_ws();
    }
    return poly;
}

} // namespace diffalg
