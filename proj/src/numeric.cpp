#include "diffalg/numeric.hpp"

#include "diffalg/errors.hpp"

namespace diffalg {

Int binomial(const Int& n, const Int& k) {
    if (k < 0 || n < 0 || k > n) return Int(0);
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int num(1), den(1);
    for (Int r(0); r < kk; ++r) {
        num *= n - r;
        den *= r + 1;
    }
    return num / den;
}

Int parse_int(const std::string& text) {
    if (text.empty()) throw parse_error("empty integer", 0);
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') i = 1;
    if (i == text.size()) throw parse_error("sign without digits", 0);
    for (std::size_t k = i; k < text.size(); ++k)
        if (text[k] < '0' || text[k] > '9')
            throw parse_error("invalid digit in integer '" + text + "'", k);
    return Int(text);
}

std::string to_decimal(const Int& v) { return v.str(); }

} // namespace diffalg
