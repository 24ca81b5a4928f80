#include "diffalg/coeff.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace diffalg {

namespace {

bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d <= p / d; d += 2)
        if (p % d == 0) return false;
    return true;
}

Int num(const Rat& a) { return boost::multiprecision::numerator(a); }
Int den(const Rat& a) { return boost::multiprecision::denominator(a); }

} // namespace

CoeffRing CoeffRing::prime_field(std::uint64_t p) {
    if (p > (1ull << 31))
        throw usage_error("prime field characteristic too large (max 2^31)");
    if (!is_prime_u64(p))
        throw usage_error("prime field characteristic must be prime, got " + std::to_string(p));
    return CoeffRing(RingKind::prime_field, p);
}

CoeffRing CoeffRing::from_name(const std::string& name) {
    if (name == "Q") return rationals();
    if (name == "Z") return integers();
    if (name == "GF2") return prime_field(2);
    auto inner = [&](std::size_t at) -> std::uint64_t {
        if (name.back() != ')') throw usage_error("bad field name '" + name + "'");
        std::string digits = name.substr(at, name.size() - at - 1);
        Int p = parse_int(digits);
        if (p < 2 || p > Int(1) << 31) throw usage_error("bad field characteristic in '" + name + "'");
        return p.convert_to<std::uint64_t>();
    };
    if (name.rfind("GF(", 0) == 0) return prime_field(inner(3));
    if (name.rfind("Zp(", 0) == 0) return prime_field(inner(3));
    throw usage_error("unknown field '" + name + "' (expected Q, Z, GF2, GF(p) or Zp(p))");
}

std::string CoeffRing::name() const {
    switch (kind_) {
        case RingKind::rationals: return "Q";
        case RingKind::integers: return "Z";
        case RingKind::prime_field:
            return p_ == 2 ? "GF2" : "GF(" + std::to_string(p_) + ")";
    }
    return "?";
}

Rat CoeffRing::from_int(const Int& n) const {
    if (kind_ != RingKind::prime_field) return Rat(n);
    Int r = n % Int(p_);
    if (r < 0) r += Int(p_);
    return Rat(r);
}

Rat CoeffRing::normalize(const Rat& a) const {
    switch (kind_) {
        case RingKind::rationals:
            return a;
        case RingKind::integers:
            if (den(a) != 1)
                throw usage_error("non-integral value " + a.str() + " in ring Z");
            return a;
        case RingKind::prime_field: {
            Int d = den(a) % Int(p_);
            if (d < 0) d += Int(p_);
            if (d == 0)
                throw usage_error("denominator divisible by " + std::to_string(p_) +
                                  " in GF(" + std::to_string(p_) + ")");
            Rat n = from_int(num(a));
            return d == 1 ? n : mul(n, inv(Rat(d)));
        }
    }
    return a;
}

Rat CoeffRing::inv(const Rat& a) const {
    if (a == 0) throw usage_error("division by zero");
    switch (kind_) {
        case RingKind::rationals:
            return Rat(1) / a;
        case RingKind::integers:
            if (a == 1 || a == -1) return a;
            throw usage_error("element " + a.str() + " is not invertible in Z");
        case RingKind::prime_field: {
            // extended Euclid on canonical representatives
            Int r0(p_), r1 = num(normalize(a));
            Int s0(0), s1(1);
            while (r1 != 0) {
                Int q = r0 / r1;
                Int r2 = r0 - q * r1;
                Int s2 = s0 - q * s1;
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
            }
            if (r0 != 1) throw usage_error("not invertible mod " + std::to_string(p_));
            return from_int(s0);
        }
    }
    throw usage_error("unreachable");
}

Rat CoeffRing::div(const Rat& a, const Rat& b) const {
    if (kind_ == RingKind::integers) {
        if (b == 0) throw usage_error("division by zero");
        Int n = num(a), d = num(b);
        if (n % d != 0)
            throw usage_error("inexact division " + a.str() + " / " + b.str() + " in Z");
        return Rat(n / d);
    }
    return mul(a, inv(b));
}

std::string CoeffRing::to_string(const Rat& a) const {
    Rat c = normalize(a);
    if (den(c) == 1) return num(c).str();
    return num(c).str() + "/" + den(c).str();
}

Rat CoeffRing::parse(const std::string& text) const {
    auto slash = text.find('/');
    if (slash == std::string::npos) return normalize(Rat(parse_int(text)));
    Int n = parse_int(text.substr(0, slash));
    Int d = parse_int(text.substr(slash + 1));
    if (d == 0) throw parse_error("zero denominator in '" + text + "'", slash + 1);
    return normalize(Rat(n, d));
}

} // namespace diffalg
