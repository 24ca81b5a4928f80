#pragma once

#include "diffalg/encoder.hpp"
#include "diffalg/minsky.hpp"

#include <random>

namespace diffalg::testing {

using Rng = std::mt19937_64;

inline CoeffRing Q() { return CoeffRing::rationals(); }
inline CoeffRing GF2() { return CoeffRing::prime_field(2); }
inline CoeffRing ZZ() { return CoeffRing::integers(); }

inline DiffPoly P(const std::string& text, CoeffRing ring = CoeffRing::rationals(),
                  Mode mode = Mode::quotient) {
    return parse_poly(text, ring, mode);
}

inline int pick(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline DiffVar random_var(Rng& rng, Mode mode, bool allow_t, int max_order) {
    int which = pick(rng, 0, allow_t ? 4 : 3);
    int a = pick(rng, 0, max_order), b = pick(rng, 0, max_order);
    switch (which) {
        case 0: return {VarBase::x1(), mode == Mode::quotient ? DerivOp::d1(Int(a))
                                                              : DerivOp(Int(a), Int(b))};
        case 1: return {VarBase::x2(), mode == Mode::quotient ? DerivOp::d2(Int(b))
                                                              : DerivOp(Int(a), Int(b))};
        case 2: return {VarBase::q(pick(rng, 0, 2)), DerivOp(Int(a), Int(b))};
        case 3: return {VarBase::q(pick(rng, 0, 2)), DerivOp(Int(a), Int(b))};
        default: return {VarBase::t(), DerivOp(Int(a), Int(b))};
    }
}

inline Rat random_unit(Rng& rng, const CoeffRing& ring) {
    while (true) {
        Rat c = ring.from_int(pick(rng, -3, 3));
        if (!ring.is_zero(c)) return c;
    }
}

inline Monomial random_monomial(Rng& rng, Mode mode, bool allow_t = false, int max_factors = 3,
                                int max_order = 3) {
    Monomial m = Monomial::one();
    int nf = pick(rng, 0, max_factors);
    for (int f = 0; f < nf; ++f)
        m = m.times_var(random_var(rng, mode, allow_t, max_order), pick(rng, 1, 2));
    return m;
}

inline DiffPoly random_poly(Rng& rng, CoeffRing ring, Mode mode, bool allow_t = false,
                            int max_terms = 4, int max_factors = 3, int max_order = 3) {
    DiffPoly p(ring, mode);
    int terms = pick(rng, 1, max_terms);
    for (int k = 0; k < terms; ++k)
        p.accumulate(random_monomial(rng, mode, allow_t, max_factors, max_order),
                     random_unit(rng, ring));
    return p;
}

inline DiffPoly random_nonzero_poly(Rng& rng, CoeffRing ring, Mode mode, bool allow_t = false,
                                    int max_terms = 4, int max_factors = 3, int max_order = 3) {
    while (true) {
        DiffPoly p = random_poly(rng, ring, mode, allow_t, max_terms, max_factors, max_order);
        if (!p.is_zero()) return p;
    }
}

// valid non-degenerate command (the two generator monomials differ)
inline Command random_command(Rng& rng, int n_states) {
    while (true) {
        Command c;
        c.i = pick(rng, 1, n_states);
        c.eps = pick(rng, 0, 1);
        c.sigma = pick(rng, 0, 1);
        c.j = pick(rng, 0, n_states);
        c.alpha = pick(rng, c.eps == 1 ? 0 : -1, 1);
        c.beta = pick(rng, c.sigma == 1 ? 0 : -1, 1);
        if (c.i == c.j && c.alpha == 0 && c.beta == 0) continue;
        return c;
    }
}

// Expected highest part of d1^s d2^t applied to the generator of `c`, built
// directly from monomials rather than through the derivation machinery.
inline DiffPoly lemma3_closed_form(const Command& c, int s, int t, CoeffRing ring) {
    Monomial pre = Monomial::one();
    if (c.eps == 1) pre = pre.times_var({VarBase::x1(), DerivOp::d1(Int(s))});
    if (c.sigma == 1) pre = pre.times_var({VarBase::x2(), DerivOp::d2(Int(t))});
    Int first_e1 = Int((s + 1) * (1 - c.eps));
    Int first_e2 = Int((t + 1) * (1 - c.sigma));
    Monomial m1 = pre.times_var({VarBase::q(c.i), DerivOp(first_e1, first_e2)});
    Monomial m2 =
        pre.times_var({VarBase::q(c.j), DerivOp(first_e1 + c.alpha, first_e2 + c.beta)});
    DiffPoly out(ring, Mode::quotient);
    out.accumulate(m1, ring.one());
    out.accumulate(m2, ring.neg(ring.one()));
    return out;
}

// configuration compatible with the command's observed symbols
inline Config random_config_for(Rng& rng, const Command& c, int max_counter = 6) {
    Int c1 = c.eps == 1 ? Int(0) : Int(pick(rng, 1, max_counter));
    Int c2 = c.sigma == 1 ? Int(0) : Int(pick(rng, 1, max_counter));
    return Config(c.i, c1, c2);
}

} // namespace diffalg::testing
