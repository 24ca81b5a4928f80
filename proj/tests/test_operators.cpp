#include "diffalg/operators.hpp"

#include "diffalg/encoder.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace diffalg;
using namespace diffalg::testing;

TEST_CASE("identity operator") {
    Rng rng(1);
    DiffPoly a = random_poly(rng, Q(), Mode::quotient);
    CHECK(EnvOperator::identity(Q(), Mode::quotient).apply(a) == a);
}

TEST_CASE("x2 d2^t applied to a (1,0)-generator telescopes cleanly") {
    // command q1 1 0 -> q2 T1 T-1
    Command cmd{1, 1, 0, 2, 1, -1};
    DiffPoly g = compile_command(cmd, Q());
    CHECK(g == P("x1[0,0]^1 * q1[0,1]^1 - x1[0,0]^1 * q2[1,0]^1"));
    const int t = 3;
    EnvOperator w = EnvOperator::term(Q(), Mode::quotient, Rat(1),
                                      Monomial::variable({VarBase::x2(), DerivOp::identity()}),
                                      DerivOp::d2(Int(t)));
    // x1 x2 d2^{t+1}(q1) - x1 x2 d1^alpha d2^{t+1+beta}(q2), no spread at all
    DiffPoly expect = P("x1[0,0]^1 * x2[0,0]^1 * q1[0,4]^1 - x1[0,0]^1 * x2[0,0]^1 * q2[1,3]^1");
    CHECK(w.apply(g) == expect);
}

TEST_CASE("d1^s d2^t applied to a (1,0)-generator spreads with binomials") {
    Command cmd{1, 1, 0, 2, 1, 0};
    const int s = 3, t = 2;
    for (CoeffRing ring : {Q(), GF2()}) {
        DiffPoly g = compile_command(cmd, ring);
        EnvOperator op = EnvOperator::term(ring, Mode::quotient, ring.one(), Monomial::one(),
                                           DerivOp(Int(s), Int(t)));
        DiffPoly expect(ring, Mode::quotient);
        for (int r = 0; r <= s; ++r) {
            Rat c = ring.from_int(binomial(Int(s), Int(r)));
            expect.accumulate(Monomial::variable({VarBase::x1(), DerivOp::d1(Int(r))})
                                  .times_var({VarBase::q(1), DerivOp(Int(s - r), Int(t + 1))}),
                              c);
            expect.accumulate(
                Monomial::variable({VarBase::x1(), DerivOp::d1(Int(r))})
                    .times_var({VarBase::q(2), DerivOp(Int(s - r + 1), Int(t + 1))}),
                ring.neg(c));
        }
        CHECK(op.apply(g) == expect);
    }
}

TEST_CASE("W and V operator structure") {
    CHECK(w_to_operator(WOperator{1, 1, Int(0), Int(0)}, Q(), Mode::quotient)
              .apply(P("q1[0,0]^1")) == P("q1[0,0]^1"));
    EnvOperator w10 = w_to_operator(WOperator{1, 0, Int(0), Int(4)}, Q(), Mode::quotient);
    CHECK(w10.apply(P("q1[0,0]^1")) == P("x2[0,0]^1 * q1[0,4]^1"));
    CHECK_THROWS_AS(w_to_operator(WOperator{1, 0, Int(1), Int(0)}, Q(), Mode::quotient),
                    validation_error);
    CHECK_THROWS_AS(w_to_operator(WOperator{0, 1, Int(0), Int(2)}, Q(), Mode::quotient),
                    validation_error);
    CHECK_THROWS_AS(w_to_operator(VOperator{0, 1, Int(0), Int(1), Int(0), Int(0)}, Q(),
                                  Mode::quotient),
                    validation_error);
    EnvOperator v = w_to_operator(VOperator{0, 0, Int(2), Int(1), Int(1), Int(0)}, Q(),
                                  Mode::quotient);
    CHECK(v.apply(P("q1[0,0]^1")) == P("x1[2,0]^1 * x2[0,1]^1 * q1[1,0]^1"));
}

TEST_CASE("property: linearity of application") {
    Rng rng(5);
    for (int iter = 0; iter < 100; ++iter) {
        CoeffRing ring = iter % 2 ? Q() : GF2();
        DiffPoly a = random_poly(rng, ring, Mode::quotient);
        DiffPoly b = random_poly(rng, ring, Mode::quotient);
        Monomial v = random_monomial(rng, Mode::quotient, false, 2);
        EnvOperator op = EnvOperator::term(ring, Mode::quotient, ring.from_int(pick(rng, 1, 3)), v,
                                           DerivOp(Int(pick(rng, 0, 2)), Int(pick(rng, 0, 2))));
        CHECK(op.apply(a.add(b)) == op.apply(a).add(op.apply(b)));
    }
}

TEST_CASE("property: commutation rule d r = r d + d(r) as operators") {
    Rng rng(17);
    for (int iter = 0; iter < 60; ++iter) {
        CoeffRing ring = iter % 2 ? Q() : GF2();
        DiffPoly r = random_poly(rng, ring, Mode::quotient, false, 2, 2, 2);
        // operator with polynomial part r and no derivations
        EnvOperator op_r(ring, Mode::quotient);
        for (const auto& [m, c] : r.terms())
            op_r = op_r.add(EnvOperator::term(ring, Mode::quotient, c, m, DerivOp::identity()));
        for (int i : {1, 2}) {
            EnvOperator d = EnvOperator::term(ring, Mode::quotient, ring.one(), Monomial::one(),
                                              i == 1 ? DerivOp::d1() : DerivOp::d2());
            EnvOperator lhs = d.compose(op_r);
            EnvOperator dr(ring, Mode::quotient);
            DiffPoly r_derived = r.derive(i);
            for (const auto& [m, c] : r_derived.terms())
                dr = dr.add(EnvOperator::term(ring, Mode::quotient, c, m, DerivOp::identity()));
            EnvOperator rhs = op_r.compose(d).add(dr);
            DiffPoly probe = random_poly(rng, ring, Mode::quotient);
            CHECK(lhs.apply(probe) == rhs.apply(probe));
        }
    }
}

TEST_CASE("property: composition agrees with sequential application") {
    Rng rng(23);
    for (int iter = 0; iter < 60; ++iter) {
        CoeffRing ring = iter % 2 ? Q() : GF2();
        Monomial v1 = random_monomial(rng, Mode::quotient, false, 2, 2);
        Monomial v2 = random_monomial(rng, Mode::quotient, false, 2, 2);
        EnvOperator o1 = EnvOperator::term(ring, Mode::quotient, ring.from_int(pick(rng, 1, 2)),
                                           v1, DerivOp(Int(pick(rng, 0, 2)), Int(pick(rng, 0, 1))));
        EnvOperator o2 = EnvOperator::term(ring, Mode::quotient, ring.from_int(pick(rng, 1, 2)),
                                           v2, DerivOp(Int(pick(rng, 0, 1)), Int(pick(rng, 0, 2))));
        DiffPoly a = random_poly(rng, ring, Mode::quotient, false, 2, 2, 2);
        CHECK(o1.compose(o2).apply(a) == o1.apply(o2.apply(a)));
    }
}

TEST_CASE("property: closed form of the highest part, all four branches") {
    Rng rng(31);
    for (int eps : {0, 1}) {
        for (int sigma : {0, 1}) {
            for (int iter = 0; iter < 5; ++iter) {
                Command c = random_command(rng, 4);
                c.eps = eps;
                c.sigma = sigma;
                if (eps == 1 && c.alpha < 0) c.alpha = 1;
                if (sigma == 1 && c.beta < 0) c.beta = 0;
                if (c.i == c.j && c.alpha == 0 && c.beta == 0) c.j = (c.j + 1) % 5;
                DiffPoly g = compile_command(c, Q());
                for (int s = 0; s <= 5; ++s)
                    for (int t = 0; t <= 5; ++t) {
                        EnvOperator op = EnvOperator::term(Q(), Mode::quotient, Rat(1),
                                                           Monomial::one(),
                                                           DerivOp(Int(s), Int(t)));
                        CHECK(op.apply(g).highest_part() == lemma3_closed_form(c, s, t, Q()));
                    }
            }
        }
    }
}

TEST_CASE("operator text form") {
    EnvOperator op = EnvOperator::term(Q(), Mode::quotient, Rat(-2),
                                       Monomial::variable({VarBase::x2(), DerivOp::identity()}),
                                       DerivOp(Int(1), Int(3)));
    CHECK(op.to_string() == "-2 * x2[0,0]^1 :: [1,3]");
    CHECK(EnvOperator::identity(Q(), Mode::quotient).to_string() == "1 :: [0,0]");
}
