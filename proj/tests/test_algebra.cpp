#include "diffalg/algebra.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace diffalg;
using namespace diffalg::testing;

TEST_CASE("coefficient rings") {
    CHECK(GF2().add(Rat(1), Rat(1)) == 0);
    CHECK(GF2().neg(Rat(1)) == 1);
    CoeffRing f7 = CoeffRing::prime_field(7);
    CHECK(f7.mul(f7.inv(Rat(3)), Rat(3)) == 1);
    CHECK(f7.from_int(-1) == 6);
    CHECK(Q().div(Rat(1), Rat(3)) == Rat(1, 3));
    CHECK(ZZ().div(Rat(6), Rat(3)) == 2);
    CHECK_THROWS_AS(ZZ().div(Rat(5), Rat(3)), usage_error);
    CHECK_THROWS_AS(ZZ().normalize(Rat(1, 2)), usage_error);
    CHECK_THROWS_AS(CoeffRing::prime_field(6), usage_error);
    CHECK(CoeffRing::from_name("GF2") == GF2());
    CHECK(CoeffRing::from_name("Zp(5)") == CoeffRing::prime_field(5));
    CHECK(CoeffRing::from_name("GF(11)").name() == "GF(11)");
    CHECK(f7.parse("3/5") == f7.mul(Rat(3), f7.inv(Rat(5))));
}

TEST_CASE("derivative operators compose componentwise") {
    DerivOp a(Int(2), Int(1)), b(Int(0), Int(4));
    CHECK(a.compose(b) == DerivOp(Int(2), Int(5)));
    CHECK(a.order() == 3);
    CHECK(DerivOp::identity().is_identity());
    CHECK(a.to_string() == "[2,1]");
}

TEST_CASE("addition") {
    DiffPoly x1 = P("x1[0,0]^1");
    CHECK(x1.add(x1.neg()).is_zero());
    DiffPoly x1_gf2 = P("x1[0,0]^1", GF2());
    CHECK(x1_gf2.add(x1_gf2).is_zero());
    DiffPoly s = P("x1[0,0]^1 * x2[0,0]^1 * q1[0,0]^1").add(P("x1[0,0]^1 * x2[0,0]^1 * q0[0,0]^1"));
    CHECK(s.term_count() == 2);
    CHECK_THROWS_AS(x1.add(x1_gf2), usage_error);
    CHECK_THROWS_AS(x1.add(P("x1[0,0]^1", Q(), Mode::free_algebra)), usage_error);
}

TEST_CASE("multiplication") {
    DiffPoly a = P("2 * q1[1,2]^1 + x2[0,3]^2");
    CHECK(DiffPoly::constant(Q(), Mode::quotient, Rat(1)).mul(a) == a);
    CHECK(P("x1[0,0]^1").mul(P("x2[0,0]^1")) == P("x1[0,0]^1 * x2[0,0]^1"));
    DiffPoly lhs = P("x1[0,0]^1 + x2[0,0]^1").mul(P("x1[0,0]^1 - x2[0,0]^1"));
    CHECK(lhs == P("x1[0,0]^2 - x2[0,0]^2"));
}

TEST_CASE("derivation") {
    CHECK(DiffPoly::constant(Q(), Mode::quotient, Rat(5)).derive(1).is_zero());
    // quotient-mode annihilation of cross towers
    CHECK(P("x2[0,0]^1").derive(1).is_zero());
    CHECK(P("x1[3,0]^1").derive(2).is_zero());
    // free mode keeps them
    CHECK(P("x2[0,0]^1", Q(), Mode::free_algebra).derive(1) ==
          P("x2[1,0]^1", Q(), Mode::free_algebra));
    // Leibniz on two factors
    CHECK(P("x1[0,0]^1 * q1[0,0]^1").derive(1) ==
          P("x1[1,0]^1 * q1[0,0]^1 + x1[0,0]^1 * q1[1,0]^1"));
    // power rule picks up the exponent as a coefficient
    CHECK(P("q0[0,0]^3").derive(2) == P("3 * q0[0,0]^2 * q0[0,1]^1"));
    CHECK(P("q0[0,0]^2", GF2()).derive(2).is_zero());
}

TEST_CASE("apply_theta basics") {
    DiffPoly a = P("x1[0,0]^1 * q1[0,2]^1 + 2 * q0[0,0]^1");
    CHECK(a.apply_theta(DerivOp::identity()) == a);
    DiffPoly q1 = P("q1[0,0]^1");
    CHECK(q1.apply_theta(DerivOp(Int(1), Int(1))) ==
          q1.derive(1).derive(2));
    CHECK(q1.derive(1).derive(2) == q1.derive(2).derive(1));
    CHECK_THROWS_AS(q1.apply_theta(DerivOp(Int(1) << 20, Int(0))), resource_error);
}

TEST_CASE("iterated derivative of a product expands with binomial weights") {
    // d1^s (x1 * d2(q1)) over Q: coefficients C(s,r); over GF(2) they reduce
    const int s = 4;
    for (CoeffRing ring : {Q(), GF2()}) {
        DiffPoly a = P("x1[0,0]^1 * q1[0,1]^1", ring);
        DiffPoly expect(ring, Mode::quotient);
        for (int r = 0; r <= s; ++r) {
            Monomial m = Monomial::variable({VarBase::x1(), DerivOp::d1(Int(r))})
                             .times_var({VarBase::q(1), DerivOp(Int(s - r), Int(1))});
            expect.accumulate(m, ring.from_int(binomial(Int(s), Int(r))));
        }
        DiffPoly via_theta = a.apply_theta(DerivOp::d1(Int(s)));
        DiffPoly via_repeat = a;
        for (int k = 0; k < s; ++k) via_repeat = via_repeat.derive(1);
        CHECK(via_theta == expect);
        CHECK(via_repeat == expect);
    }
    // the two rings genuinely differ: 5 terms over Q, 2 over GF(2)
    CHECK(P("x1[0,0]^1 * q1[0,1]^1", Q()).apply_theta(DerivOp::d1(Int(4))).term_count() == 5);
    CHECK(P("x1[0,0]^1 * q1[0,1]^1", GF2()).apply_theta(DerivOp::d1(Int(4))).term_count() == 2);
}

TEST_CASE("degrees") {
    CHECK(P("x1[0,0]^1").deg().value == 1);
    CHECK(P("x1[0,0]^1").deg().homogeneous);
    DegreeResult d = P("x1[0,0]^1 + x1[0,0]^1 * x2[0,0]^1").deg();
    CHECK_FALSE(d.homogeneous);
    CHECK(d.value == 2);
    CHECK_THROWS_AS(DiffPoly::zero(Q(), Mode::quotient).deg(), usage_error);
}

TEST_CASE("pair multidegree") {
    CHECK(multidegree(P("x1[0,0]^1 * x2[0,0]^1 * q1[9,0]^1").terms().begin()->first) ==
          MultiDegree{Int(1), Int(1)});
    CHECK(multidegree(P("x1[2,0]^1").terms().begin()->first) == MultiDegree{Int(3), Int(0)});
    CHECK(multidegree(P("q5[3,4]^2").terms().begin()->first) == MultiDegree{Int(0), Int(0)});
    // exponents weigh in
    CHECK(multidegree(P("x1[1,0]^3").terms().begin()->first) == MultiDegree{Int(6), Int(0)});
    CHECK(MultiDegree{Int(1), Int(5)} < MultiDegree{Int(2), Int(0)});
}

TEST_CASE("highest part") {
    DiffPoly h = P("x1[0,0]^1 * q0[0,0]^1 - 2 * q0[3,3]^1 * x1[0,0]^1");
    CHECK(h.highest_part() == h); // Deg-homogeneous
    CHECK(P("x1[0,0]^1 + x1[1,0]^1").highest_part() == P("x1[1,0]^1"));
    CHECK_THROWS_AS(DiffPoly::zero(Q(), Mode::quotient).highest_part(), usage_error);
}

TEST_CASE("x-part projection") {
    auto mono = [](const std::string& s) { return P(s).terms().begin()->first; };
    CHECK(mono("x1[0,0]^1 * x2[0,0]^1 * q1[4,5]^1").x_part() == mono("x1[0,0]^1 * x2[0,0]^1"));
    CHECK(mono("q0[0,0]^1").x_part() == Monomial::one());
    CHECK(mono("x1[3,0]^1 * q2[0,0]^1 * x2[0,1]^1").x_part() ==
          mono("x1[3,0]^1 * x2[0,1]^1"));
    // Deg(v) = Deg({v})
    Monomial v = mono("x1[2,0]^1 * x2[0,1]^2 * q1[7,7]^3");
    CHECK(multidegree(v) == multidegree(v.x_part()));
}

TEST_CASE("homogeneous components") {
    CHECK(P("x1[0,0]^1 * x2[0,0]^1").homogeneous_components(Grading::total).size() == 1);
    CHECK(P("x1[0,0]^1 + x1[0,0]^1 * x2[0,0]^1").homogeneous_components(Grading::total).size() ==
          2);
    DiffPoly mixed = P("x1[0,0]^1 * q1[0,0]^1 + x2[0,0]^1 * q1[0,0]^1 + x1[0,0]^1 * q0[1,1]^1");
    auto comps = mixed.homogeneous_components(Grading::variable_groups);
    CHECK(comps.size() == 2); // x1-part vs x2-part groups
    DiffPoly sum = DiffPoly::zero(Q(), Mode::quotient);
    for (const auto& c : comps) sum = sum.add(c);
    CHECK(sum == mixed);
}

TEST_CASE("printing and parsing round-trip") {
    CHECK(DiffPoly::zero(Q(), Mode::quotient).to_string() == "0");
    CHECK(P("0").is_zero());
    std::string canon = "-3/2 * x1[0,0]^1 * q2[0,5]^2 + x2[0,1]^1 + 7";
    DiffPoly p = P(canon);
    CHECK(p.to_string() == "7 - 3/2 * x1[0,0]^1 * q2[0,5]^2 + x2[0,1]^1");
    CHECK(P(p.to_string()) == p);
    CHECK(P(P(p.to_string()).to_string()).to_string() == p.to_string());
    CHECK_THROWS_AS(P("x1[0,1]^1"), parse_error);            // mixed tower in quotient mode
    CHECK_THROWS_AS(P("x3[0,0]^1"), parse_error);            // unknown base
    CHECK_THROWS_AS(P("x1[0,0]^0"), parse_error);            // zero exponent
    CHECK_THROWS_AS(P("x1[0,0]^1 +"), parse_error);          // dangling operator
    CHECK_THROWS_AS(P("1/0"), parse_error);                  // zero denominator
    CHECK(P("x1[0,1]^1", Q(), Mode::free_algebra).to_string() == "x1[0,1]^1");
    // big derivative orders survive the round trip
    std::string big = "q1[65536,0]^1";
    CHECK(P(big).to_string() == big);
}

TEST_CASE("property: Leibniz and commutation on random polynomials") {
    Rng rng(20240811);
    for (int iter = 0; iter < 200; ++iter) {
        CoeffRing ring = iter % 3 == 0 ? GF2() : (iter % 3 == 1 ? Q() : ZZ());
        Mode mode = iter % 2 == 0 ? Mode::quotient : Mode::free_algebra;
        DiffPoly a = random_poly(rng, ring, mode);
        DiffPoly b = random_poly(rng, ring, mode);
        for (int i : {1, 2})
            CHECK(a.mul(b).derive(i) == a.derive(i).mul(b).add(a.mul(b.derive(i))));
        CHECK(a.derive(1).derive(2) == a.derive(2).derive(1));
    }
}

TEST_CASE("property: quotient derivation agrees with free derivation plus projection") {
    Rng rng(99);
    for (int iter = 0; iter < 200; ++iter) {
        DiffPoly b = random_poly(rng, iter % 2 ? Q() : GF2(), Mode::quotient);
        for (int i : {1, 2})
            CHECK(b.derive(i) == project_to_quotient(lift_to_free(b).derive(i)));
    }
}

TEST_CASE("property: quotient-mode annihilation rules") {
    for (int i = 0; i <= 8; ++i) {
        CHECK(DiffPoly::variable(Q(), Mode::quotient, {VarBase::x1(), DerivOp::d1(Int(i))})
                  .derive(2)
                  .is_zero());
        CHECK(DiffPoly::variable(Q(), Mode::quotient, {VarBase::x2(), DerivOp::d2(Int(i))})
                  .derive(1)
                  .is_zero());
    }
}

TEST_CASE("property: grading consistency under products") {
    Rng rng(7);
    for (int iter = 0; iter < 100; ++iter) {
        DiffPoly a = random_poly(rng, Q(), Mode::quotient);
        DiffPoly b = random_poly(rng, Q(), Mode::quotient);
        if (a.is_zero() || b.is_zero()) continue;
        DiffPoly ah = a.highest_part(), bh = b.highest_part();
        MultiDegree expect{ah.pair_degree().d1 + bh.pair_degree().d1,
                           ah.pair_degree().d2 + bh.pair_degree().d2};
        CHECK(ah.mul(bh).pair_degree() == expect);
        // x-part is multiplicative
        const Monomial& u = a.terms().begin()->first;
        const Monomial& v = b.terms().begin()->first;
        CHECK(u.times(v).x_part() == u.x_part().times(v.x_part()));
    }
}

TEST_CASE("property: random round-trips are byte-exact") {
    Rng rng(4242);
    for (int iter = 0; iter < 200; ++iter) {
        CoeffRing ring = iter % 2 ? Q() : GF2();
        Mode mode = iter % 3 ? Mode::quotient : Mode::free_algebra;
        DiffPoly p = random_poly(rng, ring, mode, true);
        std::string text = p.to_string();
        DiffPoly q = parse_poly(text, ring, mode);
        CHECK(q == p);
        CHECK(q.to_string() == text);
    }
}
