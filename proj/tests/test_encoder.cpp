#include "diffalg/encoder.hpp"

#include "diffalg/machines.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <sstream>

using namespace diffalg;
using namespace diffalg::testing;

TEST_CASE("command compilation, the three shapes") {
    // (i,1,0,j,alpha,beta): x1 d2(q_i) - x1 d1^alpha d2^{1+beta}(q_j)
    CHECK(compile_command({1, 1, 0, 2, 1, 1}, Q()) ==
          P("x1[0,0]^1 * q1[0,1]^1 - x1[0,0]^1 * q2[1,2]^1"));
    // all exponents vanish
    CHECK(compile_command({1, 1, 1, 0, 0, 0}, Q()) ==
          P("x1[0,0]^1 * x2[0,0]^1 * q1[0,0]^1 - x1[0,0]^1 * x2[0,0]^1 * q0[0,0]^1"));
    // (i,0,0,...): d1 d2(q_i) - d1^{1+alpha} d2^{1+beta}(q_j)
    CHECK(compile_command({2, 0, 0, 1, -1, 1}, Q()) == P("q2[1,1]^1 - q1[0,2]^1"));
    CHECK_THROWS_AS(compile_command({1, 1, 1, 0, -1, 0}, Q()), validation_error);
}

TEST_CASE("dec1 generators match the hand expansion") {
    EncodedSystem sys = compile_machine(bundled_machine("dec1"), Q());
    REQUIRE(sys.generators.size() == 2);
    // (q1,0,1) -> (q1,T-1,T0):  x2 d1(q1) - x2 q1
    CHECK(sys.generators[0].second == P("x2[0,0]^1 * q1[1,0]^1 - x2[0,0]^1 * q1[0,0]^1"));
    // (q1,1,1) -> (q0,T0,T0):   x1 x2 q1 - x1 x2 q0
    CHECK(sys.generators[1].second ==
          P("x1[0,0]^1 * x2[0,0]^1 * q1[0,0]^1 - x1[0,0]^1 * x2[0,0]^1 * q0[0,0]^1"));
    // quotient-ideal generators ride along in free mode
    REQUIRE(sys.j_generators.size() == 2);
    CHECK(sys.j_generators[0] == P("x2[1,0]^1", Q(), Mode::free_algebra));
    CHECK(sys.j_generators[1] == P("x1[0,1]^1", Q(), Mode::free_algebra));
}

TEST_CASE("generator count equals command count") {
    for (const auto& b : bundled_machines()) {
        EncodedSystem sys = compile_machine(b.machine, Q());
        CHECK(sys.generators.size() == b.machine.table().size());
    }
    Machine empty(3);
    CHECK(compile_machine(empty, Q()).generators.empty());
    CHECK(compile_machine(empty, Q()).j_generators.size() == 2);
}

TEST_CASE("generators are homogeneous in every grading with deg 1+eps+sigma") {
    Rng rng(61);
    for (int iter = 0; iter < 40; ++iter) {
        Command c = random_command(rng, 3);
        DiffPoly g = compile_command(c, Q());
        REQUIRE_FALSE(g.is_zero());
        CHECK(g.is_homogeneous(Grading::total));
        CHECK(g.is_homogeneous(Grading::pair));
        CHECK(g.is_homogeneous(Grading::variable_groups));
        CHECK(g.deg().value == 1 + c.eps + c.sigma);
    }
}

TEST_CASE("test elements") {
    CHECK(test_element(0, Q()) ==
          P("x1[0,0]^1 * x2[0,0]^1 * q1[2,0]^1 - x1[0,0]^1 * x2[0,0]^1 * q0[1,0]^1"));
    DiffPoly g2 = test_element(2, Q());
    CHECK(g2 == P("x1[0,0]^1 * x2[0,0]^1 * q1[16,0]^1 - x1[0,0]^1 * x2[0,0]^1 * q0[1,0]^1"));
    CHECK(g2.deg().value == 3);
    CHECK(g2.is_homogeneous(Grading::total));
    CHECK(g2.pair_degree() == MultiDegree{Int(1), Int(1)});
    // 2^{2^4} = 65536 is exactly the default budget; 2^{2^5} is beyond it
    CHECK_NOTHROW(test_element(4, Q()));
    CHECK_THROWS_AS(test_element(5, Q()), resource_error);
    // free-mode variant exists for the pre-quotient algebra
    CHECK(test_element(0, Q(), Mode::free_algebra).mode() == Mode::free_algebra);
}

TEST_CASE("configuration elements") {
    CHECK(config_element(Config(0, Int(1), Int(0)), Q()) ==
          P("x1[0,0]^1 * x2[0,0]^1 * q0[1,0]^1"));
    CHECK(config_element_general(Config(2, Int(3), Int(4)), Int(2), Int(5), Q()) ==
          P("x1[2,0]^1 * x2[0,5]^1 * q2[3,4]^1"));
    CHECK(membership_target(Config(1, Int(2), Int(0)), Config(0, Int(0), Int(0)), Q()) ==
          P("x1[0,0]^1 * x2[0,0]^1 * q1[2,0]^1 - x1[0,0]^1 * x2[0,0]^1 * q0[0,0]^1"));
}

TEST_CASE("generator files round trip") {
    for (const auto& b : bundled_machines()) {
        EncodedSystem sys = compile_machine(b.machine, Q());
        std::ostringstream out;
        write_generator_file(out, sys);
        std::istringstream in(out.str());
        EncodedSystem back = read_generator_file(in);
        CHECK(back.ring == sys.ring);
        CHECK(back.machine.table() == sys.machine.table());
        REQUIRE(back.generators.size() == sys.generators.size());
        for (std::size_t k = 0; k < sys.generators.size(); ++k)
            CHECK(back.generators[k].second == sys.generators[k].second);
        // byte-identical re-serialization
        std::ostringstream out2;
        write_generator_file(out2, back);
        CHECK(out2.str() == out.str());
    }
}

TEST_CASE("generator file rejects a tampered polynomial") {
    EncodedSystem sys = compile_machine(bundled_machine("dec1"), Q());
    std::ostringstream out;
    write_generator_file(out, sys);
    std::string text = out.str();
    auto at = text.find("x2[0,0]^1 * q1[1,0]^1");
    REQUIRE(at != std::string::npos);
    text.replace(at, 21, "x2[0,0]^1 * q1[2,0]^1");
    std::istringstream in(text);
    CHECK_THROWS_AS(read_generator_file(in), validation_error);
}

TEST_CASE("prime-field generators reduce signs") {
    DiffPoly g = compile_command({1, 1, 1, 0, 0, 0}, GF2());
    // -1 = 1, so the generator is a two-term sum
    CHECK(g == P("x1[0,0]^1 * x2[0,0]^1 * q1[0,0]^1 + x1[0,0]^1 * x2[0,0]^1 * q0[0,0]^1", GF2()));
    // a degenerate self-loop command compiles to zero over any ring
    CHECK(compile_command({1, 1, 1, 1, 0, 0}, Q()).is_zero());
}
