#include "diffalg/minsky.hpp"

#include "diffalg/machines.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace diffalg;
using namespace diffalg::testing;

namespace {

Machine single(const Command& c, int n = 1) {
    Machine m(n);
    m.add_command(c);
    return m;
}

} // namespace

TEST_CASE("step semantics") {
    Machine halt_machine = single({1, 1, 1, 0, 0, 0});
    // terminal state halts immediately
    CHECK(step(halt_machine, Config(0, Int(5), Int(2))).kind == StepKind::halted);
    // q_i 1 0 -> q_j T_alpha T_beta at [i,0,t+1] gives [j,alpha,t+1+beta]
    Machine m10 = single({1, 1, 0, 2, 1, -1}, 2);
    StepResult r = step(m10, Config(1, Int(0), Int(4)));
    CHECK(r.kind == StepKind::stepped);
    CHECK(r.next == Config(2, Int(1), Int(3)));
    // forced single-command machine
    StepResult h = step(halt_machine, Config(1, Int(0), Int(0)));
    CHECK(h.kind == StepKind::stepped);
    CHECK(h.next == Config(0, Int(0), Int(0)));
    // no entry for the observed symbols
    CHECK(step(m10, Config(1, Int(3), Int(0))).kind == StepKind::stuck);
}

TEST_CASE("run outcomes") {
    Machine halt_machine = single({1, 1, 1, 0, 0, 0});
    Trace t = run(halt_machine, Config(1, Int(0), Int(0)), 100);
    CHECK(t.status == RunStatus::halted);
    CHECK(t.configs.size() == 2);

    // a lone grow-forever command strands the machine one step in
    Machine lone = single({1, 1, 1, 1, 1, 1});
    Trace stuck_trace = run(lone, Config(1, Int(0), Int(0)), 10);
    CHECK(stuck_trace.status == RunStatus::stuck);
    CHECK(stuck_trace.configs.size() == 2);
    CHECK(stuck_trace.configs[1] == Config(1, Int(1), Int(1)));

    // the total table version runs forever: counters strictly grow
    Trace grow = run(bundled_machine("inc_forever"), Config(1, Int(0), Int(0)), 10);
    CHECK(grow.status == RunStatus::budget_exceeded);
    CHECK(grow.configs.size() == 11);

    Trace loop = run(single({1, 1, 1, 1, 0, 0}), Config(1, Int(0), Int(0)), 10);
    CHECK(loop.status == RunStatus::cycle_detected);
    CHECK(loop.cycle_step == 1);

    Trace cyc = run(bundled_machine("cyc2"), Config(1, Int(0), Int(0)), 10);
    CHECK(cyc.status == RunStatus::cycle_detected);
    CHECK(cyc.cycle_step == 2);
}

TEST_CASE("dec1 halts at the origin in exactly k+1 steps") {
    const Machine& dec1 = bundled_machine("dec1");
    for (int k = 0; k <= 100; ++k) {
        Trace t = run(dec1, Config(1, Int(k), Int(0)), 200);
        REQUIRE(t.status == RunStatus::halted);
        CHECK(t.configs.size() == static_cast<std::size_t>(k) + 2);
        CHECK(t.configs.back() == Config(0, Int(0), Int(0)));
    }
}

TEST_CASE("dec_to_one halts at [0,1,0]") {
    const Machine& m = bundled_machine("dec_to_one");
    for (int k = 0; k <= 20; ++k) {
        Trace t = run(m, Config(1, Int(k), Int(0)), 100);
        REQUIRE(t.status == RunStatus::halted);
        CHECK(t.configs.back() == Config(0, Int(1), Int(0)));
        CHECK(t.configs.size() == static_cast<std::size_t>(k) + 2);
    }
}

TEST_CASE("halts_iff_even parity behavior") {
    const Machine& m = bundled_machine("halts_iff_even");
    for (int k = 0; k <= 14; ++k) {
        Trace t = run(m, Config(1, Int(k), Int(0)), 100);
        if (k % 2 == 0) {
            CHECK(t.status == RunStatus::halted);
            CHECK(t.configs.back() == Config(0, Int(0), Int(0)));
        } else {
            CHECK(t.status == RunStatus::budget_exceeded);
        }
    }
}

TEST_CASE("bounded acyclicity checks") {
    std::vector<Config> starts;
    for (int k = 0; k <= 50; ++k) starts.push_back(Config(1, Int(k), Int(0)));
    for (const auto& e : check_acyclic_bounded(bundled_machine("dec1"), starts, 200)) {
        CHECK_FALSE(e.cycle_found);
        CHECK(e.status == RunStatus::halted);
    }
    auto rep = check_acyclic_bounded(single({1, 1, 1, 1, 0, 0}), {Config(1, Int(0), Int(0))}, 50);
    CHECK(rep[0].cycle_found);
    auto inc = check_acyclic_bounded(bundled_machine("inc_forever"),
                                     {Config(1, Int(0), Int(0)), Config(1, Int(3), Int(1))}, 200);
    for (const auto& e : inc) CHECK_FALSE(e.cycle_found);
}

TEST_CASE("command validation") {
    Machine m(2);
    CHECK_THROWS_AS(m.add_command({0, 1, 1, 1, 0, 0}), validation_error); // q0 source
    CHECK_THROWS_AS(m.add_command({3, 1, 1, 1, 0, 0}), validation_error); // state beyond n
    CHECK_THROWS_AS(m.add_command({1, 1, 1, 3, 0, 0}), validation_error);
    CHECK_THROWS_AS(m.add_command({1, 1, 1, 0, -1, 0}), validation_error); // alpha<0 with eps=1
    CHECK_THROWS_AS(m.add_command({1, 0, 1, 0, 0, -1}), validation_error); // beta<0 with sigma=1
    CHECK_THROWS_AS(m.add_command({1, 2, 1, 0, 0, 0}), validation_error);
    CHECK_THROWS_AS(m.add_command({1, 1, 1, 0, 2, 0}), validation_error);
    m.add_command({1, 1, 1, 0, 0, 0});
    CHECK_THROWS_AS(m.add_command({1, 1, 1, 2, 0, 0}), validation_error); // duplicate key
}

TEST_CASE("machine JSON round trip and diagnostics") {
    for (const auto& b : bundled_machines()) {
        Machine parsed = Machine::from_json_text(b.machine.to_json_text());
        CHECK(parsed.states() == b.machine.states());
        CHECK(parsed.table() == b.machine.table());
    }
    CHECK_THROWS_WITH_AS(Machine::from_json_text("{\"n\": 1, \"commands\": [ {\"i\": 1"),
                         doctest::Contains("JSON syntax error at line 1"), validation_error);
    CHECK_THROWS_WITH_AS(
        Machine::from_json_text(
            R"({"n":1,"commands":[{"i":1,"eps":1,"sigma":1,"j":0,"alpha":0,"beta":7}]})"),
        doctest::Contains("commands[0]"), validation_error);
    CHECK_THROWS_WITH_AS(
        Machine::from_json_text(R"({"n":1,"commands":[{"i":1,"eps":1,"sigma":1,"j":0}]})"),
        doctest::Contains("missing field 'alpha'"), validation_error);
    CHECK_THROWS_AS(Machine::from_json_text(R"({"commands":[]})"), validation_error);
}

TEST_CASE("config parsing") {
    CHECK(Config::parse("[1,2,3]") == Config(1, Int(2), Int(3)));
    CHECK(Config::parse("1,2,3") == Config(1, Int(2), Int(3)));
    CHECK(Config::parse("[0,65536,0]").c1 == 65536);
    CHECK_THROWS_AS(Config::parse("[1,2]"), usage_error);
    CHECK_THROWS_AS(Config::parse("[1,-2,0]"), usage_error);
    CHECK(Config(1, Int(0), Int(3)).eps() == 1);
    CHECK(Config(1, Int(0), Int(3)).sigma() == 0);
}
