#include "diffalg/machines.hpp"

namespace diffalg {

namespace {

Machine build(int n, std::initializer_list<Command> commands) {
    Machine m(n);
    for (const auto& c : commands) m.add_command(c);
    return m;
}

std::vector<BundledMachine> make_bundled() {
    std::vector<BundledMachine> out;

    // Decrements the first counter to zero, then halts at [0,0,0].
    out.push_back({"dec1",
                   "from [1,k,0] halts at [0,0,0] in k+1 steps",
                   build(1,
                         {
                             {1, 0, 1, 1, -1, 0},
                             {1, 1, 1, 0, 0, 0},
                         }),
                   true});

    // Same loop but the final command bumps the counter back to one,
    // so every [1,k,0] run ends at [0,1,0].
    out.push_back({"dec_to_one",
                   "from [1,k,0] halts at [0,1,0] in k+1 steps",
                   build(1,
                         {
                             {1, 0, 1, 1, -1, 0},
                             {1, 1, 1, 0, 1, 0},
                         }),
                   true});

    // Subtracts two per round; odd inputs fall into an ever-growing tail.
    out.push_back({"halts_iff_even",
                   "from [1,k,0] halts at [0,0,0] iff k is even, else grows forever",
                   build(2,
                         {
                             {1, 0, 1, 2, -1, 0},
                             {2, 0, 1, 1, -1, 0},
                             {1, 1, 1, 0, 0, 0},
                             {2, 1, 1, 2, 0, 1},
                             {2, 1, 0, 2, 0, 1},
                         }),
                   true});

    // Total command table, counters never decrease and their sum strictly
    // grows, so no configuration repeats and the terminal state is absent.
    out.push_back({"inc_forever",
                   "never halts; the counter sum strictly increases",
                   build(1,
                         {
                             {1, 1, 1, 1, 1, 1},
                             {1, 0, 0, 1, 1, 1},
                             {1, 0, 1, 1, 1, 0},
                             {1, 1, 0, 1, 0, 1},
                         }),
                   true});

    // Two-step configuration cycle [1,0,0] -> [2,1,0] -> [1,0,0].
    out.push_back({"cyc2",
                   "cycles through [1,0,0] -> [2,1,0] -> [1,0,0]",
                   build(2,
                         {
                             {1, 1, 1, 2, 1, 0},
                             {2, 0, 1, 1, -1, 0},
                         }),
                   false});

    // One-step cycle at [1,0,0].
    out.push_back({"self_loop",
                   "repeats [1,0,0] forever",
                   build(1,
                         {
                             {1, 1, 1, 1, 0, 0},
                         }),
                   false});

    return out;
}

} // namespace

const std::vector<BundledMachine>& bundled_machines() {
    static const std::vector<BundledMachine> machines = make_bundled();
    return machines;
}

const Machine& bundled_machine(const std::string& name) {
    for (const auto& b : bundled_machines())
        if (b.name == name) return b.machine;
    throw usage_error("unknown bundled machine '" + name + "'");
}

} // namespace diffalg
