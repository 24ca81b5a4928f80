#pragma once

#include "diffalg/errors.hpp"
#include "diffalg/numeric.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace diffalg {

// One machine command: in state `i` observing symbols (eps, sigma) move to
// state `j` and shift the tapes by (alpha, beta). A tape observing 1 (its
// first cell) cannot be shifted right, hence the sign conditions.
struct Command {
    int i = 1;
    int eps = 0;
    int sigma = 0;
    int j = 0;
    int alpha = 0;
    int beta = 0;

    void validate_shape() const;       // n-independent invariants
    void validate(int n_states) const; // shape plus state ranges
    std::string to_string() const;     // "q1 0 1 -> q1 T-1 T0"

    bool operator==(const Command& o) const {
        return i == o.i && eps == o.eps && sigma == o.sigma && j == o.j && alpha == o.alpha &&
               beta == o.beta;
    }
};

struct CommandKey {
    int state;
    int eps;
    int sigma;

    bool operator<(const CommandKey& o) const {
        if (state != o.state) return state < o.state;
        if (eps != o.eps) return eps < o.eps;
        return sigma < o.sigma;
    }
    bool operator==(const CommandKey& o) const {
        return state == o.state && eps == o.eps && sigma == o.sigma;
    }
};

/// Deterministic two-counter machine: at most one command per
/// (state, observed symbols) key; state 0 is terminal.
class Machine {
  public:
    explicit Machine(int n_states) : n_(n_states) {
        if (n_states < 0) throw validation_error("negative state count");
    }

    int states() const { return n_; }
    const std::map<CommandKey, Command>& table() const { return table_; }

    void add_command(const Command& c);
    const Command* find(int state, int eps, int sigma) const;

    static Machine from_json_text(const std::string& text);
    std::string to_json_text() const;

  private:
    int n_;
    std::map<CommandKey, Command> table_;
};

struct Config {
    int state = 0;
    Int c1;
    Int c2;

    Config() : c1(0), c2(0) {}
    Config(int s, Int a, Int b) : state(s), c1(std::move(a)), c2(std::move(b)) {}

    int eps() const { return c1 == 0 ? 1 : 0; }
    int sigma() const { return c2 == 0 ? 1 : 0; }

    bool operator==(const Config& o) const {
        return state == o.state && c1 == o.c1 && c2 == o.c2;
    }
    bool operator!=(const Config& o) const { return !(*this == o); }
    bool operator<(const Config& o) const {
        if (state != o.state) return state < o.state;
        if (c1 != o.c1) return c1 < o.c1;
        return c2 < o.c2;
    }

    std::string to_string() const; // "[i,c1,c2]"
    static Config parse(const std::string& text);
};

enum class StepKind { stepped, halted, stuck };

struct StepResult {
    StepKind kind;
    Config next;              // valid when kind == stepped
    std::optional<Command> command;
};

StepResult step(const Machine& m, const Config& c);

enum class RunStatus { halted, stuck, budget_exceeded, cycle_detected };

std::string run_status_name(RunStatus s);

struct Trace {
    RunStatus status;
    std::vector<Config> configs;    // every visited configuration, in order
    std::vector<Command> commands;  // command used at each step
    std::size_t cycle_step = 0;     // step index at which a repeat was seen
};

Trace run(const Machine& m, const Config& start, std::uint64_t max_steps);

struct AcyclicityEntry {
    Config start;
    RunStatus status;
    bool cycle_found;
    std::size_t steps;
};

// Semi-check only: reports whether any start repeats a configuration within
// the step budget. Counters are unbounded, so this proves cycles but never
// global acyclicity.
std::vector<AcyclicityEntry> check_acyclic_bounded(const Machine& m,
                                                   const std::vector<Config>& starts,
                                                   std::uint64_t max_steps);

} // namespace diffalg
