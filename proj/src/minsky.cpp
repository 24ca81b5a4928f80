#include "diffalg/minsky.hpp"

#include <nlohmann/json.hpp>

#include <cassert>
#include <sstream>

namespace diffalg {

using ordered_json = nlohmann::ordered_json;

void Command::validate_shape() const {
    auto fail = [&](const std::string& msg) {
        throw validation_error("command " + to_string() + ": " + msg);
    };
    if (i < 1) fail("source state must be >= 1 (q0 is terminal)");
    if (j < 0) fail("target state must be >= 0");
    if (eps != 0 && eps != 1) fail("eps must be 0 or 1");
    if (sigma != 0 && sigma != 1) fail("sigma must be 0 or 1");
    if (alpha < -1 || alpha > 1) fail("alpha must be -1, 0 or 1");
    if (beta < -1 || beta > 1) fail("beta must be -1, 0 or 1");
    if (eps == 1 && alpha < 0) fail("alpha must be >= 0 when eps = 1");
    if (sigma == 1 && beta < 0) fail("beta must be >= 0 when sigma = 1");
}

void Command::validate(int n_states) const {
    validate_shape();
    auto fail = [&](const std::string& msg) {
        throw validation_error("command " + to_string() + ": " + msg);
    };
    if (i > n_states) fail("source state exceeds the state count " + std::to_string(n_states));
    if (j > n_states) fail("target state exceeds the state count " + std::to_string(n_states));
}

std::string Command::to_string() const {
    std::ostringstream out;
    out << "q" << i << " " << eps << " " << sigma << " -> q" << j << " T" << alpha << " T" << beta;
    return out.str();
}

void Machine::add_command(const Command& c) {
    c.validate(n_);
    CommandKey key{c.i, c.eps, c.sigma};
    if (table_.count(key))
        throw validation_error("duplicate command for (q" + std::to_string(c.i) + ", " +
                               std::to_string(c.eps) + ", " + std::to_string(c.sigma) + ")");
    table_.emplace(key, c);
}

const Command* Machine::find(int state, int eps, int sigma) const {
    auto it = table_.find(CommandKey{state, eps, sigma});
    return it == table_.end() ? nullptr : &it->second;
}

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

int require_int_field(const ordered_json& obj, const char* field, const std::string& where) {
    if (!obj.contains(field))
        throw validation_error(where + ": missing field '" + field + "'");
    const auto& v = obj.at(field);
    if (!v.is_number_integer())
        throw validation_error(where + ": field '" + field + "' must be an integer");
    return v.get<int>();
}

} // namespace

Machine Machine::from_json_text(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error("machine file: JSON syntax error at " +
                               line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    }
    if (!doc.is_object()) throw validation_error("machine file: top level must be an object");
    int n = require_int_field(doc, "n", "machine file");
    if (n < 0) throw validation_error("machine file: n must be >= 0");
    Machine m(n);
    if (!doc.contains("commands") || !doc.at("commands").is_array())
        throw validation_error("machine file: missing 'commands' array");
    std::size_t idx = 0;
    for (const auto& entry : doc.at("commands")) {
        std::string where = "commands[" + std::to_string(idx) + "]";
        if (!entry.is_object()) throw validation_error(where + ": must be an object");
        Command c;
        c.i = require_int_field(entry, "i", where);
        c.eps = require_int_field(entry, "eps", where);
        c.sigma = require_int_field(entry, "sigma", where);
        c.j = require_int_field(entry, "j", where);
        c.alpha = require_int_field(entry, "alpha", where);
        c.beta = require_int_field(entry, "beta", where);
        try {
            m.add_command(c);
        } catch (const validation_error& e) {
            throw validation_error(where + ": " + e.what());
        }
        ++idx;
    }
    return m;
}

std::string Machine::to_json_text() const {
    ordered_json doc;
    doc["n"] = n_;
    doc["commands"] = ordered_json::array();
    for (const auto& [key, c] : table_) {
        ordered_json e;
        e["i"] = c.i;
        e["eps"] = c.eps;
        e["sigma"] = c.sigma;
        e["j"] = c.j;
        e["alpha"] = c.alpha;
        e["beta"] = c.beta;
        doc["commands"].push_back(e);
    }
    return doc.dump(2) + "\n";
}

std::string Config::to_string() const {
    return "[" + std::to_string(state) + "," + c1.str() + "," + c2.str() + "]";
}

Config Config::parse(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '[') s = s.substr(1);
    if (!s.empty() && s.back() == ']') s.pop_back();
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        parts.push_back(s.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3)
        throw usage_error("configuration must be [state,c1,c2], got '" + text + "'");
    Int state = parse_int(parts[0]);
    Int c1 = parse_int(parts[1]);
    Int c2 = parse_int(parts[2]);
    if (state < 0 || state > Int(1 << 30)) throw usage_error("state out of range in '" + text + "'");
    if (c1 < 0 || c2 < 0) throw usage_error("counters must be non-negative in '" + text + "'");
    return Config(state.convert_to<int>(), c1, c2);
}

StepResult step(const Machine& m, const Config& c) {
    if (c.state == 0) return {StepKind::halted, c, std::nullopt};
    const Command* cmd = m.find(c.state, c.eps(), c.sigma());
    if (!cmd) return {StepKind::stuck, c, std::nullopt};
    Config next(cmd->j, c.c1 + cmd->alpha, c.c2 + cmd->beta);
    assert(next.c1 >= 0 && next.c2 >= 0);
    return {StepKind::stepped, next, *cmd};
}

std::string run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::halted: return "halted";
        case RunStatus::stuck: return "stuck";
        case RunStatus::budget_exceeded: return "budget_exceeded";
        case RunStatus::cycle_detected: return "cycle_detected";
    }
    return "?";
}

Trace run(const Machine& m, const Config& start, std::uint64_t max_steps) {
    Trace trace;
    trace.configs.push_back(start);
    std::set<Config> seen{start};
    Config current = start;
    for (std::uint64_t k = 0; k < max_steps; ++k) {
        StepResult r = step(m, current);
        if (r.kind == StepKind::halted) {
            trace.status = RunStatus::halted;
            return trace;
        }
        if (r.kind == StepKind::stuck) {
            trace.status = RunStatus::stuck;
            return trace;
        }
        trace.commands.push_back(*r.command);
        trace.configs.push_back(r.next);
        current = r.next;
        if (!seen.insert(current).second) {
            trace.status = RunStatus::cycle_detected;
            trace.cycle_step = k + 1;
            return trace;
        }
    }
    // the final config may itself be terminal
    if (current.state == 0) {
        trace.status = RunStatus::halted;
        return trace;
    }
    trace.status = RunStatus::budget_exceeded;
    return trace;
}

std::vector<AcyclicityEntry> check_acyclic_bounded(const Machine& m,
                                                   const std::vector<Config>& starts,
                                                   std::uint64_t max_steps) {
    std::vector<AcyclicityEntry> report;
    for (const auto& start : starts) {
        Trace t = run(m, start, max_steps);
        report.push_back({start, t.status, t.status == RunStatus::cycle_detected,
                          t.configs.size() - 1});
    }
    return report;
}

} // namespace diffalg
