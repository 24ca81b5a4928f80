#include "diffalg/encoder.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace diffalg {

DiffPoly compile_command(const Command& c, CoeffRing ring, Mode mode) {
    c.validate_shape();
    Monomial xpart = Monomial::one();
    if (c.eps == 1) xpart = xpart.times_var({VarBase::x1(), DerivOp::identity()});
    if (c.sigma == 1) xpart = xpart.times_var({VarBase::x2(), DerivOp::identity()});

    DerivOp first(Int(1 - c.eps), Int(1 - c.sigma));
    DerivOp second(Int(1 - c.eps + c.alpha), Int(1 - c.sigma + c.beta));
    // the command side conditions make both exponent pairs non-negative
    Monomial m1 = xpart.times_var({VarBase::q(c.i), first});
    Monomial m2 = xpart.times_var({VarBase::q(c.j), second});

    DiffPoly g(ring, mode);
    g.accumulate(m1, ring.one());
    g.accumulate(m2, ring.neg(ring.one()));
    return g;
}

EncodedSystem compile_machine(const Machine& m, CoeffRing ring) {
    EncodedSystem sys{m, ring, {}, {}};
    for (const auto& [key, cmd] : m.table())
        sys.generators.emplace_back(cmd, compile_command(cmd, ring, Mode::quotient));
    DiffPoly j1 = DiffPoly::variable(ring, Mode::free_algebra,
                                     {VarBase::x2(), DerivOp::d1()}); // d1(x2)
    DiffPoly j2 = DiffPoly::variable(ring, Mode::free_algebra,
                                     {VarBase::x1(), DerivOp::d2()}); // d2(x1)
    sys.j_generators.push_back(j1);
    sys.j_generators.push_back(j2);
    return sys;
}

Monomial config_monomial_general(const Config& c, const Int& a, const Int& b) {
    if (a < 0 || b < 0) throw usage_error("negative tower order in configuration element");
    Monomial m = Monomial::one();
    m = m.times_var({VarBase::x1(), DerivOp::d1(a)});
    m = m.times_var({VarBase::x2(), DerivOp::d2(b)});
    m = m.times_var({VarBase::q(c.state), DerivOp(c.c1, c.c2)});
    return m;
}

Monomial config_monomial(const Config& c) {
    return config_monomial_general(c, Int(0), Int(0));
}

DiffPoly config_element_general(const Config& c, const Int& a, const Int& b, CoeffRing ring,
                                Mode mode) {
    return DiffPoly::monomial(ring, mode, config_monomial_general(c, a, b), ring.one());
}

DiffPoly config_element(const Config& c, CoeffRing ring, Mode mode) {
    return config_element_general(c, Int(0), Int(0), ring, mode);
}

DiffPoly membership_target(const Config& start, const Config& halt, CoeffRing ring, Mode mode) {
    return config_element(start, ring, mode).sub(config_element(halt, ring, mode));
}

DiffPoly test_element(unsigned m_index, CoeffRing ring, Mode mode, const Int& exponent_budget) {
    if (m_index > 30)
        throw resource_error("test element index " + std::to_string(m_index) +
                             " is far beyond any representable tower");
    unsigned long inner = 1ul << m_index; // 2^m
    if (inner > 1024)
        throw resource_error("test element tower 2^" + std::to_string(inner) +
                             " exceeds the exponent budget");
    Int tower = Int(1) << inner; // 2^{2^m}
    if (tower > exponent_budget)
        throw resource_error("test element tower " + tower.str() + " exceeds the exponent budget " +
                             exponent_budget.str());
    DiffPoly u = config_element(Config(1, tower, Int(0)), ring, mode);
    DiffPoly v = config_element(Config(0, Int(1), Int(0)), ring, mode);
    return u.sub(v);
}

void write_generator_file(std::ostream& out, const EncodedSystem& sys) {
    out << "# diffalg generators v1\n";
    out << "# field " << sys.ring.name() << "\n";
    out << "# states " << sys.machine.states() << "\n";
    out << "# ideal d1(x2), d2(x1) is implicit (quotient presentation)\n";
    for (const auto& [cmd, g] : sys.generators) {
        out << "# command " << cmd.i << " " << cmd.eps << " " << cmd.sigma << " -> " << cmd.j << " "
            << cmd.alpha << " " << cmd.beta << "\n";
        out << g.to_string() << "\n";
    }
}

EncodedSystem read_generator_file(std::istream& in) {
    std::string line;
    std::optional<CoeffRing> ring;
    std::optional<int> states;
    std::vector<Command> commands;
    std::vector<std::string> polys;
    std::size_t lineno = 0;
    std::optional<Command> pending;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string word;
            ls >> word;
            if (word == "field") {
                std::string name;
                ls >> name;
                ring = CoeffRing::from_name(name);
            } else if (word == "states") {
                int n;
                if (!(ls >> n)) throw validation_error("generator file line " +
                                                       std::to_string(lineno) + ": bad state count");
                states = n;
            } else if (word == "command") {
                Command c;
                std::string arrow;
                if (!(ls >> c.i >> c.eps >> c.sigma >> arrow >> c.j >> c.alpha >> c.beta) ||
                    arrow != "->")
                    throw validation_error("generator file line " + std::to_string(lineno) +
                                           ": malformed command comment");
                pending = c;
            }
            continue;
        }
        if (!pending)
            throw validation_error("generator file line " + std::to_string(lineno) +
                                   ": polynomial without a preceding command comment");
        commands.push_back(*pending);
        polys.push_back(line);
        pending.reset();
    }
    if (!ring) throw validation_error("generator file: missing '# field' header");
    if (!states) throw validation_error("generator file: missing '# states' header");
    Machine m(*states);
    for (const auto& c : commands) m.add_command(c);
    EncodedSystem sys = compile_machine(m, *ring);
    // cross-check the stored polynomials against recompilation
    for (std::size_t k = 0; k < polys.size(); ++k) {
        DiffPoly parsed = parse_poly(polys[k], *ring, Mode::quotient);
        bool found = false;
        for (const auto& [cmd, g] : sys.generators)
            if (cmd == commands[k]) {
                if (g != parsed)
                    throw validation_error("generator file: polynomial for command '" +
                                           cmd.to_string() + "' does not match its compilation");
                found = true;
            }
        if (!found)
            throw validation_error("generator file: stray polynomial entry " + std::to_string(k));
    }
    return sys;
}

} // namespace diffalg
