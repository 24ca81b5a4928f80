#pragma once

#include "diffalg/algebra.hpp"
#include "diffalg/minsky.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace diffalg {

/// Two-term generator encoding one command: in quotient mode
///   x1^eps x2^sigma d1^{1-eps} d2^{1-sigma}(q_i)
/// - x1^eps x2^sigma d1^{1-eps+alpha} d2^{1-sigma+beta}(q_j).
/// The same formula read in free mode gives the pre-quotient generator.
DiffPoly compile_command(const Command& c, CoeffRing ring, Mode mode = Mode::quotient);

/// A machine compiled to its generator system: one quotient-mode generator
/// per command plus the two free-mode quotient-ideal generators.
struct EncodedSystem {
    Machine machine;
    CoeffRing ring;
    std::vector<std::pair<Command, DiffPoly>> generators; // sorted by command key
    std::vector<DiffPoly> j_generators;                   // d1(x2), d2(x1) in free mode
};

EncodedSystem compile_machine(const Machine& m, CoeffRing ring);

// x1 x2 d1^{c1} d2^{c2}(q_state): the monomial standing for a configuration.
DiffPoly config_element(const Config& c, CoeffRing ring, Mode mode = Mode::quotient);
Monomial config_monomial(const Config& c);
// General form with tower prefactors d1^a(x1) d2^b(x2); a = b = 0 gives the
// plain configuration element.
DiffPoly config_element_general(const Config& c, const Int& a, const Int& b, CoeffRing ring,
                                Mode mode = Mode::quotient);
Monomial config_monomial_general(const Config& c, const Int& a, const Int& b);

// config_element(start) - config_element(halt): the membership target for a
// start/halt configuration pair.
DiffPoly membership_target(const Config& start, const Config& halt, CoeffRing ring,
                           Mode mode = Mode::quotient);

// x1 x2 d1^{2^{2^m}}(q_1) - x1 x2 d1(q_0); resource_error when the tower
// exceeds the exponent budget.
DiffPoly test_element(unsigned m_index, CoeffRing ring, Mode mode = Mode::quotient,
                      const Int& exponent_budget = Int(kDefaultExponentBudget));

// Flat-text generator file: header comments carrying the field and state
// count, then one "# command ..." comment plus one polynomial per command.
void write_generator_file(std::ostream& out, const EncodedSystem& sys);
EncodedSystem read_generator_file(std::istream& in);

} // namespace diffalg
