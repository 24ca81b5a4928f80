#pragma once

#include "diffalg/encoder.hpp"
#include "diffalg/linalg.hpp"
#include "diffalg/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffalg {

// ---------------------------------------------------------------- certificates

struct CertificateStep {
    WOperator w;
    Command command;
    Config from;
    Config to;
};

/// Telescoping witness: target = sum over steps of w_k(g(command_k)), with
/// the configs chaining from the start to a terminal configuration.
struct Certificate {
    std::vector<CertificateStep> steps;
    DiffPoly target;

    std::string to_json_text() const;
    static Certificate from_json_text(const std::string& text, CoeffRing ring);
};

// Witness operator for one step taken from a configuration whose element has
// x-part x1 x2: x1^{1-eps} x2^{1-sigma} d1^{max(c1-1,0)} d2^{max(c2-1,0)}.
WOperator step_witness(const Command& cmd, const Config& from);

// General-x-part witness: for the element d1^a(x1) d2^b(x2) d1^{c1} d2^{c2}(q_i)
// the single operator whose highest part reproduces u - v for the step.
EnvOperator general_step_witness(const Command& cmd, const Config& from, const Int& a,
                                 const Int& b, CoeffRing ring, Mode mode = Mode::quotient);

enum class CertifyStatus { certificate, budget_exceeded, stuck, cycle_detected };

struct CertifyResult {
    CertifyStatus status;
    std::optional<Certificate> certificate;
    Trace trace;
};

// Simulates the machine; on halting emits the per-step telescoping
// certificate. Non-halting within budget leaves membership undetermined.
CertifyResult certify(const Machine& m, CoeffRing ring, const Config& start,
                      std::uint64_t max_steps);

struct VerifyOutcome {
    bool accepted = false;
    std::string reason;
    std::optional<std::size_t> failing_step;
};

// Exact symbolic re-check: every step must satisfy w_k(g_k) = u_k - u_{k+1}
// with a chained, machine-consistent configuration sequence ending in the
// terminal state, and the telescoped difference must equal the target.
VerifyOutcome verify_certificate(const EncodedSystem& sys, const Certificate& cert);

// ---------------------------------------------------------------- bounded oracle

struct OracleBounds {
    unsigned max_order = 8;   // trailing derivative exponents, each component
    unsigned max_xdeg = 4;    // tower orders inside operator monomials
    std::size_t column_cap = 200000;
    bool strict = false;      // search beyond the grading-compatible shapes
    unsigned jobs = 1;
};

struct OperatorTerm {
    Rat lambda;
    Monomial v;
    DerivOp theta;
    std::size_t gen_index;
};

enum class OracleVerdict { member, not_member_within_bounds, certified_non_member };

std::string oracle_verdict_name(OracleVerdict v);

struct OracleResult {
    OracleVerdict verdict;
    std::vector<OperatorTerm> witness; // nonzero coefficients, when member
    std::string obstruction;           // set when certified_non_member
    OracleBounds bounds;
    std::size_t columns_searched = 0;
};

struct OracleProblem {
    DiffPoly target;
    std::vector<DiffPoly> generators;
    std::vector<std::optional<Command>> commands; // per-generator provenance, optional
    OracleBounds bounds;
};

// Degree-bounded exact search: enumerates operator columns v * d1^s d2^t
// compatible with the target under every applicable grading, restricts to
// the block of rows reachable from the target monomials, and solves the
// exact linear system. "Not member" verdicts are relative to the bounds
// except when a grading obstruction certifies them globally.
OracleResult oracle_member(const OracleProblem& p);

OracleProblem problem_for(const EncodedSystem& sys, const DiffPoly& target,
                          const OracleBounds& bounds);

// Shape classification of a solved operator against a command.
bool operator_in_W(const Monomial& v, const DerivOp& theta, const Command& cmd);
bool operator_in_V(const Monomial& v, const DerivOp& theta, const Command& cmd);

// Witness files: {"field": ..., "mode": ..., "entries": [{lambda, monomial,
// theta, gen}, ...]} with polynomials in canonical text form.
std::string witness_to_json_text(const std::vector<OperatorTerm>& witness, const CoeffRing& ring,
                                 Mode mode);
std::vector<OperatorTerm> witness_from_json_text(const std::string& text, const CoeffRing& ring,
                                                 Mode mode);

// ---------------------------------------------------------------- independence

struct IndependenceElement {
    VOperator op;
    Command command;
    DiffPoly element; // highest part of op(g(command)); zero for degenerate g
};

struct IndependenceReport {
    std::size_t element_count = 0;
    std::size_t rank = 0;
    bool full_rank = false;
    std::vector<IndependenceElement> elements;
    std::vector<std::pair<std::size_t, Rat>> dependence; // element index -> coefficient
};

// Assembles highest parts of v(g) over all V-operators within the bound
// (tower orders 1..bound, trailing exponents 0..bound) and computes the
// exact rank; a rank deficiency comes with an explicit vanishing combination.
IndependenceReport independence_check(const EncodedSystem& sys, unsigned bound);

// ---------------------------------------------------------------- decision

struct DecisionBudgets {
    std::uint64_t max_steps = 10000;
    OracleBounds oracle;
};

enum class DecisionVerdict { member, certified_non_member, not_member_within_bounds, unknown };

std::string decision_verdict_name(DecisionVerdict v);

struct ComponentDecision {
    DiffPoly component;
    std::optional<Certificate> certificate;
    std::optional<OracleResult> oracle;
    std::optional<CertifyStatus> simulation_status;
    DecisionVerdict verdict;
};

struct Decision {
    DecisionVerdict verdict;
    std::vector<ComponentDecision> components;
    bool paths_agree = false; // certificate and oracle both concluded member
};

// Runs the simulation path and the bounded oracle per multi-homogeneous
// component and combines the verdicts. Never claims membership without an
// exact witness; "unknown" is an honest outcome.
Decision decide_membership(const EncodedSystem& sys, const DiffPoly& target,
                           const DecisionBudgets& budgets);

} // namespace diffalg
